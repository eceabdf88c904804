#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "paf/flow.hpp"
#include "paf/labeling.hpp"
#include "paf/patch_dictionary.hpp"

namespace paf {

struct RunConfig {
  std::filesystem::path input_labels;
  std::filesystem::path dictionary;
  std::string similarity = "binary";  // overlap | binary | custom:<path>
  double lambda = 0.5;
  std::vector<double> class_weights;  // empty: all 1.0
  BoundaryMode init_boundary = BoundaryMode::kReplicate;
  double step_size = 0.02;
  std::size_t max_steps = 200000;
  double convergence_tol = 0.999;
  double stall_tol = 1e-10;
  std::size_t record_every = 10;
  std::optional<std::uint64_t> seed;  // sample labels from P(T) instead of argmax
  std::filesystem::path output_prefix;

  /// Throws std::invalid_argument on the first inconsistent field.
  void validate() const;
  FlowConfig flow_config() const;
};

/// "overlap", "binary" or "custom:<path>" (the table is read from disk).
Similarity parse_similarity(const std::string& spec, Index dictionary_size);

/// Comma-separated positive reals, e.g. "1.0,1.2".
std::vector<double> parse_class_weights(const std::string& text);

struct RunOutcome {
  FlowResult flow;
  LabelField labels;
  UncertaintyField uncertainty;
  std::vector<std::filesystem::path> artifacts;
};

/// Reads and validates every input before writing anything, integrates the
/// flow and writes the artifacts next to `output_prefix`:
///   .labels.pgm .labels.csv .uncertainty.raw.csv .uncertainty.pgm
///   .trace.csv .dictgraph.txt .manifest.txt
/// Input problems surface as ParseError or std::invalid_argument.
RunOutcome run(const RunConfig& config);

}  // namespace paf
