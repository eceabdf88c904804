#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "paf/flow.hpp"
#include "paf/labeling.hpp"
#include "paf/patch_dictionary.hpp"

namespace paf {

/// Malformed or unreadable input. what() reads "<source>:<line>: <message>";
/// line is 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Shortest round-trip-safe rendering at 17 significant digits, independent
/// of the global locale.
std::string format_real(double value);

// Dictionary file:
//   patchdict v1 <k> <c> <|D|>
//   template <index>
//   <k lines of k space-separated class ids>
//   ...
PatchDictionary parse_dictionary(std::istream& in, const std::string& source);
PatchDictionary read_dictionary(const std::filesystem::path& path);
void write_dictionary(std::ostream& out, const PatchDictionary& dictionary);

// Custom adjacency file: `omega v1 <|D|>`, |D| rows of Omega^h, |D| rows of Omega^v.
PatchAdjacency parse_omega(std::istream& in, const std::string& source);
PatchAdjacency read_omega(const std::filesystem::path& path);
void write_omega(std::ostream& out, const PatchAdjacency& adjacency);

// Dictionary graph: `dictgraph <|D|>`, then `h <d> <d'> <weight>` and
// `v <d> <d'> <weight>` lines.
void write_dictionary_graph(std::ostream& out, const DictionaryGraph& graph);

// Label fields: plain PGM (P2 or P5, gray level = class id) or CSV of integers.
LabelField parse_label_pgm(std::istream& in, const std::string& source, Index class_count);
LabelField parse_label_csv(std::istream& in, const std::string& source, Index class_count);
/// Dispatches on the extension (.pgm or .csv).
LabelField read_label_field(const std::filesystem::path& path, Index class_count);
void write_label_pgm(std::ostream& out, const LabelField& labels);
void write_label_csv(std::ostream& out, const LabelField& labels);

/// 8-bit P5 image of the normalized field scaled to 0..255. For the
/// multiclass form the largest class share per vertex is shown.
void write_uncertainty_pgm(std::ostream& out, const UncertaintyField& field);
/// Raw values: H lines of W values for the binary form, one line of c values
/// per vertex for the multiclass form.
void write_uncertainty_csv(std::ostream& out, const UncertaintyField& field);

/// Header `step,time,objective,mean_entropy,mean_max_entry`.
void write_trace_csv(std::ostream& out, const std::vector<TraceSample>& trace);

}  // namespace paf
