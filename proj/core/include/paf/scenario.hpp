#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "paf/labeling.hpp"
#include "paf/patch_dictionary.hpp"

namespace paf {

/// Synthetic labeling instance: a dictionary, the noise-free labels and a
/// copy with independent per-vertex label flips.
struct Scenario {
  std::string name;
  PatchDictionary dictionary;
  LabelField clean;
  LabelField noisy;
};

/// Names accepted by gen_scenario.
const std::vector<std::string>& scenario_names();

/// 16 binary 3x3 templates: background, three horizontal lines, three
/// vertical lines and the nine crossings of one horizontal and one vertical
/// line. Class 0 is background, class 1 foreground.
PatchDictionary line_dictionary();

/// Distinct fully in-grid k x k windows of `labels` in first-occurrence
/// order, followed by any constant template that did not occur.
PatchDictionary window_dictionary(const LabelField& labels, Index side);

/// Flips each vertex independently with probability `rate`: 0 <-> 1 for two
/// classes, otherwise to a uniformly drawn different class.
LabelField add_label_noise(const LabelField& labels, double rate, std::uint64_t seed);

/// Deterministic for a given seed. Throws std::invalid_argument for an
/// unknown name, empty size or a rate outside [0, 1].
///   lines5x5-like    sparse horizontal/vertical lines, line_dictionary()
///   checkerboard     4x4 blocks, window_dictionary of the clean image
///   two-class-blobs  random disks, window_dictionary of the clean image
Scenario gen_scenario(std::string_view name, Index height, Index width, double noise_rate,
                      std::uint64_t seed);

}  // namespace paf
