#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paf/grid_graph.hpp"
#include "paf/patch_dictionary.hpp"
#include "paf/simplex.hpp"

namespace paf {

/// H x W array of class ids, row-major, every id < class_count.
class LabelField {
 public:
  LabelField(Index height, Index width, std::vector<ClassId> labels, Index class_count);

  Index height() const { return height_; }
  Index width() const { return width_; }
  Index size() const { return height_ * width_; }
  Index class_count() const { return class_count_; }
  ClassId at(Index vertex) const { return labels_[static_cast<std::size_t>(vertex)]; }
  ClassId at(Index row, Index col) const { return at(row * width_ + col); }
  std::span<const ClassId> labels() const { return labels_; }

  friend bool operator==(const LabelField&, const LabelField&) = default;

 private:
  Index height_;
  Index width_;
  std::vector<ClassId> labels_;
  Index class_count_;
};

/// Mean patch assignment on an H x W grid.
///
/// `raw` is the literal superposition scaled by 1/|D|: n x 1 for binary
/// problems (class ids read as the values 0 and 1), n x c for the multiclass
/// form. `normalized` divides each vertex by its maximal attainable mass,
/// i.e. the number of patch centers covering it, so entries lie in [0, 1].
struct UncertaintyField {
  Index height = 0;
  Index width = 0;
  Matrix raw;
  Matrix normalized;
};

/// W^lambda_i = (1 - lambda) e_{L(i)} + lambda / c * 1.
AssignmentField smooth_labels(const LabelField& labels, double lambda);

/// How patch cells falling outside the grid enter the initial scores.
///   kClip       skip them.
///   kReplicate  read the nearest in-grid vertex instead. Templates that differ
///               only outside the grid then no longer tie exactly, which
///               would otherwise pin boundary rows at a mixed state forever.
enum class BoundaryMode { kClip, kReplicate };

const char* to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(const std::string& text);

/// P0(i, .) = softmax_d of the sum over the patch cells centered at i of
/// <W^lambda(cell), weighted one-hot of template d at that cell>.
/// An empty `class_weights` means all ones.
AssignmentField initialize(const AssignmentField& smoothed, const PatchDictionary& dictionary,
                           const GridGraph& graph, std::span<const double> class_weights = {},
                           BoundaryMode boundary = BoundaryMode::kReplicate);

/// Center class of the most probable template per vertex. Ties go to the
/// lowest template index.
LabelField extract_labeling(const AssignmentField& p, const PatchDictionary& dictionary,
                            const GridGraph& graph);

/// Center class of a template drawn from P_i per vertex, reproducible for a
/// given seed.
LabelField sample_labeling(const AssignmentField& p, const PatchDictionary& dictionary,
                           const GridGraph& graph, std::uint64_t seed);

/// Binary form; throws std::invalid_argument unless the dictionary has 2 classes.
UncertaintyField mean_patch_assignment(const AssignmentField& p, const PatchDictionary& dictionary,
                                       const GridGraph& graph);

/// Multiclass extension accumulating one-hot template values per class.
UncertaintyField mean_class_assignment(const AssignmentField& p, const PatchDictionary& dictionary,
                                       const GridGraph& graph);

}  // namespace paf
