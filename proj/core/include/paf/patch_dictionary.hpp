#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "paf/grid_graph.hpp"
#include "paf/simplex.hpp"

namespace paf {

using ClassId = std::uint32_t;

/// A k x k array of class ids, position-free. Cells are stored row-major.
class PatchTemplate {
 public:
  PatchTemplate(Index side, std::vector<ClassId> cells);

  Index side() const { return side_; }
  Index radius() const { return side_ / 2; }
  Index size() const { return side_ * side_; }
  ClassId at(Index row, Index col) const { return cells_[static_cast<std::size_t>(row * side_ + col)]; }
  /// Cell at `offset` from the template center.
  ClassId at(Offset offset) const { return at(offset.rows + radius(), offset.cols + radius()); }
  ClassId center() const { return at(radius(), radius()); }
  std::span<const ClassId> cells() const { return cells_; }

  friend bool operator==(const PatchTemplate&, const PatchTemplate&) = default;

 private:
  Index side_;
  std::vector<ClassId> cells_;
};

class PatchDictionary {
 public:
  /// Throws std::invalid_argument if empty, if sides differ, or if a cell
  /// class id is >= class_count.
  PatchDictionary(std::vector<PatchTemplate> templates, Index class_count,
                  std::vector<std::string> class_names = {});

  Index size() const { return static_cast<Index>(templates_.size()); }
  Index side() const { return templates_.front().side(); }
  Index patch_size() const { return templates_.front().size(); }
  Index class_count() const { return class_count_; }
  const PatchTemplate& operator[](Index d) const { return templates_[static_cast<std::size_t>(d)]; }
  const std::vector<PatchTemplate>& templates() const { return templates_; }
  const std::vector<std::string>& class_names() const { return class_names_; }

 private:
  std::vector<PatchTemplate> templates_;
  Index class_count_;
  std::vector<std::string> class_names_;
};

/// Weighted patch template adjacency matrices. omega_h(d, d') weights
/// template d at i followed by d' at the right neighbor j; omega_v the same
/// for the neighbor below.
struct PatchAdjacency {
  Matrix omega_h;
  Matrix omega_v;

  Index size() const { return omega_h.rows(); }
  /// Square, equal shapes, finite nonnegative entries.
  void validate() const;
};

/// Fraction of the p template cells on which d centered at i and d' centered
/// at i + shift agree. Only the overlap of the two windows is counted, the
/// normalization is always the full patch size.
double overlap_similarity(const PatchTemplate& d, const PatchTemplate& d2, Offset shift);

/// 1 if d and d' coincide on the whole overlap of the two windows, else 0.
/// An empty overlap counts as agreement.
double binary_similarity(const PatchTemplate& d, const PatchTemplate& d2, Offset shift);

struct OverlapSimilarity {};
struct BinarySimilarity {};
/// Externally supplied matrices, used verbatim.
struct CustomSimilarity {
  PatchAdjacency table;
};
using Similarity = std::variant<OverlapSimilarity, BinarySimilarity, CustomSimilarity>;

/// Horizontal weights use the shift one column to the right, vertical weights
/// the shift one row down. Templates are never clipped, so the result is the
/// same for every edge of the grid.
PatchAdjacency build_adjacency(const PatchDictionary& dictionary, const Similarity& similarity);

/// Directed graph on templates: one arc d -> d' per direction with positive weight.
struct DictionaryGraph {
  struct Arc {
    Direction direction = Direction::kHorizontal;
    Index from = 0;
    Index to = 0;
    double weight = 0.0;
  };
  Index vertex_count = 0;
  std::vector<Arc> arcs;
};

DictionaryGraph export_dictionary_graph(const PatchAdjacency& adjacency);

/// For every template a p x c matrix whose row (r * k + s) is
/// class_weights[w] * e_w with w the class of cell (r, s).
std::vector<Matrix> template_assignment_rows(const PatchDictionary& dictionary,
                                             std::span<const double> class_weights);

}  // namespace paf
