#include "paf/patch_dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paf {
namespace {

struct OverlapCount {
  Index overlap = 0;
  Index agree = 0;
};

OverlapCount count_overlap(const PatchTemplate& d, const PatchTemplate& d2, Offset shift) {
  if (d.side() != d2.side()) {
    throw std::invalid_argument("similarity: templates have different sides (" +
                                std::to_string(d.side()) + " vs " + std::to_string(d2.side()) + ")");
  }
  const Index r = d.radius();
  OverlapCount count;
  // Cells are offsets from center i; the same cell is at offset - shift from j.
  for (Index dr = -r; dr <= r; ++dr) {
    for (Index dc = -r; dc <= r; ++dc) {
      const Offset other{dr - shift.rows, dc - shift.cols};
      if (std::abs(other.rows) > r || std::abs(other.cols) > r) continue;
      ++count.overlap;
      if (d.at(Offset{dr, dc}) == d2.at(other)) ++count.agree;
    }
  }
  return count;
}

}  // namespace

PatchTemplate::PatchTemplate(Index side, std::vector<ClassId> cells)
    : side_(side), cells_(std::move(cells)) {
  if (side < 1 || side % 2 == 0) {
    throw std::invalid_argument("template side must be odd and >= 1, got " + std::to_string(side));
  }
  if (static_cast<Index>(cells_.size()) != side * side) {
    throw std::invalid_argument("template needs " + std::to_string(side * side) + " cells, got " +
                                std::to_string(cells_.size()));
  }
}

PatchDictionary::PatchDictionary(std::vector<PatchTemplate> templates, Index class_count,
                                 std::vector<std::string> class_names)
    : templates_(std::move(templates)), class_count_(class_count), class_names_(std::move(class_names)) {
  if (templates_.empty()) throw std::invalid_argument("dictionary has no templates");
  if (class_count_ < 1) throw std::invalid_argument("dictionary needs at least one class");
  if (!class_names_.empty() && static_cast<Index>(class_names_.size()) != class_count_) {
    throw std::invalid_argument("class name count does not match class count");
  }
  const Index side = templates_.front().side();
  for (std::size_t d = 0; d < templates_.size(); ++d) {
    if (templates_[d].side() != side) {
      throw std::invalid_argument("template " + std::to_string(d) + " has side " +
                                  std::to_string(templates_[d].side()) + ", expected " +
                                  std::to_string(side));
    }
    for (ClassId c : templates_[d].cells()) {
      if (static_cast<Index>(c) >= class_count_) {
        throw std::invalid_argument("template " + std::to_string(d) + " uses class " +
                                    std::to_string(c) + " >= class count " +
                                    std::to_string(class_count_));
      }
    }
  }
}

void PatchAdjacency::validate() const {
  if (omega_h.rows() != omega_h.cols() || omega_v.rows() != omega_v.cols() ||
      omega_h.rows() != omega_v.rows()) {
    throw std::invalid_argument("patch adjacency matrices must be square and of equal size");
  }
  if (!omega_h.allFinite() || !omega_v.allFinite() || (omega_h.array() < 0.0).any() ||
      (omega_v.array() < 0.0).any()) {
    throw std::invalid_argument("patch adjacency entries must be finite and nonnegative");
  }
}

double overlap_similarity(const PatchTemplate& d, const PatchTemplate& d2, Offset shift) {
  const OverlapCount count = count_overlap(d, d2, shift);
  return static_cast<double>(count.agree) / static_cast<double>(d.size());
}

double binary_similarity(const PatchTemplate& d, const PatchTemplate& d2, Offset shift) {
  const OverlapCount count = count_overlap(d, d2, shift);
  return count.agree == count.overlap ? 1.0 : 0.0;
}

PatchAdjacency build_adjacency(const PatchDictionary& dictionary, const Similarity& similarity) {
  if (const auto* custom = std::get_if<CustomSimilarity>(&similarity)) {
    custom->table.validate();
    if (custom->table.size() != dictionary.size()) {
      throw std::invalid_argument("custom similarity table has size " +
                                  std::to_string(custom->table.size()) + ", dictionary has " +
                                  std::to_string(dictionary.size()) + " templates");
    }
    return custom->table;
  }
  const bool binary = std::holds_alternative<BinarySimilarity>(similarity);
  const auto weight = [binary](const PatchTemplate& a, const PatchTemplate& b, Offset shift) {
    return binary ? binary_similarity(a, b, shift) : overlap_similarity(a, b, shift);
  };
  const Index n = dictionary.size();
  PatchAdjacency adjacency{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (Index d = 0; d < n; ++d) {
    for (Index d2 = 0; d2 < n; ++d2) {
      adjacency.omega_h(d, d2) = weight(dictionary[d], dictionary[d2], Offset{0, 1});
      adjacency.omega_v(d, d2) = weight(dictionary[d], dictionary[d2], Offset{1, 0});
    }
  }
  return adjacency;
}

DictionaryGraph export_dictionary_graph(const PatchAdjacency& adjacency) {
  adjacency.validate();
  DictionaryGraph graph;
  graph.vertex_count = adjacency.size();
  for (Direction direction : {Direction::kHorizontal, Direction::kVertical}) {
    const Matrix& omega = direction == Direction::kHorizontal ? adjacency.omega_h : adjacency.omega_v;
    for (Index d = 0; d < omega.rows(); ++d) {
      for (Index d2 = 0; d2 < omega.cols(); ++d2) {
        if (omega(d, d2) > 0.0) graph.arcs.push_back({direction, d, d2, omega(d, d2)});
      }
    }
  }
  return graph;
}

std::vector<Matrix> template_assignment_rows(const PatchDictionary& dictionary,
                                             std::span<const double> class_weights) {
  if (static_cast<Index>(class_weights.size()) != dictionary.class_count()) {
    throw std::invalid_argument("expected " + std::to_string(dictionary.class_count()) +
                                " class weights, got " + std::to_string(class_weights.size()));
  }
  for (double w : class_weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("class weights must be positive and finite");
    }
  }
  std::vector<Matrix> rows;
  rows.reserve(dictionary.templates().size());
  for (const PatchTemplate& t : dictionary.templates()) {
    Matrix m = Matrix::Zero(t.size(), dictionary.class_count());
    for (Index cell = 0; cell < t.size(); ++cell) {
      const ClassId c = t.cells()[static_cast<std::size_t>(cell)];
      m(cell, static_cast<Index>(c)) = class_weights[c];
    }
    rows.push_back(std::move(m));
  }
  return rows;
}

}  // namespace paf
