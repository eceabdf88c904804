#include "paf/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace paf {
namespace {

void check_field(const AssignmentField& p, const PatchDictionary& dictionary, const GridGraph& graph,
                 const char* what) {
  if (p.vertices() != graph.vertex_count() || p.categories() != dictionary.size()) {
    throw std::invalid_argument(std::string(what) + ": expected a " +
                                std::to_string(graph.vertex_count()) + "x" +
                                std::to_string(dictionary.size()) + " patch assignment, got " +
                                std::to_string(p.vertices()) + "x" + std::to_string(p.categories()));
  }
}

Index template_cell(const PatchTemplate& t, Offset offset) {
  return (offset.rows + t.radius()) * t.side() + (offset.cols + t.radius());
}

// values(d, cell) for each template; pastes them at every center weighted by P.
UncertaintyField superpose(const AssignmentField& p, const PatchDictionary& dictionary,
                           const GridGraph& graph, const std::vector<Matrix>& values) {
  const Index n = graph.vertex_count();
  const Index channels = static_cast<Index>(values.size());
  Matrix sum = Matrix::Zero(n, channels);
  Vector coverage = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    const PatchSupport support = patch_support(graph, j, dictionary.side());
    for (Index channel = 0; channel < channels; ++channel) {
      // P_j^T values: weighted template value at every template cell.
      const Eigen::RowVectorXd pasted = p.matrix().row(j) * values[channel];
      for (std::size_t s = 0; s < support.cells.size(); ++s) {
        sum(support.cells[s], channel) += pasted[template_cell(dictionary[0], support.offsets[s])];
      }
    }
    for (Index cell : support.cells) coverage[cell] += 1.0;
  }
  UncertaintyField field;
  field.height = graph.height();
  field.width = graph.width();
  field.raw = sum / static_cast<double>(dictionary.size());
  field.normalized = (sum.array().colwise() / coverage.array()).matrix();
  return field;
}

}  // namespace

LabelField::LabelField(Index height, Index width, std::vector<ClassId> labels, Index class_count)
    : height_(height), width_(width), labels_(std::move(labels)), class_count_(class_count) {
  if (height < 1 || width < 1) throw std::invalid_argument("label field dimensions must be >= 1");
  if (class_count < 1) throw std::invalid_argument("label field needs at least one class");
  if (static_cast<Index>(labels_.size()) != height * width) {
    throw std::invalid_argument("label field needs " + std::to_string(height * width) +
                                " entries, got " + std::to_string(labels_.size()));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (static_cast<Index>(labels_[i]) >= class_count) {
      throw std::invalid_argument("label " + std::to_string(labels_[i]) + " at vertex " +
                                  std::to_string(i) + " is not below class count " +
                                  std::to_string(class_count));
    }
  }
}

AssignmentField smooth_labels(const LabelField& labels, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  const Index c = labels.class_count();
  Matrix rows = Matrix::Constant(labels.size(), c, lambda / static_cast<double>(c));
  for (Index i = 0; i < labels.size(); ++i) rows(i, static_cast<Index>(labels.at(i))) += 1.0 - lambda;
  return AssignmentField(std::move(rows));
}

const char* to_string(BoundaryMode mode) {
  return mode == BoundaryMode::kClip ? "clip" : "replicate";
}

BoundaryMode parse_boundary_mode(const std::string& text) {
  if (text == "clip") return BoundaryMode::kClip;
  if (text == "replicate") return BoundaryMode::kReplicate;
  throw std::invalid_argument("unknown boundary mode '" + text + "' (use clip or replicate)");
}

AssignmentField initialize(const AssignmentField& smoothed, const PatchDictionary& dictionary,
                           const GridGraph& graph, std::span<const double> class_weights,
                           BoundaryMode boundary) {
  if (smoothed.vertices() != graph.vertex_count() || smoothed.categories() != dictionary.class_count()) {
    throw std::invalid_argument("initialize: expected a " + std::to_string(graph.vertex_count()) + "x" +
                                std::to_string(dictionary.class_count()) + " label assignment, got " +
                                std::to_string(smoothed.vertices()) + "x" +
                                std::to_string(smoothed.categories()));
  }
  const std::vector<double> ones(static_cast<std::size_t>(dictionary.class_count()), 1.0);
  const std::vector<Matrix> encoded =
      template_assignment_rows(dictionary, class_weights.empty() ? std::span<const double>(ones) : class_weights);

  const Matrix& w = smoothed.matrix();
  const Index n = graph.vertex_count();
  const Index templates = dictionary.size();
  const Index side = dictionary.side();
  const Index radius = side / 2;
  Matrix p(n, templates);
  std::vector<Index> cells;
  std::vector<Index> template_cells;
  for (Index i = 0; i < n; ++i) {
    cells.clear();
    template_cells.clear();
    if (boundary == BoundaryMode::kClip) {
      const PatchSupport support = patch_support(graph, i, side);
      cells = support.cells;
      for (const Offset& o : support.offsets) template_cells.push_back(template_cell(dictionary[0], o));
    } else {
      for (Index dr = -radius; dr <= radius; ++dr) {
        for (Index dc = -radius; dc <= radius; ++dc) {
          const Index r = std::clamp(graph.row_of(i) + dr, Index{0}, graph.height() - 1);
          const Index c = std::clamp(graph.col_of(i) + dc, Index{0}, graph.width() - 1);
          cells.push_back(graph.vertex(r, c));
          template_cells.push_back((dr + radius) * side + (dc + radius));
        }
      }
    }
    for (Index d = 0; d < templates; ++d) {
      double score = 0.0;
      for (std::size_t s = 0; s < cells.size(); ++s) score += w.row(cells[s]).dot(encoded[d].row(template_cells[s]));
      p(i, d) = score;
    }
    const double top = p.row(i).maxCoeff();
    p.row(i) = (p.row(i).array() - top).exp().matrix();
    p.row(i) /= p.row(i).sum();
  }
  return AssignmentField(std::move(p));
}

LabelField extract_labeling(const AssignmentField& p, const PatchDictionary& dictionary,
                            const GridGraph& graph) {
  check_field(p, dictionary, graph, "extract_labeling");
  std::vector<ClassId> labels(static_cast<std::size_t>(p.vertices()));
  for (Index i = 0; i < p.vertices(); ++i) {
    Index best = 0;
    for (Index d = 1; d < p.categories(); ++d) {
      if (p.matrix()(i, d) > p.matrix()(i, best)) best = d;
    }
    labels[static_cast<std::size_t>(i)] = dictionary[best].center();
  }
  return LabelField(graph.height(), graph.width(), std::move(labels), dictionary.class_count());
}

LabelField sample_labeling(const AssignmentField& p, const PatchDictionary& dictionary,
                           const GridGraph& graph, std::uint64_t seed) {
  check_field(p, dictionary, graph, "sample_labeling");
  std::mt19937_64 rng(seed);
  std::vector<ClassId> labels(static_cast<std::size_t>(p.vertices()));
  for (Index i = 0; i < p.vertices(); ++i) {
    const double* row = p.matrix().row(i).data();
    std::discrete_distribution<Index> pick(row, row + p.categories());
    labels[static_cast<std::size_t>(i)] = dictionary[pick(rng)].center();
  }
  return LabelField(graph.height(), graph.width(), std::move(labels), dictionary.class_count());
}

UncertaintyField mean_patch_assignment(const AssignmentField& p, const PatchDictionary& dictionary,
                                       const GridGraph& graph) {
  if (dictionary.class_count() != 2) {
    throw std::invalid_argument("mean_patch_assignment: binary form needs 2 classes, dictionary has " +
                                std::to_string(dictionary.class_count()));
  }
  check_field(p, dictionary, graph, "mean_patch_assignment");
  Matrix values(dictionary.size(), dictionary.patch_size());
  for (Index d = 0; d < dictionary.size(); ++d) {
    for (Index cell = 0; cell < dictionary.patch_size(); ++cell) {
      values(d, cell) = static_cast<double>(dictionary[d].cells()[static_cast<std::size_t>(cell)]);
    }
  }
  return superpose(p, dictionary, graph, {values});
}

UncertaintyField mean_class_assignment(const AssignmentField& p, const PatchDictionary& dictionary,
                                       const GridGraph& graph) {
  check_field(p, dictionary, graph, "mean_class_assignment");
  std::vector<Matrix> indicators(static_cast<std::size_t>(dictionary.class_count()),
                                 Matrix::Zero(dictionary.size(), dictionary.patch_size()));
  for (Index d = 0; d < dictionary.size(); ++d) {
    for (Index cell = 0; cell < dictionary.patch_size(); ++cell) {
      indicators[dictionary[d].cells()[static_cast<std::size_t>(cell)]](d, cell) = 1.0;
    }
  }
  return superpose(p, dictionary, graph, indicators);
}

}  // namespace paf
