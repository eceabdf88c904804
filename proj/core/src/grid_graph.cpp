#include "paf/grid_graph.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace paf {
namespace {

Index horizontal_count(Index height, Index width) { return height * (width - 1); }
Index vertical_count(Index height, Index width) { return (height - 1) * width; }

void check_dims(Index height, Index width) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("grid dimensions must be >= 1, got " + std::to_string(height) +
                                "x" + std::to_string(width));
  }
}

struct OrientationBuilder {
  Index height;
  Index width;

  std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> operator()(
      const CanonicalOrientation&) const {
    return {std::vector<std::uint8_t>(horizontal_count(height, width), 1),
            std::vector<std::uint8_t>(vertical_count(height, width), 1)};
  }

  std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> operator()(
      const ExplicitOrientation& spec) const {
    return {spec.horizontal_forward, spec.vertical_forward};
  }

  std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> operator()(
      const RandomOrientation& spec) const {
    std::mt19937_64 rng(spec.seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> h(horizontal_count(height, width));
    std::vector<std::uint8_t> v(vertical_count(height, width));
    for (auto& f : h) f = coin(rng) ? 1 : 0;
    for (auto& f : v) f = coin(rng) ? 1 : 0;
    return {std::move(h), std::move(v)};
  }
};

}  // namespace

GridGraph::GridGraph(Index height, Index width, std::vector<std::uint8_t> horizontal_forward,
                     std::vector<std::uint8_t> vertical_forward)
    : height_(height),
      width_(width),
      horizontal_forward_(std::move(horizontal_forward)),
      vertical_forward_(std::move(vertical_forward)) {
  check_dims(height, width);
  if (static_cast<Index>(horizontal_forward_.size()) != horizontal_count(height, width) ||
      static_cast<Index>(vertical_forward_.size()) != vertical_count(height, width)) {
    throw std::invalid_argument("orientation flags do not match the lattice edge count");
  }
}

Index GridGraph::edge_count(Direction direction) const {
  return static_cast<Index>(forward_flags(direction).size());
}

Edge GridGraph::edge(Direction direction, Index lattice_index) const {
  Index a = 0;
  Index b = 0;
  if (direction == Direction::kHorizontal) {
    const Index row = lattice_index / (width_ - 1);
    const Index col = lattice_index % (width_ - 1);
    a = vertex(row, col);
    b = vertex(row, col + 1);
  } else {
    a = lattice_index;
    b = lattice_index + width_;
  }
  return forward_flags(direction)[lattice_index] ? Edge{a, b} : Edge{b, a};
}

std::vector<Edge> GridGraph::edges(Direction direction) const {
  std::vector<Edge> out;
  out.reserve(edge_count(direction));
  for (Index e = 0; e < edge_count(direction); ++e) out.push_back(edge(direction, e));
  return out;
}

GridGraph GridGraph::reversed() const {
  auto flip = [](std::vector<std::uint8_t> flags) {
    for (auto& f : flags) f = f ? 0 : 1;
    return flags;
  };
  return GridGraph(height_, width_, flip(horizontal_forward_), flip(vertical_forward_));
}

GridGraph make_grid(Index height, Index width, const OrientationSpec& orientation) {
  check_dims(height, width);
  auto [h, v] = std::visit(OrientationBuilder{height, width}, orientation);
  return GridGraph(height, width, std::move(h), std::move(v));
}

PatchSupport patch_support(const GridGraph& graph, Index center, Index side) {
  if (side < 1 || side % 2 == 0) {
    throw std::invalid_argument("patch side must be odd and >= 1, got " + std::to_string(side));
  }
  if (center < 0 || center >= graph.vertex_count()) {
    throw std::out_of_range("patch_support: vertex out of range");
  }
  const Index radius = side / 2;
  const Index row = graph.row_of(center);
  const Index col = graph.col_of(center);
  PatchSupport support;
  support.center = center;
  for (Index dr = -radius; dr <= radius; ++dr) {
    for (Index dc = -radius; dc <= radius; ++dc) {
      if (!graph.contains(row + dr, col + dc)) continue;
      support.cells.push_back(graph.vertex(row + dr, col + dc));
      support.offsets.push_back({dr, dc});
    }
  }
  return support;
}

Matrix apply_adjacency(const GridGraph& graph, Direction direction, bool transpose, const Matrix& x) {
  if (x.rows() != graph.vertex_count()) {
    throw std::invalid_argument("apply_adjacency: expected " + std::to_string(graph.vertex_count()) +
                                " rows, got " + std::to_string(x.rows()));
  }
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  const Index count = graph.edge_count(direction);
  for (Index e = 0; e < count; ++e) {
    const Edge edge = graph.edge(direction, e);
    if (transpose) {
      out.row(edge.to) += x.row(edge.from);
    } else {
      out.row(edge.from) += x.row(edge.to);
    }
  }
  return out;
}

}  // namespace paf
