#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "paf/simplex.hpp"

namespace paf {

enum class Direction { kHorizontal, kVertical };

/// Oriented edge i -> j.
struct Edge {
  Index from = 0;
  Index to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Integer displacement on the lattice, rows first.
struct Offset {
  Index rows = 0;
  Index cols = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
  Offset operator-() const { return {-rows, -cols}; }
};

/// All horizontal edges left->right, all vertical edges top->down.
struct CanonicalOrientation {};

/// One flag per lattice edge; nonzero keeps the canonical direction.
/// Horizontal edges are indexed row * (width - 1) + col for the edge between
/// (row, col) and (row, col + 1); vertical edges row * width + col for the
/// edge between (row, col) and (row + 1, col).
struct ExplicitOrientation {
  std::vector<std::uint8_t> horizontal_forward;
  std::vector<std::uint8_t> vertical_forward;
};

struct RandomOrientation {
  std::uint64_t seed = 0;
};

using OrientationSpec = std::variant<CanonicalOrientation, ExplicitOrientation, RandomOrientation>;

/// H x W lattice with row-major vertex ids and a 4-neighborhood whose edges
/// are split into a horizontal and a vertical set. Immutable once built.
class GridGraph {
 public:
  GridGraph(Index height, Index width, std::vector<std::uint8_t> horizontal_forward,
            std::vector<std::uint8_t> vertical_forward);

  Index height() const { return height_; }
  Index width() const { return width_; }
  Index vertex_count() const { return height_ * width_; }
  Index vertex(Index row, Index col) const { return row * width_ + col; }
  Index row_of(Index vertex) const { return vertex / width_; }
  Index col_of(Index vertex) const { return vertex % width_; }
  bool contains(Index row, Index col) const {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }

  Index edge_count(Direction direction) const;
  Edge edge(Direction direction, Index lattice_index) const;
  std::vector<Edge> edges(Direction direction) const;

  const std::vector<std::uint8_t>& forward_flags(Direction direction) const {
    return direction == Direction::kHorizontal ? horizontal_forward_ : vertical_forward_;
  }

  /// Same lattice with every edge orientation flipped.
  GridGraph reversed() const;

 private:
  Index height_;
  Index width_;
  std::vector<std::uint8_t> horizontal_forward_;
  std::vector<std::uint8_t> vertical_forward_;
};

GridGraph make_grid(Index height, Index width, const OrientationSpec& orientation = CanonicalOrientation{});

/// The k x k window centered at a vertex, clipped to the grid.
struct PatchSupport {
  Index center = 0;
  std::vector<Index> cells;      // vertex ids, template row-major order
  std::vector<Offset> offsets;   // offset of each cell from the center
};

PatchSupport patch_support(const GridGraph& graph, Index center, Index side);

/// Computes A X (or A^T X) for the horizontal or vertical adjacency matrix by
/// gathering neighbor rows. Row i of A X is the sum of X_j over i -> j.
Matrix apply_adjacency(const GridGraph& graph, Direction direction, bool transpose, const Matrix& x);

}  // namespace paf
