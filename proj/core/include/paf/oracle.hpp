#pragma once

// Brute-force reference routes for the production kernels. Everything here
// is written from the edge lists and dense matrices directly and shares no
// code with apply_adjacency, objective or euclidean_gradient.

#include "paf/flow.hpp"
#include "paf/grid_graph.hpp"

namespace paf::oracle {

/// Largest n * |D| for which kronecker_gradient builds its dense operator.
inline constexpr Index kDenseLimit = 4096;

/// Dense n x n adjacency of one edge direction.
Matrix dense_adjacency(const GridGraph& graph, Direction direction);

/// sum over ij in E^h of <P_i, Omega^h P_j> plus the same over E^v.
double objective_edge_sum(const FlowProblem& problem, const Matrix& p);

/// (A^h kron Omega^h + its transpose + A^v kron Omega^v + its transpose)
/// applied to the row-stacked P, reshaped to n x |D|.
/// Throws std::invalid_argument when n * |D| exceeds kDenseLimit.
Matrix kronecker_gradient(const FlowProblem& problem, const Matrix& p);

/// Central differences of `objective` in every ambient coordinate.
Matrix finite_difference_gradient(const FlowProblem& problem, const Matrix& p, double step = 1e-6);

}  // namespace paf::oracle
