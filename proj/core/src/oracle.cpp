#include "paf/oracle.hpp"

#include <stdexcept>
#include <string>

namespace paf::oracle {
namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Matrix dense_adjacency(const GridGraph& graph, Direction direction) {
  const Index n = graph.vertex_count();
  Matrix a = Matrix::Zero(n, n);
  for (const Edge& e : graph.edges(direction)) a(e.from, e.to) = 1.0;
  return a;
}

double objective_edge_sum(const FlowProblem& problem, const Matrix& p) {
  if (p.rows() != problem.graph().vertex_count() || p.cols() != problem.adjacency().size()) {
    throw std::invalid_argument("objective_edge_sum: shape mismatch");
  }
  double total = 0.0;
  for (Direction direction : {Direction::kHorizontal, Direction::kVertical}) {
    const Matrix& omega =
        direction == Direction::kHorizontal ? problem.adjacency().omega_h : problem.adjacency().omega_v;
    for (const Edge& e : problem.graph().edges(direction)) {
      for (Index d = 0; d < omega.rows(); ++d) {
        for (Index d2 = 0; d2 < omega.cols(); ++d2) total += p(e.from, d) * omega(d, d2) * p(e.to, d2);
      }
    }
  }
  return total;
}

Matrix kronecker_gradient(const FlowProblem& problem, const Matrix& p) {
  const Index n = problem.graph().vertex_count();
  const Index m = problem.adjacency().size();
  if (p.rows() != n || p.cols() != m) throw std::invalid_argument("kronecker_gradient: shape mismatch");
  if (n * m > kDenseLimit) {
    throw std::invalid_argument("kronecker_gradient: n*|D| = " + std::to_string(n * m) +
                                " exceeds the dense limit " + std::to_string(kDenseLimit));
  }
  const Matrix kh = kron(dense_adjacency(problem.graph(), Direction::kHorizontal), problem.adjacency().omega_h);
  const Matrix kv = kron(dense_adjacency(problem.graph(), Direction::kVertical), problem.adjacency().omega_v);
  const Matrix op = kh + kh.transpose() + kv + kv.transpose();
  // Row-major storage is the row-stacked vectorization.
  const Eigen::Map<const Vector> stacked(p.data(), n * m);
  const Vector g = op * stacked;
  return Eigen::Map<const Matrix>(g.data(), n, m);
}

Matrix finite_difference_gradient(const FlowProblem& problem, const Matrix& p, double step) {
  Matrix g(p.rows(), p.cols());
  Matrix probe = p;
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index d = 0; d < p.cols(); ++d) {
      const double saved = probe(i, d);
      probe(i, d) = saved + step;
      const double up = objective(problem, probe);
      probe(i, d) = saved - step;
      const double down = objective(problem, probe);
      probe(i, d) = saved;
      g(i, d) = (up - down) / (2.0 * step);
    }
  }
  return g;
}

}  // namespace paf::oracle
