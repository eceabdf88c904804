#include "paf/flow.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace paf {
namespace {

void check_state_shape(const FlowProblem& problem, const Matrix& p, const char* what) {
  if (p.rows() != problem.graph().vertex_count() || p.cols() != problem.adjacency().size()) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(problem.graph().vertex_count()) + "x" +
                                std::to_string(problem.adjacency().size()) + " state, got " +
                                std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
  }
}

}  // namespace

FlowProblem::FlowProblem(GridGraph graph, PatchAdjacency adjacency, AssignmentField initial)
    : graph_(std::move(graph)), adjacency_(std::move(adjacency)), initial_(std::move(initial)) {
  adjacency_.validate();
  if (initial_.vertices() != graph_.vertex_count()) {
    throw std::invalid_argument("initial field has " + std::to_string(initial_.vertices()) +
                                " rows, graph has " + std::to_string(graph_.vertex_count()) +
                                " vertices");
  }
  if (initial_.categories() != adjacency_.size()) {
    throw std::invalid_argument("initial field has " + std::to_string(initial_.categories()) +
                                " columns, dictionary has " + std::to_string(adjacency_.size()) +
                                " templates");
  }
  omega_h_t_ = adjacency_.omega_h.transpose();
  omega_v_t_ = adjacency_.omega_v.transpose();
}

FlowProblem FlowProblem::reoriented() const {
  return FlowProblem(graph_.reversed(), PatchAdjacency{omega_h_t_, omega_v_t_}, initial_);
}

void FlowConfig::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw std::invalid_argument("step size must be positive");
  }
  if (!(convergence_tol > 0.0 && convergence_tol <= 1.0)) {
    throw std::invalid_argument("convergence tolerance must lie in (0, 1]");
  }
  if (!(stall_tol > 0.0 && stall_tol <= 1.0)) {
    throw std::invalid_argument("stall tolerance must lie in (0, 1]");
  }
  if (record_every == 0) throw std::invalid_argument("record_every must be >= 1");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged: return "converged";
    case StopReason::kStalled: return "stalled";
    case StopReason::kMaxSteps: return "max_steps";
  }
  return "unknown";
}

double objective(const FlowProblem& problem, const Matrix& p) {
  check_state_shape(problem, p, "objective");
  const GridGraph& g = problem.graph();
  const Matrix forward = apply_adjacency(g, Direction::kHorizontal, false, p * problem.omega_h_t_) +
                         apply_adjacency(g, Direction::kVertical, false, p * problem.omega_v_t_);
  return p.cwiseProduct(forward).sum();
}

Matrix euclidean_gradient(const FlowProblem& problem, const Matrix& p) {
  check_state_shape(problem, p, "euclidean_gradient");
  const GridGraph& g = problem.graph();
  // Grouped per direction as A (P Omega^T) + A^T (P Omega). Reversing the
  // edges and transposing Omega swaps the two summands, so the result is
  // bitwise unchanged.
  const auto direction_term = [&](Direction direction, const Matrix& omega, const Matrix& omega_t) {
    const Matrix forward = apply_adjacency(g, direction, false, p * omega_t);
    const Matrix backward = apply_adjacency(g, direction, true, p * omega);
    return Matrix(forward + backward);
  };
  Matrix gradient =
      direction_term(Direction::kHorizontal, problem.adjacency_.omega_h, problem.omega_h_t_);
  gradient += direction_term(Direction::kVertical, problem.adjacency_.omega_v, problem.omega_v_t_);
  return gradient;
}

Matrix riemannian_gradient(const FlowProblem& problem, const AssignmentField& p) {
  return field_replicator(p, euclidean_gradient(problem, p.matrix()));
}

FlowResult generic_assignment_flow(const Fitness& fitness, const AssignmentField& initial,
                                   const FlowConfig& config, const ScalarTrace& trace,
                                   const StepObserver& observer) {
  config.validate();
  if (!fitness) throw std::invalid_argument("generic_assignment_flow: no fitness function");
  if (!initial.interior()) {
    throw std::invalid_argument("initial field must lie in the open simplex (strictly positive)");
  }

  Matrix state = initial.matrix();
  std::vector<TraceSample> samples;
  std::size_t step = 0;
  bool stalled = false;
  StopReason reason = StopReason::kMaxSteps;
  EntropyStats stats;

  if (observer) observer(0, state);
  for (;;) {
    stats = detail::row_entropy_stats(state);
    bool stop = true;
    if (stats.mean_max_entry >= config.convergence_tol) {
      reason = StopReason::kConverged;
    } else if (stalled) {
      reason = StopReason::kStalled;
    } else if (step >= config.max_steps) {
      reason = StopReason::kMaxSteps;
    } else {
      stop = false;
    }
    if (stop || step % config.record_every == 0) {
      const double value = trace ? trace(state) : std::numeric_limits<double>::quiet_NaN();
      samples.push_back({step, static_cast<double>(step) * config.step_size, value,
                         stats.mean_entropy, stats.mean_max_entry});
    }
    if (stop) break;

    const Matrix payoff = fitness(state);
    if (payoff.rows() != state.rows() || payoff.cols() != state.cols()) {
      throw std::invalid_argument("fitness returned a matrix of the wrong shape");
    }
    Matrix next = state;
    detail::lift_rows_in_place(next, payoff, config.step_size);
    ++step;
    if (!payoff.allFinite() || !next.allFinite()) {
      throw std::domain_error("non-finite state at step " + std::to_string(step));
    }
    const double change = (next - state).cwiseAbs().maxCoeff();
    state.swap(next);
    stalled = change < config.stall_tol;
    if (observer) observer(step, state);
  }

  FlowResult result{AssignmentField(std::move(state)), step, std::move(samples),
                    reason != StopReason::kMaxSteps, reason, stats};
  return result;
}

FlowResult integrate(const FlowProblem& problem, const FlowConfig& config, const StepObserver& observer) {
  return generic_assignment_flow(
      [&problem](const Matrix& p) { return euclidean_gradient(problem, p); }, problem.initial(),
      config, [&problem](const Matrix& p) { return objective(problem, p); }, observer);
}

}  // namespace paf
