#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "paf/grid_graph.hpp"
#include "paf/patch_dictionary.hpp"
#include "paf/simplex.hpp"

namespace paf {

/// Grid, patch adjacency and initial patch assignment P0 (n x |D|).
class FlowProblem {
 public:
  FlowProblem(GridGraph graph, PatchAdjacency adjacency, AssignmentField initial);

  const GridGraph& graph() const { return graph_; }
  const PatchAdjacency& adjacency() const { return adjacency_; }
  const AssignmentField& initial() const { return initial_; }

  /// The same problem on the reversed graph with transposed adjacency matrices.
  FlowProblem reoriented() const;

 private:
  GridGraph graph_;
  PatchAdjacency adjacency_;
  Matrix omega_h_t_;  // cached transposes
  Matrix omega_v_t_;
  AssignmentField initial_;

  friend Matrix euclidean_gradient(const FlowProblem&, const Matrix&);
  friend double objective(const FlowProblem&, const Matrix&);
};

struct FlowConfig {
  double step_size = 0.02;
  std::size_t max_steps = 200000;
  double convergence_tol = 0.999;  // on the mean of the row maxima
  double stall_tol = 1e-10;        // on the largest per-entry change of one step
  std::size_t record_every = 10;

  void validate() const;
};

struct TraceSample {
  std::size_t step = 0;
  double time = 0.0;
  double objective = 0.0;  // NaN when no scalar trace was supplied
  double mean_entropy = 0.0;
  double mean_max_entry = 0.0;
};

enum class StopReason { kConverged, kStalled, kMaxSteps };

const char* to_string(StopReason reason);

struct FlowResult {
  AssignmentField final_state;
  std::size_t steps_taken = 0;
  std::vector<TraceSample> trace;
  bool converged = false;  // true unless the step budget ran out
  StopReason stop_reason = StopReason::kMaxSteps;
  EntropyStats convergence_stats;
};

/// J(P) = <P, A^h P (Omega^h)^T + A^v P (Omega^v)^T>, for any ambient P.
double objective(const FlowProblem& problem, const Matrix& p);

/// dJ(P) = A^h P (Omega^h)^T + (A^h)^T P Omega^h + A^v P (Omega^v)^T + (A^v)^T P Omega^v.
Matrix euclidean_gradient(const FlowProblem& problem, const Matrix& p);

/// R_P[dJ(P)], tangent row-wise.
Matrix riemannian_gradient(const FlowProblem& problem, const AssignmentField& p);

/// Called with the step index and state after every accepted step
/// (and once with step 0 for the initial state).
using StepObserver = std::function<void(std::size_t step, const Matrix& state)>;
using Fitness = std::function<Matrix(const Matrix& state)>;
using ScalarTrace = std::function<double(const Matrix& state)>;

/// Geometric Euler integration of dP/dt = R_P[F(P)]:
///   P_{k+1,i} = lift(P_{k,i}, F(P_k)_i, h).
/// Throws std::domain_error naming the step if the state becomes non-finite.
FlowResult generic_assignment_flow(const Fitness& fitness, const AssignmentField& initial,
                                   const FlowConfig& config, const ScalarTrace& trace = {},
                                   const StepObserver& observer = {});

/// The patch assignment flow: generic_assignment_flow with F = dJ and the
/// objective J recorded in the trace.
FlowResult integrate(const FlowProblem& problem, const FlowConfig& config,
                     const StepObserver& observer = {});

}  // namespace paf
