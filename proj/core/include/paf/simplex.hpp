#pragma once

#include <Eigen/Core>

namespace paf {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
// Row-major so that row i of an n x m field is the assignment vector of
// vertex i and the flat storage equals the row-stacked vectorization.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kSimplexTolerance = 1e-12;
// Entries are clamped from below to this value after every lift.
inline constexpr double kPositivityFloor = 1e-300;

/// A point of the open probability simplex: strictly positive, unit sum.
class SimplexPoint {
 public:
  /// Throws std::invalid_argument unless every entry is > 0 and the entries
  /// sum to 1 within kSimplexTolerance.
  explicit SimplexPoint(Vector values);

  const Vector& values() const { return values_; }
  Index size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

 private:
  struct Trusted {};
  SimplexPoint(Vector values, Trusted) : values_(std::move(values)) {}
  friend SimplexPoint lift(const SimplexPoint&, const Vector&, double);
  friend SimplexPoint barycenter(Index);

  Vector values_;
};

/// Element of T_0 = {v : <1, v> = 0}.
class TangentVector {
 public:
  /// The sum check is scaled by the magnitude of the entries, since tangent
  /// vectors are usually produced by cancelling sums.
  explicit TangentVector(Vector values);

  const Vector& values() const { return values_; }
  Index size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

 private:
  struct Trusted {};
  TangentVector(Vector values, Trusted) : values_(std::move(values)) {}
  friend TangentVector replicator(const SimplexPoint&, const Vector&);

  Vector values_;
};

/// n x m row-stochastic matrix, one assignment vector per vertex.
///
/// Rows are validated against the *closed* simplex (entries >= 0, unit sum)
/// so that integral one-hot fields such as unsmoothed label encodings can be
/// represented. Flows additionally require interior(), which is checked where
/// they start.
class AssignmentField {
 public:
  explicit AssignmentField(Matrix rows);

  static AssignmentField uniform(Index vertices, Index categories);

  const Matrix& matrix() const { return rows_; }
  Index vertices() const { return rows_.rows(); }
  Index categories() const { return rows_.cols(); }
  bool interior() const;
  SimplexPoint row(Index i) const { return SimplexPoint(rows_.row(i).transpose()); }

 private:
  Matrix rows_;
};

/// R_w[x] = w o x - <x, w> w.
TangentVector replicator(const SimplexPoint& w, const Vector& x);

/// Exponentiate-and-normalize step w o exp(h v) / <w, exp(h v)>.
SimplexPoint lift(const SimplexPoint& w, const Vector& v, double h);

SimplexPoint barycenter(Index categories);

/// Row-wise replicator R_W[F]. Every row of the result sums to zero.
Matrix field_replicator(const AssignmentField& field, const Matrix& payoff);

/// Row-wise lift of a whole field.
AssignmentField lift_field(const AssignmentField& field, const Matrix& direction, double h);

struct EntropyStats {
  double mean_entropy = 0.0;    // natural log
  double mean_max_entry = 0.0;
};

EntropyStats row_entropy_stats(const AssignmentField& field);

namespace detail {

// Unchecked kernels shared by the integrator. `rows` must have positive
// entries; `direction` must match its shape.
void lift_rows_in_place(Matrix& rows, const Matrix& direction, double h);
EntropyStats row_entropy_stats(const Matrix& rows);

}  // namespace detail

}  // namespace paf
