#include "paf/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace paf {
namespace {

void check_row(const Eigen::Ref<const Vector>& row, bool strict, const char* what) {
  if (row.size() == 0) {
    throw std::invalid_argument(std::string(what) + ": empty simplex point");
  }
  for (Index k = 0; k < row.size(); ++k) {
    const double value = row[k];
    if (!std::isfinite(value) || value < 0.0 || (strict && value <= 0.0)) {
      throw std::invalid_argument(std::string(what) + ": entry " + std::to_string(k) +
                                  " is not " + (strict ? "strictly positive" : "nonnegative"));
    }
  }
  if (std::abs(row.sum() - 1.0) > kSimplexTolerance) {
    throw std::invalid_argument(std::string(what) + ": entries do not sum to 1");
  }
}

void lift_row(std::span<double> w, std::span<const double> v, double h) {
  // Shift by the maximum before exponentiating; the normalization cancels it.
  double shift = h * v[0];
  for (double x : v) shift = std::max(shift, h * x);
  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] *= std::exp(h * v[k] - shift);
    total += w[k];
  }
  bool clamped = false;
  for (double& x : w) {
    x /= total;
    if (!(x >= kPositivityFloor)) {
      if (std::isnan(x)) return;  // reported by the caller
      x = kPositivityFloor;
      clamped = true;
    }
  }
  if (clamped) {
    total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
  }
}

}  // namespace

SimplexPoint::SimplexPoint(Vector values) : values_(std::move(values)) {
  check_row(values_, /*strict=*/true, "SimplexPoint");
}

TangentVector::TangentVector(Vector values) : values_(std::move(values)) {
  const double scale = 1.0 + values_.cwiseAbs().sum();
  if (!values_.allFinite() || std::abs(values_.sum()) > kSimplexTolerance * scale) {
    throw std::invalid_argument("TangentVector: entries do not sum to 0");
  }
}

AssignmentField::AssignmentField(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.cols() == 0) {
    throw std::invalid_argument("AssignmentField: empty field");
  }
  for (Index i = 0; i < rows_.rows(); ++i) {
    check_row(rows_.row(i).transpose(), /*strict=*/false, "AssignmentField");
  }
}

AssignmentField AssignmentField::uniform(Index vertices, Index categories) {
  if (categories < 1) throw std::invalid_argument("AssignmentField: no categories");
  return AssignmentField(Matrix::Constant(vertices, categories, 1.0 / static_cast<double>(categories)));
}

bool AssignmentField::interior() const { return (rows_.array() > 0.0).all(); }

TangentVector replicator(const SimplexPoint& w, const Vector& x) {
  if (x.size() != w.size()) {
    throw std::invalid_argument("replicator: dimension mismatch");
  }
  const Vector& p = w.values();
  Vector out = p.cwiseProduct(x) - x.dot(p) * p;
  return TangentVector(std::move(out), TangentVector::Trusted{});
}

SimplexPoint lift(const SimplexPoint& w, const Vector& v, double h) {
  if (v.size() != w.size()) throw std::invalid_argument("lift: dimension mismatch");
  if (!(h >= 0.0)) throw std::invalid_argument("lift: step size must be nonnegative");
  if (h == 0.0) return w;
  Vector out = w.values();
  lift_row({out.data(), static_cast<std::size_t>(out.size())},
           {v.data(), static_cast<std::size_t>(v.size())}, h);
  if (!out.allFinite()) throw std::domain_error("lift: non-finite result");
  return SimplexPoint(std::move(out), SimplexPoint::Trusted{});
}

SimplexPoint barycenter(Index categories) {
  if (categories < 1) throw std::invalid_argument("barycenter: category count must be >= 1");
  return SimplexPoint(Vector::Constant(categories, 1.0 / static_cast<double>(categories)),
                      SimplexPoint::Trusted{});
}

Matrix field_replicator(const AssignmentField& field, const Matrix& payoff) {
  const Matrix& w = field.matrix();
  if (payoff.rows() != w.rows() || payoff.cols() != w.cols()) {
    throw std::invalid_argument("field_replicator: shape mismatch");
  }
  const Vector mean = w.cwiseProduct(payoff).rowwise().sum();
  Matrix out = w.cwiseProduct(payoff);
  out -= (w.array().colwise() * mean.array()).matrix();
  return out;
}

AssignmentField lift_field(const AssignmentField& field, const Matrix& direction, double h) {
  if (direction.rows() != field.vertices() || direction.cols() != field.categories()) {
    throw std::invalid_argument("lift_field: shape mismatch");
  }
  if (!(h >= 0.0)) throw std::invalid_argument("lift_field: step size must be nonnegative");
  if (!field.interior()) throw std::invalid_argument("lift_field: field is not interior");
  Matrix rows = field.matrix();
  if (h > 0.0) detail::lift_rows_in_place(rows, direction, h);
  return AssignmentField(std::move(rows));
}

EntropyStats row_entropy_stats(const AssignmentField& field) {
  return detail::row_entropy_stats(field.matrix());
}

namespace detail {

void lift_rows_in_place(Matrix& rows, const Matrix& direction, double h) {
  const auto m = static_cast<std::size_t>(rows.cols());
  for (Index i = 0; i < rows.rows(); ++i) {
    lift_row({rows.row(i).data(), m}, {direction.row(i).data(), m}, h);
  }
}

EntropyStats row_entropy_stats(const Matrix& rows) {
  EntropyStats stats;
  if (rows.rows() == 0) return stats;
  for (Index i = 0; i < rows.rows(); ++i) {
    double entropy = 0.0;
    double max_entry = 0.0;
    for (Index k = 0; k < rows.cols(); ++k) {
      const double p = rows(i, k);
      if (p > 0.0) entropy -= p * std::log(p);
      if (p > max_entry) max_entry = p;
    }
    stats.mean_entropy += entropy;
    stats.mean_max_entry += max_entry;
  }
  const double n = static_cast<double>(rows.rows());
  stats.mean_entropy /= n;
  stats.mean_max_entry /= n;
  return stats;
}

}  // namespace detail
}  // namespace paf
