#include "mchart/grassmann.hpp"

#include <string>

namespace mchart {

Subspace::Subspace(Matrix representative) : rep_(std::move(representative)) {
  if (rep_.cols() < 1 || rep_.rows() < rep_.cols()) {
    throw DimensionMismatch("subspace representative must be k x r with k >= r >= 1");
  }
  if (!all_finite(rep_)) throw DimensionMismatch("subspace representative has non-finite entries");
  if (numerical_rank(rep_).numerical_rank != rep_.cols()) {
    throw RankDeficient("subspace representative is not of full column rank");
  }
}

Matrix Subspace::projector() const { return rep_ * pseudo_inverse(rep_); }

double Subspace::distance(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim() || other.dim() != dim()) {
    throw DimensionMismatch("comparing subspaces of different shapes");
  }
  return (projector() - other.projector()).norm();
}

bool Subspace::approx_equal(const Subspace& other, double tol) const {
  return distance(other) <= tol;
}

namespace grassmann {

namespace {

void require_point_shape(const GrassmannChart& chart, const Matrix& W) {
  if (W.rows() != chart.ambient_dim() || W.cols() != chart.dim()) {
    throw DimensionMismatch("expected a " + std::to_string(chart.ambient_dim()) + "x" +
                            std::to_string(chart.dim()) + " matrix");
  }
}

void require_coord_shape(const GrassmannChart& chart, const Matrix& X) {
  if (X.rows() != chart.ambient_dim() - chart.dim() || X.cols() != chart.dim()) {
    throw DimensionMismatch("expected " + std::to_string(chart.ambient_dim() - chart.dim()) +
                            "x" + std::to_string(chart.dim()) + " chart coordinates");
  }
}

}  // namespace

GrassmannChart chart_center(const Matrix& Z) { return GrassmannChart(Z); }

double domain_ratio(const ComplementedBasis& frame, const Matrix& W) {
  return alignment_ratio(frame.basis_pinv(), W, Matrix::Identity(W.cols(), W.cols()));
}

bool in_domain(const GrassmannChart& chart, const Matrix& W) {
  require_point_shape(chart, W);
  return domain_ratio(chart.frame(), W) > kDomainTol;
}

Matrix cross_section_point(const GrassmannChart& chart, const Matrix& W) {
  require_point_shape(chart, W);
  if (!in_domain(chart, W)) {
    throw OutOfChartDomain("Z^T W is numerically singular");
  }
  // G_W = (Z^T Z)^{-1} Z^T W = Z^+ W.
  const Matrix G = chart.center_pinv() * W;
  return G.transpose().partialPivLu().solve(W.transpose()).transpose();
}

Matrix chart_apply(const GrassmannChart& chart, const Subspace& S) {
  const Matrix section = cross_section_point(chart, S.representative());
  return chart.complement_pinv() * (section - chart.center());
}

Subspace chart_inverse(const GrassmannChart& chart, const Matrix& X) {
  require_coord_shape(chart, X);
  return Subspace(chart.center() + chart.complement() * X);
}

Matrix transition(const GrassmannChart& from, const GrassmannChart& to, const Matrix& X) {
  require_coord_shape(from, X);
  if (to.ambient_dim() != from.ambient_dim() || to.dim() != from.dim()) {
    throw DimensionMismatch("transition between charts of different Grassmannians");
  }
  const Matrix W = from.center() + from.complement() * X;
  if (!(domain_ratio(to.frame(), W) > kDomainTol)) {
    throw OutOfChartDomain("subspace is outside the target chart");
  }
  const Matrix G = to.center_pinv() * W;
  const Matrix WGinv = G.transpose().partialPivLu().solve(W.transpose()).transpose();
  return to.complement_pinv() * WGinv;
}

Matrix lie_algebra_element(const GrassmannChart& chart, const Matrix& X) {
  require_coord_shape(chart, X);
  return chart.complement() * X * chart.center_pinv();
}

Matrix lie_exp(const GrassmannChart& chart, const Matrix& X) {
  const Index k = chart.ambient_dim();
  return Matrix::Identity(k, k) + lie_algebra_element(chart, X);
}

Matrix gamma(const GrassmannChart& chart, const Subspace& S) {
  return lie_exp(chart, chart_apply(chart, S));
}

Subspace group_op(const GrassmannChart& chart, const Subspace& S1, const Subspace& S2) {
  return chart_inverse(chart, chart_apply(chart, S1) + chart_apply(chart, S2));
}

Subspace group_inverse(const GrassmannChart& chart, const Subspace& S) {
  return chart_inverse(chart, -chart_apply(chart, S));
}

Subspace identity(const GrassmannChart& chart) { return Subspace(chart.center()); }

}  // namespace grassmann
}  // namespace mchart
