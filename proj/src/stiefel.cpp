#include "mchart/stiefel.hpp"

#include <string>

namespace mchart::stiefel {

namespace {

void require_point_shape(const StiefelChart& chart, const Matrix& W) {
  if (W.rows() != chart.ambient_dim() || W.cols() != chart.dim()) {
    throw DimensionMismatch("expected a " + std::to_string(chart.ambient_dim()) + "x" +
                            std::to_string(chart.dim()) + " matrix");
  }
}

void require_coords_shape(const StiefelChart& chart, const Matrix& X, const Matrix& G) {
  const Index r = chart.dim();
  if (X.rows() != chart.ambient_dim() - r || X.cols() != r || G.rows() != r || G.cols() != r) {
    throw DimensionMismatch("Stiefel coordinates have the wrong shape");
  }
}

}  // namespace

bool in_domain(const StiefelChart& chart, const Matrix& W) {
  require_point_shape(chart, W);
  return grassmann::domain_ratio(chart.frame(), W) > kDomainTol;
}

StiefelCoords xi_apply(const StiefelChart& chart, const Matrix& W) {
  if (!in_domain(chart, W)) throw OutOfChartDomain("Z^T W is numerically singular");
  const Matrix G = chart.center_pinv() * W;
  const Matrix B = chart.complement_pinv() * W;
  // X = B G^{-1}
  Matrix X = G.transpose().partialPivLu().solve(B.transpose()).transpose();
  return {std::move(X), G};
}

Matrix xi_inverse(const StiefelChart& chart, const StiefelCoords& c) {
  require_coords_shape(chart, c.X, c.G);
  if (!(sigma_ratio(c.G) > kInvertibleTol)) {
    throw SingularFactor("G is not in GL_r");
  }
  return (chart.center() + chart.complement() * c.X) * c.G;
}

Subspace bundle_project(const Matrix& W) { return Subspace(W); }

std::pair<Subspace, Matrix> fiber_chart(const StiefelChart& chart, const Matrix& W) {
  if (!in_domain(chart, W)) throw OutOfChartDomain("Z^T W is numerically singular");
  return {Subspace(W), chart.center_pinv() * W};
}

Matrix tangent_push(const StiefelChart& chart, const StiefelTangent& t) {
  require_coords_shape(chart, t.X, t.G);
  return chart.complement() * t.X + chart.center() * t.G;
}

StiefelTangent tangent_pull(const StiefelChart& chart, const Matrix& Zdot) {
  require_point_shape(chart, Zdot);
  return {chart.complement_pinv() * Zdot, chart.center_pinv() * Zdot};
}

TangentSplit tangent_split(const StiefelChart& chart, const Matrix& Zdot) {
  require_point_shape(chart, Zdot);
  return {chart.center() * (chart.center_pinv() * Zdot),
          chart.complement() * (chart.complement_pinv() * Zdot)};
}

Matrix differential(const StiefelChart& chart, const StiefelCoords& at, const StiefelTangent& t) {
  require_coords_shape(chart, at.X, at.G);
  require_coords_shape(chart, t.X, t.G);
  return chart.complement() * t.X * at.G + (chart.center() + chart.complement() * at.X) * t.G;
}

Matrix group_op(const StiefelChart& chart, const Matrix& W, const Matrix& Wp) {
  const StiefelCoords a = xi_apply(chart, W);
  const StiefelCoords b = xi_apply(chart, Wp);
  return xi_inverse(chart, {a.X + b.X, a.G * b.G});
}

Matrix group_inverse(const StiefelChart& chart, const Matrix& W) {
  const StiefelCoords a = xi_apply(chart, W);
  return xi_inverse(chart, {-a.X, checked_inverse(a.G, "G")});
}

std::pair<Matrix, Matrix> eta(const StiefelChart& chart, const Matrix& W) {
  StiefelCoords a = xi_apply(chart, W);
  return {grassmann::lie_exp(chart.base_chart(), a.X), std::move(a.G)};
}

StiefelCoords transition(const StiefelChart& from, const StiefelChart& to, const StiefelCoords& c) {
  return xi_apply(to, xi_inverse(from, c));
}

}  // namespace mchart::stiefel
