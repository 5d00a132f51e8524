#pragma once

#include <utility>

#include "mchart/grassmann.hpp"

namespace mchart {

/// Chart (V_Z, xi_Z) of the non-compact Stiefel manifold of full-rank k x r
/// matrices. Same frame data as the Grassmann chart at col(Z).
class StiefelChart {
 public:
  explicit StiefelChart(Matrix center) : frame_(std::move(center)) {}
  explicit StiefelChart(const GrassmannChart& base) : frame_(base.frame()) {}

  const Matrix& center() const noexcept { return frame_.basis(); }
  const Matrix& complement() const noexcept { return frame_.complement(); }
  const Matrix& center_pinv() const noexcept { return frame_.basis_pinv(); }
  const Matrix& complement_pinv() const noexcept { return frame_.complement_pinv(); }
  const ComplementedBasis& frame() const noexcept { return frame_; }

  Index ambient_dim() const noexcept { return frame_.ambient_dim(); }
  Index dim() const noexcept { return frame_.dim(); }
  /// k r = r (k - r) + r^2.
  Index coordinate_dim() const noexcept { return frame_.ambient_dim() * frame_.dim(); }

  /// The Grassmann chart of the base space.
  GrassmannChart base_chart() const { return GrassmannChart(frame_); }

 private:
  ComplementedBasis frame_;
};

/// Local coordinates (X, G) in R^{(k-r) x r} x GL_r.
struct StiefelCoords {
  Matrix X;
  Matrix G;
};

/// (Xdot, Gdot) in R^{(k-r) x r} x R^{r x r}.
struct StiefelTangent {
  Matrix X;
  Matrix G;
};

struct TangentSplit {
  Matrix vertical;
  Matrix horizontal;
};

namespace stiefel {

bool in_domain(const StiefelChart& chart, const Matrix& W);

StiefelCoords xi_apply(const StiefelChart& chart, const Matrix& W);
Matrix xi_inverse(const StiefelChart& chart, const StiefelCoords& c);

/// Bundle projection W -> col(W).
Subspace bundle_project(const Matrix& W);

/// Local trivialisation chi_Z(W) = (col(W), Z^+ W).
std::pair<Subspace, Matrix> fiber_chart(const StiefelChart& chart, const Matrix& W);

/// T_Z i (Xdot, Gdot) = Z_perp Xdot + Z Gdot.
Matrix tangent_push(const StiefelChart& chart, const StiefelTangent& t);
/// (T_Z i)^{-1} Zdot = (Z_perp^+ Zdot, Z^+ Zdot).
StiefelTangent tangent_pull(const StiefelChart& chart, const Matrix& Zdot);
/// vertical = Z Z^+ Zdot, horizontal = Z_perp Z_perp^+ Zdot.
TangentSplit tangent_split(const StiefelChart& chart, const Matrix& Zdot);

/// D(i o xi_Z^{-1})(X, G)[Xdot, Gdot] = Z_perp Xdot G + (Z + Z_perp X) Gdot.
Matrix differential(const StiefelChart& chart, const StiefelCoords& at, const StiefelTangent& t);

/// W *_Z W' = xi_Z^{-1}(X + X', G G'); identity Z.
Matrix group_op(const StiefelChart& chart, const Matrix& W, const Matrix& Wp);
Matrix group_inverse(const StiefelChart& chart, const Matrix& W);

/// eta_Z(xi_Z^{-1}(X, G)) = (exp(Z_perp X Z^+), G).
std::pair<Matrix, Matrix> eta(const StiefelChart& chart, const Matrix& W);

StiefelCoords transition(const StiefelChart& from, const StiefelChart& to, const StiefelCoords& c);

}  // namespace stiefel
}  // namespace mchart
