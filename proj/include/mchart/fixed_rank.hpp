#pragma once

#include <filesystem>
#include <iosfwd>
#include <tuple>
#include <utility>

#include "mchart/grassmann.hpp"
#include "mchart/stiefel.hpp"

namespace mchart {

/// A rank-r matrix Z = U G V^T held through its factors.
class RankRPoint {
 public:
  RankRPoint(Matrix U, Matrix G, Matrix V);

  /// Factors a raw matrix by truncated SVD. Throws RankMismatch unless the
  /// numerical rank of A is exactly r.
  static RankRPoint from_matrix(const Matrix& A, Index r);

  const Matrix& U() const noexcept { return U_; }
  const Matrix& G() const noexcept { return G_; }
  const Matrix& V() const noexcept { return V_; }
  Index rows() const noexcept { return U_.rows(); }
  Index cols() const noexcept { return V_.rows(); }
  Index rank() const noexcept { return G_.rows(); }

  Matrix matrix() const { return U_ * G_ * V_.transpose(); }

 private:
  Matrix U_;
  Matrix G_;
  Matrix V_;
};

/// Chart (U_Z, theta_Z). Built from the column and row bases only: two
/// points U G V^T and U G' V^T share the same chart.
class FixedRankChart {
 public:
  FixedRankChart(Matrix U, Matrix V) : left_(std::move(U)), right_(std::move(V)) {}

  const ComplementedBasis& left() const noexcept { return left_; }
  const ComplementedBasis& right() const noexcept { return right_; }

  const Matrix& U() const noexcept { return left_.basis(); }
  const Matrix& U_perp() const noexcept { return left_.complement(); }
  const Matrix& U_pinv() const noexcept { return left_.basis_pinv(); }
  const Matrix& U_perp_pinv() const noexcept { return left_.complement_pinv(); }
  const Matrix& V() const noexcept { return right_.basis(); }
  const Matrix& V_perp() const noexcept { return right_.complement(); }
  const Matrix& V_pinv() const noexcept { return right_.basis_pinv(); }
  const Matrix& V_perp_pinv() const noexcept { return right_.complement_pinv(); }

  Index rows() const noexcept { return left_.ambient_dim(); }
  Index cols() const noexcept { return right_.ambient_dim(); }
  Index rank() const noexcept { return left_.dim(); }
  /// r (n + m - r).
  Index coordinate_dim() const noexcept { return rank() * (rows() + cols() - rank()); }

  GrassmannChart left_chart() const { return GrassmannChart(left_); }
  GrassmannChart right_chart() const { return GrassmannChart(right_); }

 private:
  ComplementedBasis left_;
  ComplementedBasis right_;
};

/// (X, Y, H) in R^{(n-r) x r} x R^{(m-r) x r} x GL_r.
struct FixedRankCoords {
  Matrix X;
  Matrix Y;
  Matrix H;
  /// Set by theta_apply when sigma_min / sigma_max of U^+ A (V^+)^T lies in
  /// [1e-12, 1e-10]: inside the chart, but close to its boundary.
  bool near_boundary = false;
};

/// (Xdot, Ydot, Hdot); Hdot is unconstrained.
struct FixedRankTangent {
  Matrix X;
  Matrix Y;
  Matrix H;

  FixedRankTangent& operator+=(const FixedRankTangent& o);
  double squared_norm() const;
};

FixedRankTangent operator*(double s, const FixedRankTangent& t);
double dot(const FixedRankTangent& a, const FixedRankTangent& b);

namespace fixed_rank {

/// Lower threshold on the boundary ratio below which theta_apply fails.
inline constexpr double kHardDomainTol = 1e-12;

FixedRankChart make_chart(const RankRPoint& p);

/// sigma_min(U^+ A (V^+)^T) / (||U^+|| ||A|| ||V^+||), the det(U^T A V) != 0
/// test. At a recentred chart it equals sigma_r(A) / sigma_1(A).
double boundary_ratio(const FixedRankChart& chart, const Matrix& A);

FixedRankCoords theta_apply(const FixedRankChart& chart, const Matrix& A);
Matrix theta_inverse(const FixedRankChart& chart, const FixedRankCoords& c);

/// The coordinates (0, 0, G) of a point whose factors are the chart bases.
FixedRankCoords center_coords(const FixedRankChart& chart, const Matrix& G);

/// rho_r(U G V^T) = (col U, col V).
std::pair<Subspace, Subspace> rho_project(const RankRPoint& p);

/// chi_Z(A) = (col(U + U_perp X), col(V + V_perp Y), H).
std::tuple<Subspace, Subspace, Matrix> fiber_chart(const FixedRankChart& chart, const Matrix& A);

/// T_Z i at Z = U G V^T: U_perp Xdot G V^T + U G (V_perp Ydot)^T + U Hdot V^T.
Matrix tangent_push(const FixedRankChart& chart, const Matrix& G, const FixedRankTangent& t);
/// Inverse of tangent_push on the tangent space at U G V^T. For ambient
/// directions outside the tangent space, push o pull is the projection onto it.
FixedRankTangent tangent_pull(const FixedRankChart& chart, const Matrix& G, const Matrix& Zdot);
/// vertical = U U^+ Zdot (V^+)^T V^T, horizontal = Zdot - vertical.
TangentSplit tangent_split(const FixedRankChart& chart, const Matrix& G, const Matrix& Zdot);

/// D(i o theta_Z^{-1})(X, Y, H)[Xdot, Ydot, Hdot].
Matrix differential(const FixedRankChart& chart, const FixedRankCoords& at,
                    const FixedRankTangent& t);

/// Adjoint of `differential` under the Frobenius inner products: pulls an
/// ambient covector back to chart coordinates.
FixedRankTangent differential_adjoint(const FixedRankChart& chart, const FixedRankCoords& at,
                                      const Matrix& covector);

/// W *_Z W' = theta_Z^{-1}(X + X', Y + Y', H H'); identity U V^T.
Matrix group_op(const FixedRankChart& chart, const Matrix& A, const Matrix& Ap);
Matrix group_inverse(const FixedRankChart& chart, const Matrix& A);
Matrix group_identity(const FixedRankChart& chart);

/// eta_Z(theta_Z^{-1}(X, Y, H)) = (exp(U_perp X U^+), exp(V_perp Y V^+), H).
std::tuple<Matrix, Matrix, Matrix> eta(const FixedRankChart& chart, const Matrix& A);

FixedRankCoords transition(const FixedRankChart& from, const FixedRankChart& to,
                           const FixedRankCoords& c);

/// Three blocks U, G, V separated by blank lines.
void write_point(std::ostream& out, const RankRPoint& p);
RankRPoint read_point(std::istream& in);

}  // namespace fixed_rank
}  // namespace mchart
