#pragma once

#include "mchart/numerics.hpp"

namespace mchart {

/// An r-dimensional subspace of R^k held through an arbitrary full-rank
/// representative. Equality compares column-space projectors.
class Subspace {
 public:
  explicit Subspace(Matrix representative);

  const Matrix& representative() const noexcept { return rep_; }
  Index ambient_dim() const noexcept { return rep_.rows(); }
  Index dim() const noexcept { return rep_.cols(); }

  /// Orthogonal projector Z Z^+ onto the column space.
  Matrix projector() const;

  /// Frobenius distance between projectors; representative-independent.
  double distance(const Subspace& other) const;
  bool approx_equal(const Subspace& other, double tol = 1e-8) const;

 private:
  Matrix rep_;
};

/// Chart (U_Z, phi_Z) of the Grassmann manifold centred at col(Z). Its
/// domain is every subspace with a representative W such that Z^T W is
/// invertible; its image is all of R^{(k-r) x r}.
class GrassmannChart {
 public:
  explicit GrassmannChart(Matrix center) : frame_(std::move(center)) {}
  explicit GrassmannChart(ComplementedBasis frame) : frame_(std::move(frame)) {}

  const Matrix& center() const noexcept { return frame_.basis(); }
  const Matrix& complement() const noexcept { return frame_.complement(); }
  const Matrix& center_pinv() const noexcept { return frame_.basis_pinv(); }
  const Matrix& complement_pinv() const noexcept { return frame_.complement_pinv(); }
  const ComplementedBasis& frame() const noexcept { return frame_; }

  Index ambient_dim() const noexcept { return frame_.ambient_dim(); }
  Index dim() const noexcept { return frame_.dim(); }
  /// r (k - r), the manifold dimension.
  Index coordinate_dim() const noexcept { return frame_.dim() * frame_.codim(); }

 private:
  ComplementedBasis frame_;
};

namespace grassmann {

GrassmannChart chart_center(const Matrix& Z);

/// sigma_min(Z^+ W) / (||Z^+|| ||W||); the domain test for det(Z^T W) != 0.
/// Scale-invariant in Z and W, and 0 exactly when Z^T W is singular.
double domain_ratio(const ComplementedBasis& frame, const Matrix& W);
bool in_domain(const GrassmannChart& chart, const Matrix& W);

/// The unique point W G_W^{-1} of the affine cross section {Z + Z_perp X}
/// in the fibre of W, with G_W = Z^+ W.
Matrix cross_section_point(const GrassmannChart& chart, const Matrix& W);

/// phi_Z: coordinates X with col(Z + Z_perp X) equal to the subspace.
Matrix chart_apply(const GrassmannChart& chart, const Subspace& S);
Subspace chart_inverse(const GrassmannChart& chart, const Matrix& X);

/// phi_to o phi_from^{-1} evaluated in closed form.
Matrix transition(const GrassmannChart& from, const GrassmannChart& to, const Matrix& X);

/// exp(Z_perp X Z^+) = id + Z_perp X Z^+ (the argument is nilpotent).
Matrix lie_exp(const GrassmannChart& chart, const Matrix& X);
/// Lie algebra element Z_perp X Z^+.
Matrix lie_algebra_element(const GrassmannChart& chart, const Matrix& X);

/// gamma_Z(S) = exp(Z_perp phi_Z(S) Z^+).
Matrix gamma(const GrassmannChart& chart, const Subspace& S);

/// S1 o_Z S2 = phi_Z^{-1}(phi_Z(S1) + phi_Z(S2)); identity is col(Z).
Subspace group_op(const GrassmannChart& chart, const Subspace& S1, const Subspace& S2);
Subspace group_inverse(const GrassmannChart& chart, const Subspace& S);
Subspace identity(const GrassmannChart& chart);

}  // namespace grassmann
}  // namespace mchart
