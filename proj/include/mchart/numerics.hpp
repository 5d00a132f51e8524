#pragma once

#include <cstdint>
#include <Eigen/Dense>

#include "mchart/errors.hpp"

namespace mchart {

/// Dense real matrix, the carrier for every point, coordinate and tangent.
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Default relative tolerance for rank decisions (relative to sigma_max).
inline constexpr double kRankTol = 1e-10;
/// Chart-membership threshold on sigma_min / sigma_max.
inline constexpr double kDomainTol = 1e-10;
/// GL_r membership threshold on sigma_min / sigma_max.
inline constexpr double kInvertibleTol = 1e-12;

struct RankDecision {
  Index numerical_rank = 0;
  double smallest_kept_sv = 0.0;
  double largest_dropped_sv = 0.0;
  double tolerance_used = kRankTol;
};

/// Rank-r factors with orthonormal U, V and invertible G (A ~ U G V^T).
struct RankFactors {
  Matrix U;
  Matrix G;
  Matrix V;
};

/// Counts singular values strictly above tol_rel * sigma_max.
RankDecision numerical_rank(const Matrix& A, double tol_rel = kRankTol);

/// sigma_min / sigma_max of a square matrix; 0 for a zero matrix.
double sigma_ratio(const Matrix& M);

/// Largest singular value.
double spectral_norm(const Matrix& M);

/// sigma_min(L M R^T) / (||L|| ||M|| ||R||) in spectral norms. Unlike the
/// plain ratio of L M R^T it sees how far M is tilted away from L and R,
/// which matters when L M R^T is 1 x 1 or dominated by rounding.
double alignment_ratio(const Matrix& L, const Matrix& M, const Matrix& R);

bool all_finite(const Matrix& M);

/// Z^+ = (Z^T Z)^{-1} Z^T for full column rank Z, computed by Householder
/// least squares rather than the normal equations.
Matrix pseudo_inverse(const Matrix& Z);

/// Orthonormal basis of col(Z)^perp: trailing k-r columns of the full QR of Z.
Matrix orthogonal_complement(const Matrix& Z);

/// Truncated SVD split of A into rank-r factors.
RankFactors factor_rank_r(const Matrix& A, Index r);

/// Inverse of a square matrix that must pass the GL_r threshold.
Matrix checked_inverse(const Matrix& G, const char* what = "matrix");

Matrix random_gaussian(Index rows, Index cols, std::uint64_t seed);
Matrix random_full_rank(Index k, Index r, std::uint64_t seed);
Matrix random_rank_r(Index n, Index m, Index r, std::uint64_t seed);

/// Derives an independent per-trial seed from a root seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept;

/// A basis Z of a subspace together with the orthonormal complement and both
/// pseudo-inverses. Shared by the Grassmann, Stiefel and fixed-rank charts.
class ComplementedBasis {
 public:
  explicit ComplementedBasis(Matrix Z);

  const Matrix& basis() const noexcept { return basis_; }
  const Matrix& complement() const noexcept { return complement_; }
  const Matrix& basis_pinv() const noexcept { return basis_pinv_; }
  const Matrix& complement_pinv() const noexcept { return complement_pinv_; }

  Index ambient_dim() const noexcept { return basis_.rows(); }
  Index dim() const noexcept { return basis_.cols(); }
  Index codim() const noexcept { return basis_.rows() - basis_.cols(); }

 private:
  Matrix basis_;
  Matrix complement_;
  Matrix basis_pinv_;
  Matrix complement_pinv_;
};

}  // namespace mchart
