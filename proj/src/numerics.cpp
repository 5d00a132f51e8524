#include "mchart/numerics.hpp"

#include <random>
#include <string>

namespace mchart {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::OutOfChartDomain: return "OutOfChartDomain";
    case ErrorKind::SingularFactor: return "SingularFactor";
    case ErrorKind::LineSearchFailed: return "LineSearchFailed";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string shape(const Matrix& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

Eigen::VectorXd singular_values(const Matrix& A) {
  if (A.size() == 0) return {};
  return Eigen::JacobiSVD<Matrix>(A).singularValues();
}

}  // namespace

RankDecision numerical_rank(const Matrix& A, double tol_rel) {
  RankDecision out;
  out.tolerance_used = tol_rel;
  const Eigen::VectorXd sv = singular_values(A);
  if (sv.size() == 0 || sv(0) == 0.0) return out;
  const double cutoff = tol_rel * sv(0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  out.numerical_rank = rank;
  out.smallest_kept_sv = rank > 0 ? sv(rank - 1) : 0.0;
  out.largest_dropped_sv = rank < sv.size() ? sv(rank) : 0.0;
  return out;
}

double sigma_ratio(const Matrix& M) {
  const Eigen::VectorXd sv = singular_values(M);
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

double spectral_norm(const Matrix& M) {
  const Eigen::VectorXd sv = singular_values(M);
  return sv.size() == 0 ? 0.0 : sv(0);
}

double alignment_ratio(const Matrix& L, const Matrix& M, const Matrix& R) {
  const double scale = spectral_norm(L) * spectral_norm(M) * spectral_norm(R);
  if (!(scale > 0.0)) return 0.0;
  const Eigen::VectorXd sv = singular_values(L * M * R.transpose());
  return sv(sv.size() - 1) / scale;
}

bool all_finite(const Matrix& M) { return M.allFinite(); }

Matrix pseudo_inverse(const Matrix& Z) {
  const Index k = Z.rows();
  const Index r = Z.cols();
  if (r < 1 || k < r) {
    throw DimensionMismatch("pseudo_inverse needs k >= r >= 1, got " + shape(Z));
  }
  if (numerical_rank(Z).numerical_rank < r) {
    throw RankDeficient("pseudo_inverse of " + shape(Z) + " matrix without full column rank");
  }
  return Z.householderQr().solve(Matrix::Identity(k, k));
}

Matrix orthogonal_complement(const Matrix& Z) {
  const Index k = Z.rows();
  const Index r = Z.cols();
  if (r < 1 || r >= k) {
    throw DimensionMismatch("orthogonal_complement needs 1 <= r < k, got " + shape(Z));
  }
  if (numerical_rank(Z).numerical_rank < r) {
    throw RankDeficient("orthogonal_complement of rank-deficient " + shape(Z) + " matrix");
  }
  const Eigen::HouseholderQR<Matrix> qr(Z);
  const Matrix Q = qr.householderQ() * Matrix::Identity(k, k);
  return Q.rightCols(k - r);
}

RankFactors factor_rank_r(const Matrix& A, Index r) {
  const Index n = A.rows();
  const Index m = A.cols();
  if (r < 1 || r > std::min(n, m)) {
    throw DimensionMismatch("factor_rank_r: rank " + std::to_string(r) + " invalid for " + shape(A));
  }
  const Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(r - 1) <= kRankTol * sv(0)) {
    throw RankDeficient("factor_rank_r: numerical rank of " + shape(A) + " is below " +
                        std::to_string(r));
  }
  RankFactors f;
  f.U = svd.matrixU().leftCols(r);
  f.G = sv.head(r).asDiagonal();
  f.V = svd.matrixV().leftCols(r);
  return f;
}

Matrix checked_inverse(const Matrix& G, const char* what) {
  if (G.rows() != G.cols() || G.rows() == 0) {
    throw DimensionMismatch(std::string(what) + " must be square, got " + shape(G));
  }
  if (!(sigma_ratio(G) > kInvertibleTol)) {
    throw SingularFactor(std::string(what) + " is not numerically invertible");
  }
  return G.partialPivLu().inverse();
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix random_gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix M(rows, cols);
  // Fill row by row so the stream order matches the text format.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = normal(rng);
  return M;
}

Matrix random_full_rank(Index k, Index r, std::uint64_t seed) {
  if (r < 1 || k < r) {
    throw DimensionMismatch("random_full_rank needs k >= r >= 1");
  }
  // Gaussian matrices are full rank with probability one; the loop only
  // guards against a pathological draw.
  for (std::uint64_t attempt = 0;; ++attempt) {
    Matrix Z = random_gaussian(k, r, attempt == 0 ? seed : derive_seed(seed, attempt));
    if (numerical_rank(Z).numerical_rank == r) return Z;
  }
}

Matrix random_rank_r(Index n, Index m, Index r, std::uint64_t seed) {
  if (r < 1 || r > std::min(n, m)) {
    throw DimensionMismatch("random_rank_r needs 1 <= r <= min(n, m)");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, attempt);
    Matrix A = random_gaussian(n, r, s) * random_gaussian(r, m, derive_seed(s, 0xA5A5));
    if (numerical_rank(A).numerical_rank == r) return A;
  }
}

ComplementedBasis::ComplementedBasis(Matrix Z) : basis_(std::move(Z)) {
  if (!all_finite(basis_)) throw DimensionMismatch("chart center has non-finite entries");
  complement_ = orthogonal_complement(basis_);
  basis_pinv_ = pseudo_inverse(basis_);
  complement_pinv_ = complement_.transpose();
}

}  // namespace mchart
