#include "mchart/fixed_rank.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "mchart/matrix_io.hpp"

namespace mchart {

RankRPoint::RankRPoint(Matrix U, Matrix G, Matrix V)
    : U_(std::move(U)), G_(std::move(G)), V_(std::move(V)) {
  const Index r = G_.rows();
  if (G_.cols() != r || U_.cols() != r || V_.cols() != r) {
    throw DimensionMismatch("factors U, G, V must have r columns and G must be r x r");
  }
  if (r < 1 || r >= U_.rows() || r >= V_.rows()) {
    throw DimensionMismatch("rank must satisfy 0 < r < min(n, m)");
  }
  if (!all_finite(U_) || !all_finite(G_) || !all_finite(V_)) {
    throw DimensionMismatch("factors have non-finite entries");
  }
  if (numerical_rank(U_).numerical_rank != r || numerical_rank(V_).numerical_rank != r) {
    throw RankDeficient("U and V must have full column rank");
  }
  if (!(sigma_ratio(G_) > kInvertibleTol)) throw SingularFactor("G is not in GL_r");
}

RankRPoint RankRPoint::from_matrix(const Matrix& A, Index r) {
  const RankDecision rank = numerical_rank(A);
  if (rank.numerical_rank != r) {
    throw RankMismatch("matrix has numerical rank " + std::to_string(rank.numerical_rank) +
                       ", expected " + std::to_string(r));
  }
  RankFactors f = factor_rank_r(A, r);
  return RankRPoint(std::move(f.U), std::move(f.G), std::move(f.V));
}

FixedRankTangent& FixedRankTangent::operator+=(const FixedRankTangent& o) {
  X += o.X;
  Y += o.Y;
  H += o.H;
  return *this;
}

double FixedRankTangent::squared_norm() const {
  return X.squaredNorm() + Y.squaredNorm() + H.squaredNorm();
}

FixedRankTangent operator*(double s, const FixedRankTangent& t) {
  return {s * t.X, s * t.Y, s * t.H};
}

double dot(const FixedRankTangent& a, const FixedRankTangent& b) {
  return a.X.cwiseProduct(b.X).sum() + a.Y.cwiseProduct(b.Y).sum() +
         a.H.cwiseProduct(b.H).sum();
}

namespace fixed_rank {

namespace {

void require_ambient(const FixedRankChart& chart, const Matrix& A) {
  if (A.rows() != chart.rows() || A.cols() != chart.cols()) {
    throw DimensionMismatch("expected a " + std::to_string(chart.rows()) + "x" +
                            std::to_string(chart.cols()) + " matrix");
  }
}

void require_coords(const FixedRankChart& chart, const Matrix& X, const Matrix& Y,
                    const Matrix& H) {
  const Index r = chart.rank();
  if (X.rows() != chart.rows() - r || X.cols() != r || Y.rows() != chart.cols() - r ||
      Y.cols() != r || H.rows() != r || H.cols() != r) {
    throw DimensionMismatch("fixed-rank coordinates have the wrong shape");
  }
}

// Solves M H = B for M, i.e. returns B H^{-1}.
Matrix right_solve(const Matrix& B, const Matrix& H) {
  return H.transpose().partialPivLu().solve(B.transpose()).transpose();
}

}  // namespace

FixedRankChart make_chart(const RankRPoint& p) { return FixedRankChart(p.U(), p.V()); }

double boundary_ratio(const FixedRankChart& chart, const Matrix& A) {
  require_ambient(chart, A);
  return alignment_ratio(chart.U_pinv(), A, chart.V_pinv());
}

FixedRankCoords theta_apply(const FixedRankChart& chart, const Matrix& A) {
  require_ambient(chart, A);
  const Index rank = numerical_rank(A).numerical_rank;
  if (rank != chart.rank()) {
    throw RankMismatch("matrix has numerical rank " + std::to_string(rank) + ", chart has rank " +
                       std::to_string(chart.rank()));
  }
  const Matrix AVp = A * chart.V_pinv().transpose();
  const Matrix H = chart.U_pinv() * AVp;
  const double ratio = boundary_ratio(chart, A);
  if (!(ratio >= kHardDomainTol)) {
    throw OutOfChartDomain("U^T A V is numerically singular (ratio " + std::to_string(ratio) + ")");
  }
  const Matrix AtUp = A.transpose() * chart.U_pinv().transpose();
  FixedRankCoords c;
  c.X = right_solve(chart.U_perp_pinv() * AVp, H);
  c.Y = right_solve(chart.V_perp_pinv() * AtUp, H.transpose());
  c.H = H;
  c.near_boundary = ratio <= kDomainTol;
  return c;
}

Matrix theta_inverse(const FixedRankChart& chart, const FixedRankCoords& c) {
  require_coords(chart, c.X, c.Y, c.H);
  if (!(sigma_ratio(c.H) > kInvertibleTol)) throw SingularFactor("H is not in GL_r");
  const Matrix left = chart.U() + chart.U_perp() * c.X;
  const Matrix right = chart.V() + chart.V_perp() * c.Y;
  return left * c.H * right.transpose();
}

FixedRankCoords center_coords(const FixedRankChart& chart, const Matrix& G) {
  const Index r = chart.rank();
  return {Matrix::Zero(chart.rows() - r, r), Matrix::Zero(chart.cols() - r, r), G};
}

std::pair<Subspace, Subspace> rho_project(const RankRPoint& p) {
  return {Subspace(p.U()), Subspace(p.V())};
}

std::tuple<Subspace, Subspace, Matrix> fiber_chart(const FixedRankChart& chart, const Matrix& A) {
  FixedRankCoords c = theta_apply(chart, A);
  return {Subspace(chart.U() + chart.U_perp() * c.X), Subspace(chart.V() + chart.V_perp() * c.Y),
          std::move(c.H)};
}

Matrix tangent_push(const FixedRankChart& chart, const Matrix& G, const FixedRankTangent& t) {
  require_coords(chart, t.X, t.Y, t.H);
  if (G.rows() != chart.rank() || G.cols() != chart.rank()) {
    throw DimensionMismatch("G_ref must be r x r");
  }
  if (!(sigma_ratio(G) > kInvertibleTol)) throw SingularFactor("G_ref is not in GL_r");
  const Matrix& U = chart.U();
  const Matrix& V = chart.V();
  return chart.U_perp() * t.X * G * V.transpose() +
         U * G * (chart.V_perp() * t.Y).transpose() + U * t.H * V.transpose();
}

FixedRankTangent tangent_pull(const FixedRankChart& chart, const Matrix& G, const Matrix& Zdot) {
  require_ambient(chart, Zdot);
  if (G.rows() != chart.rank() || G.cols() != chart.rank()) {
    throw DimensionMismatch("G_ref must be r x r");
  }
  const Matrix Ginv = checked_inverse(G, "G_ref");
  const Matrix ZVp = Zdot * chart.V_pinv().transpose();
  const Matrix ZtUp = Zdot.transpose() * chart.U_pinv().transpose();
  return {chart.U_perp_pinv() * ZVp * Ginv, chart.V_perp_pinv() * ZtUp * Ginv.transpose(),
          chart.U_pinv() * ZVp};
}

TangentSplit tangent_split(const FixedRankChart& chart, const Matrix& G, const Matrix& Zdot) {
  require_ambient(chart, Zdot);
  if (G.rows() != chart.rank() || G.cols() != chart.rank()) {
    throw DimensionMismatch("G_ref must be r x r");
  }
  Matrix vertical =
      chart.U() * (chart.U_pinv() * Zdot * chart.V_pinv().transpose()) * chart.V().transpose();
  Matrix horizontal = Zdot - vertical;
  return {std::move(vertical), std::move(horizontal)};
}

Matrix differential(const FixedRankChart& chart, const FixedRankCoords& at,
                    const FixedRankTangent& t) {
  require_coords(chart, at.X, at.Y, at.H);
  require_coords(chart, t.X, t.Y, t.H);
  const Matrix left = chart.U() + chart.U_perp() * at.X;
  const Matrix right = chart.V() + chart.V_perp() * at.Y;
  return chart.U_perp() * t.X * at.H * right.transpose() +
         left * at.H * (chart.V_perp() * t.Y).transpose() + left * t.H * right.transpose();
}

FixedRankTangent differential_adjoint(const FixedRankChart& chart, const FixedRankCoords& at,
                                      const Matrix& covector) {
  require_coords(chart, at.X, at.Y, at.H);
  require_ambient(chart, covector);
  const Matrix left = chart.U() + chart.U_perp() * at.X;
  const Matrix right = chart.V() + chart.V_perp() * at.Y;
  const Matrix CB = covector * right;
  return {chart.U_perp().transpose() * CB * at.H.transpose(),
          chart.V_perp().transpose() * covector.transpose() * left * at.H,
          left.transpose() * CB};
}

Matrix group_op(const FixedRankChart& chart, const Matrix& A, const Matrix& Ap) {
  const FixedRankCoords a = theta_apply(chart, A);
  const FixedRankCoords b = theta_apply(chart, Ap);
  return theta_inverse(chart, {a.X + b.X, a.Y + b.Y, a.H * b.H});
}

Matrix group_inverse(const FixedRankChart& chart, const Matrix& A) {
  const FixedRankCoords a = theta_apply(chart, A);
  return theta_inverse(chart, {-a.X, -a.Y, checked_inverse(a.H, "H")});
}

Matrix group_identity(const FixedRankChart& chart) {
  return theta_inverse(chart, center_coords(chart, Matrix::Identity(chart.rank(), chart.rank())));
}

std::tuple<Matrix, Matrix, Matrix> eta(const FixedRankChart& chart, const Matrix& A) {
  FixedRankCoords a = theta_apply(chart, A);
  return {grassmann::lie_exp(chart.left_chart(), a.X),
          grassmann::lie_exp(chart.right_chart(), a.Y), std::move(a.H)};
}

FixedRankCoords transition(const FixedRankChart& from, const FixedRankChart& to,
                           const FixedRankCoords& c) {
  return theta_apply(to, theta_inverse(from, c));
}

void write_point(std::ostream& out, const RankRPoint& p) {
  write_matrix_blocks(out, {p.U(), p.G(), p.V()});
}

RankRPoint read_point(std::istream& in) {
  auto blocks = read_matrix_blocks(in);
  if (blocks.size() != 3) {
    throw ParseError("rank-r point needs 3 blocks (U, G, V), got " +
                     std::to_string(blocks.size()));
  }
  return RankRPoint(std::move(blocks[0]), std::move(blocks[1]), std::move(blocks[2]));
}

}  // namespace fixed_rank
}  // namespace mchart
