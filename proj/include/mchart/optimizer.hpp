#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "mchart/fixed_rank.hpp"

namespace mchart {

/// A smooth objective on R^{n x m}. Both callables must be pure.
struct Objective {
  std::function<double(const Matrix&)> evaluate;
  std::function<Matrix(const Matrix&)> euclidean_gradient;
};

/// f(W) = 1/2 ||W - target||_F^2.
Objective least_squares_objective(Matrix target);

struct OptimizerConfig {
  int max_iters = 500;
  /// Stop when the Frobenius norm of the coordinate gradient drops below this.
  double grad_tol = 1e-9;
  /// Sufficient-decrease constant. Values well above the textbook 1e-4 keep
  /// the accepted step below 1 / lambda_max, which matters here because the
  /// power-of-two step grid otherwise lands on the edge of stability.
  double armijo_c = 0.3;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 60;
  /// Rebuild the chart at the current iterate every this many iterations.
  int recenter_every = 1;

  /// Throws DimensionMismatch when a field is out of range.
  void validate() const;
};

struct IterationRecord {
  int iter = 0;
  double f = 0.0;
  double grad_norm = 0.0;
  /// Accepted step length; 0 on the final record.
  double step = 0.0;
  /// sigma_min / sigma_max of U^+ W (V^+)^T for the current chart.
  double boundary_sigma_ratio = 0.0;
};

enum class StopReason {
  GradientTolerance,
  MaxIterations,
  /// The predicted decrease fell below the resolution of f.
  Stalled,
};

const char* to_string(StopReason reason) noexcept;

struct OptimizerTrace {
  std::vector<IterationRecord> records;
  StopReason stop_reason = StopReason::MaxIterations;
  bool converged = false;

  /// Number of accepted steps.
  int iterations() const noexcept;

  /// One JSON object per line: iter, f, grad_norm, step, boundary_sigma_ratio.
  void write_jsonl(std::ostream& out) const;
};

struct MinimizeResult {
  RankRPoint point;
  OptimizerTrace trace;
};

/// Chart-local state: a chart plus coordinates of the current iterate in it.
struct ChartState {
  FixedRankChart chart;
  FixedRankCoords coords;
};

namespace optimizer {

/// Gradient of f o theta_Z^{-1} at c, in the entrywise inner product of the
/// coordinate space.
FixedRankTangent coordinate_gradient(const FixedRankChart& chart, const FixedRankCoords& c,
                                     const Objective& f);

/// Rebuilds the chart at the point represented by `coords`. The point is
/// re-factored by truncated SVD W = U_o S V_o^T and the chart is centred at the
/// balanced factors U = U_o S^{1/3}, V = V_o S^{1/3}, so the new coordinates
/// are (0, 0, S^{1/3}).
ChartState recenter(const FixedRankChart& chart, const FixedRankCoords& coords);

/// A rank-r starting point built from a Gaussian sketch of A:
/// W0 = (A Omega)(Omega^+) with Omega an m x r Gaussian matrix. The column
/// space comes from A, the row space is random. Throws RankMismatch when
/// A Omega is rank-deficient.
RankRPoint sketched_start(const Matrix& A, Index r, std::uint64_t seed);

/// Gradient descent with Armijo backtracking in theta_Z coordinates.
MinimizeResult minimize(const RankRPoint& start, const Objective& f,
                        const OptimizerConfig& cfg = {});

}  // namespace optimizer
}  // namespace mchart
