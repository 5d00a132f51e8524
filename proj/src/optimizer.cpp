#include "mchart/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

#include <json.hpp>

namespace mchart {

Objective least_squares_objective(Matrix target) {
  // Shared so that copies of the objective stay cheap.
  auto A = std::make_shared<const Matrix>(std::move(target));
  return {[A](const Matrix& W) { return 0.5 * (W - *A).squaredNorm(); },
          [A](const Matrix& W) -> Matrix { return W - *A; }};
}

void OptimizerConfig::validate() const {
  if (max_iters < 0) throw DimensionMismatch("max_iters must be >= 0");
  if (!(grad_tol >= 0.0)) throw DimensionMismatch("grad_tol must be >= 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw DimensionMismatch("armijo_c must lie in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw DimensionMismatch("backtrack_factor must lie in (0, 1)");
  }
  if (!(initial_step > 0.0)) throw DimensionMismatch("initial_step must be > 0");
  if (max_backtracks < 1) throw DimensionMismatch("max_backtracks must be >= 1");
  if (recenter_every < 1) throw DimensionMismatch("recenter_every must be >= 1");
}

const char* to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::GradientTolerance: return "gradient_tolerance";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::Stalled: return "stalled";
  }
  return "unknown";
}

int OptimizerTrace::iterations() const noexcept {
  int n = 0;
  for (const auto& rec : records) n += rec.step > 0.0 ? 1 : 0;
  return n;
}

void OptimizerTrace::write_jsonl(std::ostream& out) const {
  for (const auto& rec : records) {
    nlohmann::json j = {{"iter", rec.iter},
                        {"f", rec.f},
                        {"grad_norm", rec.grad_norm},
                        {"step", rec.step},
                        {"boundary_sigma_ratio", rec.boundary_sigma_ratio}};
    out << j.dump() << '\n';
  }
}

namespace optimizer {

FixedRankTangent coordinate_gradient(const FixedRankChart& chart, const FixedRankCoords& c,
                                     const Objective& f) {
  const Matrix W = fixed_rank::theta_inverse(chart, c);
  return fixed_rank::differential_adjoint(chart, c, f.euclidean_gradient(W));
}

ChartState recenter(const FixedRankChart& chart, const FixedRankCoords& coords) {
  const Matrix W = fixed_rank::theta_inverse(chart, coords);
  const RankFactors factors = factor_rank_r(W, chart.rank());
  // Balanced factorisation W = (U D)(D^{-1} S D^{-1})(V D)^T with
  // D = S^{1/3}: column i of the X/Y blocks and entry (i, j) of the H block
  // then have curvature s_i^{4/3} and (s_i s_j)^{2/3}, so the coordinate
  // Hessian's spread is (s_max / s_min)^{4/3} whatever the scale of W.
  const Eigen::VectorXd d = factors.G.diagonal().unaryExpr([](double s) { return std::cbrt(s); });
  const Eigen::VectorXd h = factors.G.diagonal().array() / d.array().square();
  FixedRankChart next(factors.U * d.asDiagonal(), factors.V * d.asDiagonal());
  FixedRankCoords coords_next = fixed_rank::center_coords(next, h.asDiagonal());
  return {std::move(next), std::move(coords_next)};
}

namespace {

FixedRankCoords step_along(const FixedRankCoords& c, const FixedRankTangent& g, double t) {
  return {c.X - t * g.X, c.Y - t * g.Y, c.H - t * g.H};
}

}  // namespace

RankRPoint sketched_start(const Matrix& A, Index r, std::uint64_t seed) {
  if (r < 1 || r >= std::min(A.rows(), A.cols())) {
    throw DimensionMismatch("sketched_start needs 0 < r < min(n, m)");
  }
  const Matrix omega = random_gaussian(A.cols(), r, seed);
  Matrix left = A * omega;
  if (numerical_rank(left).numerical_rank != r) {
    throw RankMismatch("sketch A * Omega has rank below " + std::to_string(r));
  }
  Matrix right = pseudo_inverse(omega).transpose();
  return RankRPoint(std::move(left), Matrix::Identity(r, r), std::move(right));
}

MinimizeResult minimize(const RankRPoint& start, const Objective& f, const OptimizerConfig& cfg) {
  cfg.validate();
  const FixedRankChart start_chart = fixed_rank::make_chart(start);
  ChartState state = recenter(start_chart, fixed_rank::center_coords(start_chart, start.G()));

  OptimizerTrace trace;
  double step = cfg.initial_step;
  for (int iter = 0;; ++iter) {
    const Matrix W = fixed_rank::theta_inverse(state.chart, state.coords);
    const double fval = f.evaluate(W);
    const FixedRankTangent g =
        fixed_rank::differential_adjoint(state.chart, state.coords, f.euclidean_gradient(W));
    const double gnorm2 = g.squared_norm();
    const double gnorm = std::sqrt(gnorm2);
    IterationRecord rec{iter, fval, gnorm, 0.0, fixed_rank::boundary_ratio(state.chart, W)};
    trace.records.push_back(rec);

    if (gnorm <= cfg.grad_tol) {
      trace.stop_reason = StopReason::GradientTolerance;
      trace.converged = true;
      break;
    }
    if (iter == cfg.max_iters) {
      trace.stop_reason = StopReason::MaxIterations;
      break;
    }

    // Decreases smaller than a few ulps of f cannot be verified.
    const double resolution = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(fval);
    double t = step;
    bool accepted = false;
    bool stalled = false;
    FixedRankCoords trial;
    for (int b = 0; b < cfg.max_backtracks; ++b, t *= cfg.backtrack_factor) {
      const double required = cfg.armijo_c * t * gnorm2;
      if (required <= resolution) {
        stalled = true;
        break;
      }
      trial = step_along(state.coords, g, t);
      if (!(sigma_ratio(trial.H) > kInvertibleTol)) continue;
      const double ftrial = f.evaluate(fixed_rank::theta_inverse(state.chart, trial));
      if (ftrial <= fval - required) {
        accepted = true;
        break;
      }
    }
    if (stalled) {
      trace.stop_reason = StopReason::Stalled;
      break;
    }
    if (!accepted) {
      throw LineSearchFailed("no sufficient decrease after " + std::to_string(cfg.max_backtracks) +
                             " backtracks at iteration " + std::to_string(iter));
    }
    trace.records.back().step = t;
    state.coords = std::move(trial);
    // Let the next search start one notch above the accepted step.
    step = t / cfg.backtrack_factor;
    if ((iter + 1) % cfg.recenter_every == 0) state = recenter(state.chart, state.coords);
  }

  state = recenter(state.chart, state.coords);
  return {RankRPoint(state.chart.U(), state.coords.H, state.chart.V()), std::move(trace)};
}

}  // namespace optimizer
}  // namespace mchart
