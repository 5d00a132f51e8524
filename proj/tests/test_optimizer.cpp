#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "mchart/optimizer.hpp"
#include "oracles.hpp"

using namespace mchart;

namespace {

// Rank-3 signal plus Gaussian noise, the usual low-rank test target.
Matrix noisy_low_rank(Index n, Index m, Index r, double noise, std::uint64_t seed) {
  return random_gaussian(n, r, derive_seed(seed, 0)) * random_gaussian(r, m, derive_seed(seed, 1)) +
         noise * random_gaussian(n, m, derive_seed(seed, 2));
}

FixedRankCoords perturbed(const FixedRankCoords& c, const FixedRankTangent& t, double h) {
  return {c.X + h * t.X, c.Y + h * t.Y, c.H + h * t.H};
}

}  // namespace

TEST_CASE("coordinate gradient of a constant objective vanishes") {
  const FixedRankChart chart(random_full_rank(8, 2, 1), random_full_rank(6, 2, 2));
  const Objective constant{[](const Matrix&) { return 3.0; },
                           [](const Matrix& W) -> Matrix { return Matrix::Zero(W.rows(), W.cols()); }};
  const FixedRankCoords c{random_gaussian(6, 2, 3), random_gaussian(4, 2, 4), random_full_rank(2, 2, 5)};
  CHECK(optimizer::coordinate_gradient(chart, c, constant).squared_norm() == 0.0);
}

TEST_CASE("coordinate gradient vanishes at the target and matches finite differences") {
  const FixedRankChart chart(random_full_rank(8, 2, 10), random_full_rank(6, 2, 11));
  const FixedRankCoords c{random_gaussian(6, 2, 12), random_gaussian(4, 2, 13), random_full_rank(2, 2, 14)};
  const Matrix W = fixed_rank::theta_inverse(chart, c);
  CHECK(std::sqrt(optimizer::coordinate_gradient(chart, c, least_squares_objective(W)).squared_norm()) <= 1e-12);

  // f(W) = 1/2 ||M W N - B||^2, a generic quadratic.
  const Matrix M = random_gaussian(8, 8, 15);
  const Matrix N = random_gaussian(6, 6, 16);
  const Matrix B = random_gaussian(8, 6, 17);
  const Objective f{[=](const Matrix& X) { return 0.5 * (M * X * N - B).squaredNorm(); },
                    [=](const Matrix& X) -> Matrix { return M.transpose() * (M * X * N - B) * N.transpose(); }};
  const FixedRankTangent g = optimizer::coordinate_gradient(chart, c, f);
  const FixedRankTangent dir{random_gaussian(6, 2, 18), random_gaussian(4, 2, 19), random_gaussian(2, 2, 20)};
  const double h = 1e-6;
  const double fd = (f.evaluate(fixed_rank::theta_inverse(chart, perturbed(c, dir, h))) -
                     f.evaluate(fixed_rank::theta_inverse(chart, perturbed(c, dir, -h)))) /
                    (2 * h);
  CHECK(std::abs(fd - dot(g, dir)) <= 1e-5 * std::abs(fd));
}

TEST_CASE("recenter moves the chart to the iterate") {
  const FixedRankChart chart(random_full_rank(9, 3, 30), random_full_rank(7, 3, 31));
  const FixedRankCoords c{5.0 * random_gaussian(6, 3, 32), 5.0 * random_gaussian(4, 3, 33), random_full_rank(3, 3, 34)};
  const Matrix W = fixed_rank::theta_inverse(chart, c);
  const ChartState s = optimizer::recenter(chart, c);
  CHECK(s.coords.X.norm() == 0.0);
  CHECK(s.coords.Y.norm() == 0.0);
  CHECK(oracle::rel(fixed_rank::theta_inverse(s.chart, s.coords), W) <= 1e-12);
  const ChartState again = optimizer::recenter(s.chart, s.coords);
  CHECK(oracle::rel(fixed_rank::theta_inverse(again.chart, again.coords), W) <= 1e-12);
  // Balanced factors: U^T U = V^T V = H^2 (diagonal).
  CHECK(oracle::rel(s.chart.U().transpose() * s.chart.U(), s.coords.H * s.coords.H) <= 1e-12);
  CHECK(oracle::rel(s.chart.V().transpose() * s.chart.V(), s.coords.H * s.coords.H) <= 1e-12);

  const ChartState centred = optimizer::recenter(chart, {Matrix::Zero(6, 3), Matrix::Zero(4, 3), c.H});
  CHECK(oracle::rel(fixed_rank::theta_inverse(centred.chart, centred.coords),
                    fixed_rank::theta_inverse(chart, {Matrix::Zero(6, 3), Matrix::Zero(4, 3), c.H})) <= 1e-12);
}

TEST_CASE("sketched start has rank r and the column space of A") {
  const Matrix A = noisy_low_rank(20, 15, 3, 0.0, 40);
  const RankRPoint s = optimizer::sketched_start(A, 3, 41);
  CHECK(oracle::rank(s.matrix()) == 3);
  CHECK((oracle::projector(s.U()) - oracle::projector(A * random_gaussian(15, 3, 41))).norm() <= 1e-8);
  CHECK_THROWS_AS(optimizer::sketched_start(A, 0, 1), DimensionMismatch);
  CHECK_THROWS_AS(optimizer::sketched_start(Matrix::Zero(5, 4), 2, 1), RankMismatch);
}

TEST_CASE("minimize recovers an exactly rank-r target") {
  const Matrix A = random_rank_r(20, 15, 3, 50);
  const RankFactors near = factor_rank_r(A + 1e-2 * random_gaussian(20, 15, 51), 3);
  const RankRPoint start(near.U, near.G, near.V);
  const MinimizeResult res = optimizer::minimize(start, least_squares_objective(A));
  CHECK((res.point.matrix() - A).norm() <= 1e-8);
  CHECK(res.trace.iterations() <= 500);
}

TEST_CASE("minimize reaches the truncated SVD of a full-rank target") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix A = noisy_low_rank(20, 15, 3, 0.3, 60 + seed);
    const Matrix best = oracle::truncated_svd(A, 3);
    const MinimizeResult res =
        optimizer::minimize(optimizer::sketched_start(A, 3, seed), least_squares_objective(A));
    CHECK((res.point.matrix() - best).norm() / best.norm() <= 1e-6);
    CHECK(oracle::rank(res.point.matrix()) == 3);

    const Eigen::VectorXd s = oracle::singular_values(A);
    const double eckart_young = 0.5 * s.tail(s.size() - 3).squaredNorm();
    const double final_f = res.trace.records.back().f;
    CHECK(final_f >= eckart_young * (1 - 1e-14));
    CHECK(final_f - eckart_young <= 1e-6 * eckart_young);

    // Monotone descent, and the chart never gets close to its boundary.
    for (std::size_t i = 1; i < res.trace.records.size(); ++i) {
      CHECK(res.trace.records[i].f <= res.trace.records[i - 1].f);
      CHECK(res.trace.records[i].boundary_sigma_ratio > kDomainTol);
    }
  }
}

TEST_CASE("minimize from a stationary point records only the initial check") {
  const Matrix A = random_rank_r(10, 8, 2, 70);
  const RankRPoint start = RankRPoint::from_matrix(A, 2);
  OptimizerConfig cfg;
  cfg.grad_tol = 1e-8;
  const MinimizeResult res = optimizer::minimize(start, least_squares_objective(A), cfg);
  CHECK(res.trace.iterations() == 0);
  CHECK(res.trace.records.size() == 1);
  CHECK(res.trace.converged);
  CHECK(res.trace.stop_reason == StopReason::GradientTolerance);
  CHECK(oracle::rel(res.point.matrix(), A) <= 1e-12);
}

TEST_CASE("minimize honours max_iters") {
  const Matrix A = noisy_low_rank(12, 10, 2, 1.0, 80);
  OptimizerConfig cfg;
  cfg.max_iters = 3;
  const MinimizeResult res = optimizer::minimize(optimizer::sketched_start(A, 2, 1), least_squares_objective(A), cfg);
  CHECK(res.trace.iterations() == 3);
  CHECK(res.trace.records.size() == 4);
  CHECK(res.trace.stop_reason == StopReason::MaxIterations);
  CHECK_FALSE(res.trace.converged);
}

TEST_CASE("minimize with sparse recentring still converges") {
  const Matrix A = noisy_low_rank(12, 10, 2, 0.2, 90);
  OptimizerConfig cfg;
  cfg.recenter_every = 5;
  const MinimizeResult res = optimizer::minimize(optimizer::sketched_start(A, 2, 2), least_squares_objective(A), cfg);
  const Matrix best = oracle::truncated_svd(A, 2);
  CHECK((res.point.matrix() - best).norm() / best.norm() <= 1e-6);
}

TEST_CASE("optimizer config validation") {
  OptimizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.armijo_c = 1.5;
  CHECK_THROWS_AS(cfg.validate(), DimensionMismatch);
  cfg = {};
  cfg.backtrack_factor = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DimensionMismatch);
  cfg = {};
  cfg.recenter_every = 0;
  CHECK_THROWS_AS(cfg.validate(), DimensionMismatch);
}

TEST_CASE("trace export is one JSON object per line") {
  const Matrix A = noisy_low_rank(10, 8, 2, 0.5, 100);
  OptimizerConfig cfg;
  cfg.max_iters = 5;
  const MinimizeResult res = optimizer::minimize(optimizer::sketched_start(A, 2, 3), least_squares_objective(A), cfg);
  std::stringstream ss;
  res.trace.write_jsonl(ss);
  std::string line;
  std::size_t count = 0;
  while (std::getline(ss, line)) {
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"iter", "f", "grad_norm", "step", "boundary_sigma_ratio"}) CHECK(j.contains(key));
    CHECK(j["iter"] == count);
    ++count;
  }
  CHECK(count == res.trace.records.size());
}
