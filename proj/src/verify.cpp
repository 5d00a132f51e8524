#include "mchart/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "mchart/fixed_rank.hpp"
#include "mchart/grassmann.hpp"
#include "mchart/stiefel.hpp"

namespace mchart::verify {

namespace {

const char* bound_name(Bound b) {
  switch (b) {
    case Bound::Upper: return "upper";
    case Bound::Lower: return "lower";
    case Bound::Exact: return "exact";
  }
  return "upper";
}

// Stream identifiers keep the draws of different properties independent.
enum Stream : std::uint64_t {
  kCenter = 1, kCoordX, kCoordX2, kCoordX3, kCenter2, kCenter3, kFactorG, kFactorG2, kFactorG3,
  kTangent, kTangentG, kAmbient, kCoordY, kCoordY2, kCoordY3,
};

std::uint64_t stream(std::uint64_t trial_seed, Stream s) { return derive_seed(trial_seed, s); }

// Well-conditioned r x r matrix: identity plus a scaled Gaussian.
Matrix random_gl(Index r, std::uint64_t seed) {
  return Matrix::Identity(r, r) + 0.3 * random_gaussian(r, r, seed);
}

template <typename F>
Report run(const std::string& name, const Dims& dims, std::uint64_t seed, int trials, F&& body) {
  validate_dims(dims);
  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.suite = name;
  report.seed = seed;
  report.trials = trials;
  report.dims = dims;
  body(report);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

Index rank_of_differential(Index rows, Index cols, Index coord_dim,
                           const std::function<Matrix(Index)>& column) {
  Matrix J(rows * cols, coord_dim);
  for (Index j = 0; j < coord_dim; ++j) {
    const Matrix D = column(j);
    J.col(j) = Eigen::Map<const Eigen::VectorXd>(D.data(), D.size());
  }
  return numerical_rank(J).numerical_rank;
}

// Unit coordinate direction number `idx` in the flattened (X, Y, H) order.
FixedRankTangent unit_fixed_rank(Index n, Index m, Index r, Index idx) {
  FixedRankTangent t{Matrix::Zero(n - r, r), Matrix::Zero(m - r, r), Matrix::Zero(r, r)};
  for (Matrix* block : {&t.X, &t.Y, &t.H}) {
    if (idx < block->size()) {
      block->data()[idx] = 1.0;
      return t;
    }
    idx -= block->size();
  }
  return t;
}

}  // namespace

bool Report::passed() const noexcept {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["status"] = passed() ? "pass" : "fail";
  j["seed"] = seed;
  j["trials"] = trials;
  j["dims"] = {{"n", dims.n}, {"m", dims.m}, {"k", dims.k}, {"r", dims.r}};
  j["wall_time_s"] = wall_time_s;
  j["cases"] = nlohmann::json::array();
  for (const auto& c : cases) {
    j["cases"].push_back({{"name", c.name},
                          {"status", c.pass ? "pass" : "fail"},
                          {"measured", c.measured},
                          {"tolerance", c.tolerance},
                          {"bound", bound_name(c.bound)}});
  }
  return j;
}

Case::Case(std::string name, double tolerance, Bound bound)
    : name_(std::move(name)),
      tolerance_(tolerance),
      bound_(bound),
      worst_(bound == Bound::Lower ? std::numeric_limits<double>::infinity() : 0.0) {}

void Case::observe(double value) {
  if (std::isnan(value) || std::isnan(worst_)) {
    worst_ = std::numeric_limits<double>::quiet_NaN();
  } else if (!seen_) {
    worst_ = value;
  } else {
    switch (bound_) {
      case Bound::Upper: worst_ = std::max(worst_, value); break;
      case Bound::Lower: worst_ = std::min(worst_, value); break;
      case Bound::Exact:
        if (value != tolerance_) worst_ = value;
        break;
    }
  }
  seen_ = true;
}

CaseResult Case::result() const {
  CaseResult r{name_, worst_, tolerance_, bound_, false};
  if (!seen_ || std::isnan(worst_)) return r;
  switch (bound_) {
    case Bound::Upper: r.pass = worst_ <= tolerance_; break;
    case Bound::Lower: r.pass = worst_ >= tolerance_; break;
    case Bound::Exact: r.pass = worst_ == tolerance_; break;
  }
  return r;
}

void validate_dims(const Dims& d) {
  if (d.r < 1 || d.r >= d.k || d.r >= std::min(d.n, d.m)) {
    throw DimensionMismatch("dimensions need 0 < r < k and 0 < r < min(n, m)");
  }
}

double rel_diff(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

Report grassmann_suite(const Dims& dims, std::uint64_t seed, int trials) {
  return run("grassmann", dims, seed, trials, [&](Report& report) {
    const Index k = dims.k;
    const Index r = dims.r;
    Case roundtrip("grassmann.chart_roundtrip", 1e-9);
    Case section("grassmann.cross_section_in_S_Z", 1e-9);
    Case injective("grassmann.section_injectivity", 1e-3, Bound::Lower);
    Case cocycle("grassmann.transition_cocycle", 1e-8);
    Case transition_consistency("grassmann.transition_consistency", 1e-8);
    Case nilpotent("grassmann.nilpotency", 1e-12);
    Case exp_identities("grassmann.lie_exp_identities", 1e-10);
    Case homomorphism("grassmann.gamma_homomorphism", 1e-10);
    Case group_identity("grassmann.group_identity", 1e-8);
    Case group_inverse("grassmann.group_inverse", 1e-8);
    Case concat("grassmann.concatenation_invertible", 1e-10, Bound::Lower);
    Case dimension("grassmann.dimension", 0.0, Bound::Exact);

    for (int t = 0; t < trials; ++t) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
      const Matrix Z = random_full_rank(k, r, stream(s, kCenter));
      const GrassmannChart chart(Z);
      const Matrix X = 0.5 * random_gaussian(k - r, r, stream(s, kCoordX));
      const Matrix X2 = 0.5 * random_gaussian(k - r, r, stream(s, kCoordX2));

      const Subspace S = grassmann::chart_inverse(chart, X);
      roundtrip.observe(rel_diff(grassmann::chart_apply(chart, S), X));

      const Matrix W = S.representative() * random_gl(r, stream(s, kFactorG));
      const Matrix section_pt = grassmann::cross_section_point(chart, W);
      section.observe(std::max(rel_diff(Z.transpose() * section_pt, Z.transpose() * Z),
                               Subspace(section_pt).distance(S)));

      const Matrix dX = 1e-6 * random_gaussian(k - r, r, stream(s, kCoordX3));
      injective.observe(S.distance(grassmann::chart_inverse(chart, X + dX)) / dX.norm());

      // Charts near a common centre overlap on a neighbourhood of it.
      const GrassmannChart chart2(Z + 0.3 * random_gaussian(k, r, stream(s, kCenter2)));
      const GrassmannChart chart3(Z + 0.3 * random_gaussian(k, r, stream(s, kCenter3)));
      const Matrix X12 = grassmann::transition(chart, chart2, X);
      const Matrix X13 = grassmann::transition(chart, chart3, X);
      cocycle.observe(rel_diff(grassmann::transition(chart2, chart3, X12), X13));
      transition_consistency.observe(
          rel_diff(X12, grassmann::chart_apply(chart2, grassmann::chart_inverse(chart, X))));

      const Matrix N1 = grassmann::lie_algebra_element(chart, X);
      const Matrix N2 = grassmann::lie_algebra_element(chart, X2);
      nilpotent.observe(std::max((N1 * N1).norm(), (N1 * N2).norm()));

      const Matrix E = grassmann::lie_exp(chart, X);
      exp_identities.observe(std::max({rel_diff(E * Z, Z + chart.complement() * X),
                                       rel_diff(E * chart.complement(), chart.complement()),
                                       ((E - Matrix::Identity(k, k)) * (E - Matrix::Identity(k, k))).norm()}));

      const Subspace S2 = grassmann::chart_inverse(chart, X2);
      const Subspace prod = grassmann::group_op(chart, S, S2);
      homomorphism.observe(
          rel_diff(grassmann::gamma(chart, prod), grassmann::gamma(chart, S) * grassmann::gamma(chart, S2)));
      group_identity.observe(grassmann::group_op(chart, S, grassmann::identity(chart)).distance(S));
      group_inverse.observe(grassmann::group_op(chart, S, grassmann::group_inverse(chart, S))
                                .distance(grassmann::identity(chart)));

      Matrix concat_m(k, k);
      concat_m << E * Z, chart.complement();
      concat.observe(sigma_ratio(concat_m));

      dimension.observe(static_cast<double>(chart.coordinate_dim() - X.size()));
    }
    for (const Case* c : {&roundtrip, &section, &injective, &cocycle, &transition_consistency,
                          &nilpotent, &exp_identities, &homomorphism, &group_identity,
                          &group_inverse, &concat, &dimension}) {
      report.cases.push_back(c->result());
    }
  });
}

Report stiefel_suite(const Dims& dims, std::uint64_t seed, int trials) {
  return run("stiefel", dims, seed, trials, [&](Report& report) {
    const Index k = dims.k;
    const Index r = dims.r;
    Case xi_roundtrip_point("stiefel.xi_roundtrip_point", 1e-9);
    Case xi_roundtrip_coords("stiefel.xi_roundtrip_coords", 1e-9);
    Case section_in_domain("stiefel.section_in_domain", kDomainTol, Bound::Lower);
    Case push_pull("stiefel.tangent_push_pull_identity", 1e-10);
    Case pull_push("stiefel.tangent_pull_push_identity", 1e-10);
    Case fd("stiefel.tangent_push_finite_difference", 1e-5);
    Case split("stiefel.tangent_split", 1e-10);
    Case group_axioms("stiefel.group_axioms", 1e-9);
    Case eta_hom("stiefel.eta_homomorphism", 1e-10);
    Case transition("stiefel.transition_reconstruction", 1e-9);
    Case cross_module("stiefel.cross_module_phi_col_xi_inverse", 1e-9);
    Case fiber("stiefel.fiber_chart", 1e-9);
    Case dimension("stiefel.coordinate_dimension", static_cast<double>(k * r), Bound::Exact);
    Case differential_rank("stiefel.differential_rank", static_cast<double>(k * r), Bound::Exact);

    for (int t = 0; t < trials; ++t) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
      const Matrix Z = random_full_rank(k, r, stream(s, kCenter));
      const StiefelChart chart(Z);
      const StiefelCoords c{0.5 * random_gaussian(k - r, r, stream(s, kCoordX)),
                            random_gl(r, stream(s, kFactorG))};
      const StiefelCoords c2{0.5 * random_gaussian(k - r, r, stream(s, kCoordX2)),
                             random_gl(r, stream(s, kFactorG2))};
      const StiefelCoords c3{0.5 * random_gaussian(k - r, r, stream(s, kCoordX3)),
                             random_gl(r, stream(s, kFactorG3))};

      const Matrix W = stiefel::xi_inverse(chart, c);
      const StiefelCoords back = stiefel::xi_apply(chart, W);
      xi_roundtrip_coords.observe(std::max(rel_diff(back.X, c.X), rel_diff(back.G, c.G)));
      xi_roundtrip_point.observe(rel_diff(stiefel::xi_inverse(chart, back), W));
      section_in_domain.observe(
          grassmann::domain_ratio(chart.frame(), Z + chart.complement() * c.X));

      const Matrix Zdot = random_gaussian(k, r, stream(s, kAmbient));
      push_pull.observe(rel_diff(stiefel::tangent_push(chart, stiefel::tangent_pull(chart, Zdot)), Zdot));
      const StiefelTangent tv{random_gaussian(k - r, r, stream(s, kTangent)),
                              random_gaussian(r, r, stream(s, kTangentG))};
      const StiefelTangent tv_back = stiefel::tangent_pull(chart, stiefel::tangent_push(chart, tv));
      pull_push.observe(std::max(rel_diff(tv_back.X, tv.X), rel_diff(tv_back.G, tv.G)));

      const double h = 1e-6;
      const Matrix Ir = Matrix::Identity(r, r);
      const Matrix plus = stiefel::xi_inverse(chart, {h * tv.X, Ir + h * tv.G});
      const Matrix minus = stiefel::xi_inverse(chart, {-h * tv.X, Ir - h * tv.G});
      const Matrix pushed = stiefel::tangent_push(chart, tv);
      fd.observe(((plus - minus) / (2 * h) - pushed).norm() / pushed.norm());

      const TangentSplit parts = stiefel::tangent_split(chart, Zdot);
      split.observe(std::max({rel_diff(parts.vertical + parts.horizontal, Zdot),
                              (chart.center_pinv() * parts.horizontal).norm(),
                              (chart.complement_pinv() * parts.vertical).norm()}));

      const Matrix W2 = stiefel::xi_inverse(chart, c2);
      const Matrix W3 = stiefel::xi_inverse(chart, c3);
      const Matrix assoc_l = stiefel::group_op(chart, stiefel::group_op(chart, W, W2), W3);
      const Matrix assoc_r = stiefel::group_op(chart, W, stiefel::group_op(chart, W2, W3));
      group_axioms.observe(std::max({rel_diff(assoc_l, assoc_r),
                                     rel_diff(stiefel::group_op(chart, W, Z), W),
                                     rel_diff(stiefel::group_op(chart, Z, W), W),
                                     rel_diff(stiefel::group_op(chart, W, stiefel::group_inverse(chart, W)), Z),
                                     rel_diff(stiefel::group_op(chart, stiefel::group_inverse(chart, W), W), Z)}));

      const auto [E1, G1] = stiefel::eta(chart, W);
      const auto [E2, G2] = stiefel::eta(chart, W2);
      const auto [E12, G12] = stiefel::eta(chart, stiefel::group_op(chart, W, W2));
      eta_hom.observe(std::max(rel_diff(E12, E1 * E2), rel_diff(G12, G1 * G2)));

      const StiefelChart chart2(Z + 0.3 * random_gaussian(k, r, stream(s, kCenter2)));
      const StiefelCoords moved = stiefel::transition(chart, chart2, c);
      transition.observe(rel_diff(stiefel::xi_inverse(chart2, moved), W));

      cross_module.observe(rel_diff(
          grassmann::chart_apply(chart.base_chart(), stiefel::bundle_project(W)), c.X));
      const auto [base, G] = stiefel::fiber_chart(chart, W);
      fiber.observe(std::max(rel_diff(G, c.G), base.distance(stiefel::bundle_project(W))));

      dimension.observe(static_cast<double>(chart.coordinate_dim()));
      dimension.observe(static_cast<double>(c.X.size() + c.G.size()));
      const Index kr = k * r;
      differential_rank.observe(static_cast<double>(rank_of_differential(k, r, kr, [&](Index j) {
        StiefelTangent e{Matrix::Zero(k - r, r), Matrix::Zero(r, r)};
        if (j < e.X.size()) e.X.data()[j] = 1.0; else e.G.data()[j - e.X.size()] = 1.0;
        return stiefel::differential(chart, c, e);
      })));
    }
    for (const Case* cs : {&xi_roundtrip_point, &xi_roundtrip_coords, &section_in_domain,
                           &push_pull, &pull_push, &fd, &split, &group_axioms, &eta_hom,
                           &transition, &cross_module, &fiber, &dimension, &differential_rank}) {
      report.cases.push_back(cs->result());
    }
  });
}

Report fixed_rank_suite(const Dims& dims, std::uint64_t seed, int trials) {
  return run("fixedrank", dims, seed, trials, [&](Report& report) {
    const Index n = dims.n;
    const Index m = dims.m;
    const Index r = dims.r;
    const auto coord_dim = static_cast<double>(r * (n + m - r));
    Case theta_roundtrip_point("fixedrank.theta_roundtrip_point", 1e-9);
    Case theta_roundtrip_coords("fixedrank.theta_roundtrip_coords", 1e-9);
    Case center("fixedrank.theta_inverse_center", 1e-12);
    Case chart_independence("fixedrank.chart_independence_bitwise", 0.0, Bound::Exact);
    Case pull_push("fixedrank.tangent_pull_push_identity", 1e-9);
    Case push_pull_tangent("fixedrank.tangent_push_pull_on_tangent_space", 1e-9);
    Case fd("fixedrank.tangent_push_finite_difference", 1e-5);
    Case split("fixedrank.tangent_split", 1e-10);
    Case differential_rank("fixedrank.differential_rank", coord_dim, Bound::Exact);
    Case dimension("fixedrank.coordinate_dimension", coord_dim, Bound::Exact);
    Case identity("fixedrank.group_identity_UVt", 1e-10);
    Case group_axioms("fixedrank.group_axioms", 1e-9);
    Case eta_hom("fixedrank.eta_homomorphism", 1e-10);
    Case output_rank("fixedrank.theta_inverse_rank", static_cast<double>(r), Bound::Exact);
    Case fiber("fixedrank.fiber_chart_local_identity", 1e-9);
    Case rho("fixedrank.rho_invariance", 1e-8);
    Case transition("fixedrank.transition_reconstruction", 1e-9);

    for (int t = 0; t < trials; ++t) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
      const Matrix U = random_full_rank(n, r, stream(s, kCenter));
      const Matrix V = random_full_rank(m, r, stream(s, kCenter2));
      const Matrix G = random_gl(r, stream(s, kFactorG));
      const RankRPoint p(U, G, V);
      const FixedRankChart chart = fixed_rank::make_chart(p);
      const auto rand_coords = [&](Stream sx, Stream sy, Stream sh) {
        return FixedRankCoords{0.5 * random_gaussian(n - r, r, stream(s, sx)),
                               0.5 * random_gaussian(m - r, r, stream(s, sy)),
                               random_gl(r, stream(s, sh))};
      };
      const FixedRankCoords c = rand_coords(kCoordX, kCoordY, kFactorG2);
      const FixedRankCoords c2 = rand_coords(kCoordX2, kCoordY2, kFactorG3);
      const FixedRankCoords c3 = rand_coords(kCoordX3, kCoordY3, kTangentG);

      const Matrix A = fixed_rank::theta_inverse(chart, c);
      const FixedRankCoords back = fixed_rank::theta_apply(chart, A);
      theta_roundtrip_coords.observe(
          std::max({rel_diff(back.X, c.X), rel_diff(back.Y, c.Y), rel_diff(back.H, c.H)}));
      theta_roundtrip_point.observe(rel_diff(fixed_rank::theta_inverse(chart, back), A));
      center.observe(rel_diff(fixed_rank::theta_inverse(chart, fixed_rank::center_coords(chart, G)),
                              p.matrix()));
      output_rank.observe(static_cast<double>(numerical_rank(A).numerical_rank));

      const RankRPoint p_other(U, random_gl(r, stream(s, kTangent)), V);
      const FixedRankCoords other = fixed_rank::theta_apply(fixed_rank::make_chart(p_other), A);
      const bool identical = other.X == back.X && other.Y == back.Y && other.H == back.H;
      chart_independence.observe(identical ? 0.0 : 1.0);

      const FixedRankTangent tv{random_gaussian(n - r, r, stream(s, kTangent)),
                                random_gaussian(m - r, r, stream(s, kTangentG)),
                                random_gaussian(r, r, stream(s, kAmbient))};
      const Matrix pushed = fixed_rank::tangent_push(chart, G, tv);
      const FixedRankTangent tv_back = fixed_rank::tangent_pull(chart, G, pushed);
      pull_push.observe(
          std::max({rel_diff(tv_back.X, tv.X), rel_diff(tv_back.Y, tv.Y), rel_diff(tv_back.H, tv.H)}));
      push_pull_tangent.observe(
          rel_diff(fixed_rank::tangent_push(chart, G, fixed_rank::tangent_pull(chart, G, pushed)), pushed));

      const double h = 1e-6;
      const Matrix plus = fixed_rank::theta_inverse(chart, {h * tv.X, h * tv.Y, G + h * tv.H});
      const Matrix minus = fixed_rank::theta_inverse(chart, {-h * tv.X, -h * tv.Y, G - h * tv.H});
      fd.observe(((plus - minus) / (2 * h) - pushed).norm() / pushed.norm());

      const Matrix Zdot = random_gaussian(n, m, stream(s, kCoordY3));
      const TangentSplit parts = fixed_rank::tangent_split(chart, G, Zdot);
      split.observe(std::max(
          {rel_diff(parts.vertical + parts.horizontal, Zdot),
           (chart.U_perp_pinv() * parts.vertical * chart.V_perp_pinv().transpose()).norm(),
           (chart.U_pinv() * parts.horizontal * chart.V_pinv().transpose()).norm()}));

      differential_rank.observe(static_cast<double>(
          rank_of_differential(n, m, r * (n + m - r), [&](Index j) {
            return fixed_rank::differential(chart, c, unit_fixed_rank(n, m, r, j));
          })));
      dimension.observe(static_cast<double>(chart.coordinate_dim()));
      dimension.observe(static_cast<double>(c.X.size() + c.Y.size() + c.H.size()));

      const Matrix UVt = U * V.transpose();
      const Matrix A2 = fixed_rank::theta_inverse(chart, c2);
      const Matrix A3 = fixed_rank::theta_inverse(chart, c3);
      identity.observe(std::max({rel_diff(fixed_rank::group_identity(chart), UVt),
                                 rel_diff(fixed_rank::group_op(chart, A, UVt), A),
                                 rel_diff(fixed_rank::group_op(chart, UVt, A), A)}));
      group_axioms.observe(std::max(
          {rel_diff(fixed_rank::group_op(chart, fixed_rank::group_op(chart, A, A2), A3),
                    fixed_rank::group_op(chart, A, fixed_rank::group_op(chart, A2, A3))),
           rel_diff(fixed_rank::group_op(chart, A, fixed_rank::group_inverse(chart, A)), UVt),
           rel_diff(fixed_rank::group_op(chart, fixed_rank::group_inverse(chart, A), A), UVt)}));

      const auto [EU1, EV1, H1] = fixed_rank::eta(chart, A);
      const auto [EU2, EV2, H2] = fixed_rank::eta(chart, A2);
      const auto [EU12, EV12, H12] = fixed_rank::eta(chart, fixed_rank::group_op(chart, A, A2));
      eta_hom.observe(std::max(
          {rel_diff(EU12, EU1 * EU2), rel_diff(EV12, EV1 * EV2), rel_diff(H12, H1 * H2)}));

      const auto [SU, SV, Hc] = fixed_rank::fiber_chart(chart, A);
      fiber.observe(std::max({rel_diff(grassmann::chart_apply(chart.left_chart(), SU), c.X),
                              rel_diff(grassmann::chart_apply(chart.right_chart(), SV), c.Y),
                              rel_diff(Hc, c.H)}));

      const Matrix P = random_gl(r, stream(s, kCoordX3));
      const Matrix Q = random_gl(r, stream(s, kCoordY2));
      const RankRPoint reparam(U * P, P.inverse() * G * Q.inverse().transpose(), V * Q);
      const auto [pu, pv] = fixed_rank::rho_project(p);
      const auto [qu, qv] = fixed_rank::rho_project(reparam);
      rho.observe(std::max({pu.distance(qu), pv.distance(qv), rel_diff(reparam.matrix(), p.matrix())}));

      const FixedRankChart chart2(U + 0.3 * random_gaussian(n, r, stream(s, kCenter3)),
                                  V + 0.3 * random_gaussian(m, r, stream(s, kAmbient)));
      transition.observe(
          rel_diff(fixed_rank::theta_inverse(chart2, fixed_rank::transition(chart, chart2, c)), A));
    }
    for (const Case* cs : {&theta_roundtrip_point, &theta_roundtrip_coords, &center,
                           &chart_independence, &pull_push, &push_pull_tangent, &fd, &split,
                           &differential_rank, &dimension, &identity, &group_axioms, &eta_hom,
                           &output_rank, &fiber, &rho, &transition}) {
      report.cases.push_back(cs->result());
    }
  });
}

Report all_suites(const Dims& dims, std::uint64_t seed, int trials) {
  return run("all", dims, seed, trials, [&](Report& report) {
    for (const Report& sub : {grassmann_suite(dims, seed, trials), stiefel_suite(dims, seed, trials),
                              fixed_rank_suite(dims, seed, trials)}) {
      report.cases.insert(report.cases.end(), sub.cases.begin(), sub.cases.end());
    }
  });
}

}  // namespace mchart::verify
