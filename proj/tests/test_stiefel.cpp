#include <doctest.h>

#include "mchart/stiefel.hpp"
#include "oracles.hpp"

using namespace mchart;

namespace {

struct Fixture {
  Matrix Z = random_full_rank(9, 3, 100);
  StiefelChart chart{Z};
  Index k = 9;
  Index r = 3;
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "xi at the centre and along the fibre") {
  const StiefelCoords c = stiefel::xi_apply(chart, Z);
  CHECK(c.X.norm() <= 1e-12);
  CHECK((c.G - Matrix::Identity(r, r)).norm() <= 1e-12);
  CHECK(oracle::rel(stiefel::xi_inverse(chart, {Matrix::Zero(k - r, r), Matrix::Identity(r, r)}), Z) <=
        1e-15);

  const Matrix G0 = random_full_rank(r, r, 101);
  const StiefelCoords f = stiefel::xi_apply(chart, Z * G0);
  CHECK(f.X.norm() <= 1e-10);
  CHECK(oracle::rel(f.G, G0) <= 1e-10);

  const Matrix X = random_gaussian(k - r, r, 102);
  CHECK(oracle::rel(stiefel::xi_inverse(chart, {X, Matrix::Identity(r, r)}),
                    Z + chart.complement() * X) <= 1e-14);
}

TEST_CASE_FIXTURE(Fixture, "xi round trips") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix W = Z + 0.5 * random_gaussian(k, r, seed);
    const StiefelCoords c = stiefel::xi_apply(chart, W);
    CHECK(oracle::rel(stiefel::xi_inverse(chart, c), W) <= 1e-9);

    const StiefelCoords c0{random_gaussian(k - r, r, seed + 50), random_full_rank(r, r, seed + 60)};
    const Matrix W0 = stiefel::xi_inverse(chart, c0);
    CHECK(oracle::singular_values(Z.transpose() * W0).minCoeff() > 1e-8);
    const StiefelCoords back = stiefel::xi_apply(chart, W0);
    CHECK(oracle::rel(back.X, c0.X) <= 1e-9);
    CHECK(oracle::rel(back.G, c0.G) <= 1e-9);
  }
}

TEST_CASE_FIXTURE(Fixture, "xi rejects points outside the chart and singular G") {
  CHECK_THROWS_AS(stiefel::xi_apply(chart, chart.complement().leftCols(r)), OutOfChartDomain);
  CHECK_THROWS_AS(stiefel::xi_inverse(chart, {Matrix::Zero(k - r, r), Matrix::Zero(r, r)}),
                  SingularFactor);
}

TEST_CASE_FIXTURE(Fixture, "bundle projection and fibre chart") {
  const Matrix G = random_full_rank(r, r, 110);
  CHECK(stiefel::bundle_project(Z).approx_equal(Subspace(Z)));
  const Matrix W = Z + 0.4 * random_gaussian(k, r, 111);
  CHECK(stiefel::bundle_project(W).approx_equal(stiefel::bundle_project(W * G)));

  const auto [base0, g0] = stiefel::fiber_chart(chart, Z);
  CHECK(base0.approx_equal(Subspace(Z)));
  CHECK((g0 - Matrix::Identity(r, r)).norm() <= 1e-12);

  const Matrix X = random_gaussian(k - r, r, 112);
  const Matrix section = Z + chart.complement() * X;
  const auto [base, g] = stiefel::fiber_chart(chart, section * G);
  CHECK(base.approx_equal(Subspace(section)));
  CHECK(oracle::rel(g, G) <= 1e-9);
  // Local representation (X, G) -> (phi(col), G) is the identity.
  CHECK(oracle::rel(grassmann::chart_apply(chart.base_chart(), base), X) <= 1e-9);
}

TEST_CASE_FIXTURE(Fixture, "tangent isomorphism") {
  const Matrix I = Matrix::Identity(r, r);
  CHECK(oracle::rel(stiefel::tangent_push(chart, {Matrix::Zero(k - r, r), I}), Z) <= 1e-15);
  const Matrix Xd = random_gaussian(k - r, r, 120);
  CHECK(oracle::rel(stiefel::tangent_push(chart, {Xd, Matrix::Zero(r, r)}),
                    chart.complement() * Xd) <= 1e-15);

  const StiefelTangent vz = stiefel::tangent_pull(chart, Z);
  CHECK(vz.X.norm() <= 1e-12);
  CHECK((vz.G - I).norm() <= 1e-12);

  const Matrix Zd = random_gaussian(k, r, 121);
  const StiefelTangent t = stiefel::tangent_pull(chart, Zd);
  CHECK(oracle::rel(stiefel::tangent_push(chart, t), Zd) <= 1e-10);
  const StiefelTangent t0{random_gaussian(k - r, r, 122), random_gaussian(r, r, 123)};
  const StiefelTangent back = stiefel::tangent_pull(chart, stiefel::tangent_push(chart, t0));
  CHECK(oracle::rel(back.X, t0.X) <= 1e-10);
  CHECK(oracle::rel(back.G, t0.G) <= 1e-10);
}

TEST_CASE("tangent_pull of Z_perp when r = k - r") {
  const StiefelChart chart(random_full_rank(6, 3, 130));
  const StiefelTangent t = stiefel::tangent_pull(chart, chart.complement());
  CHECK((t.X - Matrix::Identity(3, 3)).norm() <= 1e-12);
  CHECK(t.G.norm() <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "vertical and horizontal parts") {
  const Matrix Gd = random_gaussian(r, r, 140);
  const TangentSplit v = stiefel::tangent_split(chart, Z * Gd);
  CHECK(oracle::rel(v.vertical, Z * Gd) <= 1e-12);
  CHECK(v.horizontal.norm() <= 1e-12);
  const Matrix H = chart.complement() * random_gaussian(k - r, r, 141);
  const TangentSplit h = stiefel::tangent_split(chart, H);
  CHECK(h.vertical.norm() <= 1e-12);
  CHECK(oracle::rel(h.horizontal, H) <= 1e-12);
  const Matrix Zd = random_gaussian(k, r, 142);
  const TangentSplit s = stiefel::tangent_split(chart, Zd);
  CHECK((s.vertical + s.horizontal - Zd).norm() <= 1e-10);
}

TEST_CASE_FIXTURE(Fixture, "differential matches central differences and has full rank") {
  const StiefelCoords at{random_gaussian(k - r, r, 150), random_full_rank(r, r, 151)};
  const StiefelTangent t{random_gaussian(k - r, r, 152), random_gaussian(r, r, 153)};
  const double h = 1e-6;
  const Matrix fd = (stiefel::xi_inverse(chart, {at.X + h * t.X, at.G + h * t.G}) -
                     stiefel::xi_inverse(chart, {at.X - h * t.X, at.G - h * t.G})) /
                    (2 * h);
  const Matrix d = stiefel::differential(chart, at, t);
  CHECK((fd - d).norm() / d.norm() <= 1e-5);

  // Apply the differential to every basis direction.
  Matrix J(k * r, k * r);
  Index column = 0;
  for (Index i = 0; i < k - r; ++i) {
    for (Index j = 0; j < r; ++j) {
      StiefelTangent e{Matrix::Zero(k - r, r), Matrix::Zero(r, r)};
      e.X(i, j) = 1.0;
      J.col(column++) = stiefel::differential(chart, at, e).reshaped();
    }
  }
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      StiefelTangent e{Matrix::Zero(k - r, r), Matrix::Zero(r, r)};
      e.G(i, j) = 1.0;
      J.col(column++) = stiefel::differential(chart, at, e).reshaped();
    }
  }
  CHECK(oracle::rank(J) == chart.coordinate_dim());
  CHECK(chart.coordinate_dim() == r * (k - r) + r * r);
}

TEST_CASE_FIXTURE(Fixture, "group structure and eta") {
  const Matrix W1 = stiefel::xi_inverse(chart, {random_gaussian(k - r, r, 160), random_full_rank(r, r, 161)});
  const Matrix W2 = stiefel::xi_inverse(chart, {random_gaussian(k - r, r, 162), random_full_rank(r, r, 163)});
  const Matrix W3 = stiefel::xi_inverse(chart, {random_gaussian(k - r, r, 164), random_full_rank(r, r, 165)});
  CHECK(oracle::rel(stiefel::group_op(chart, W1, Z), W1) <= 1e-9);
  CHECK(oracle::rel(stiefel::group_op(chart, Z, W1), W1) <= 1e-9);
  CHECK(oracle::rel(stiefel::group_op(chart, W1, stiefel::group_inverse(chart, W1)), Z) <= 1e-9);
  CHECK(oracle::rel(stiefel::group_op(chart, stiefel::group_op(chart, W1, W2), W3),
                    stiefel::group_op(chart, W1, stiefel::group_op(chart, W2, W3))) <= 1e-9);

  const StiefelCoords c1 = stiefel::xi_apply(chart, W1);
  const StiefelCoords inv = stiefel::xi_apply(chart, stiefel::group_inverse(chart, W1));
  CHECK(oracle::rel(inv.X, -c1.X) <= 1e-9);
  CHECK(oracle::rel(inv.G, c1.G.inverse()) <= 1e-9);

  const auto [e1, g1] = stiefel::eta(chart, W1);
  const auto [e2, g2] = stiefel::eta(chart, W2);
  const auto [e12, g12] = stiefel::eta(chart, stiefel::group_op(chart, W1, W2));
  CHECK(oracle::rel(e12, e1 * e2) <= 1e-10);
  CHECK(oracle::rel(g12, g1 * g2) <= 1e-10);
  const Matrix N = chart.complement() * c1.X * chart.center_pinv();
  CHECK(oracle::rel(e1, oracle::exp_series(N)) <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "transitions reconstruct the same matrix") {
  const StiefelCoords c{0.5 * random_gaussian(k - r, r, 170), random_full_rank(r, r, 171)};
  const StiefelCoords same = stiefel::transition(chart, chart, c);
  CHECK(oracle::rel(same.X, c.X) <= 1e-12);
  CHECK(oracle::rel(same.G, c.G) <= 1e-12);

  const Matrix P = random_full_rank(r, r, 172);
  const StiefelChart scaled(Z * P);
  const StiefelCoords cs = stiefel::transition(chart, scaled, c);
  CHECK(oracle::rel(stiefel::xi_inverse(scaled, cs), stiefel::xi_inverse(chart, c)) <= 1e-9);
  CHECK(oracle::rel(cs.X, grassmann::transition(chart.base_chart(), scaled.base_chart(), c.X)) <= 1e-9);

  const StiefelChart other(Z + 0.3 * random_gaussian(k, r, 173));
  const StiefelCoords co = stiefel::transition(chart, other, c);
  CHECK(oracle::rel(stiefel::xi_inverse(other, co), stiefel::xi_inverse(chart, c)) <= 1e-9);
}

TEST_CASE_FIXTURE(Fixture, "section points lie in the Stiefel chart and match the Grassmann chart") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix X = 10.0 * random_gaussian(k - r, r, 180 + seed);
    CHECK(stiefel::in_domain(chart, Z + chart.complement() * X));
    const Matrix W = stiefel::xi_inverse(chart, {X, random_full_rank(r, r, 190 + seed)});
    CHECK(oracle::rel(grassmann::chart_apply(chart.base_chart(), Subspace(W)), X) <= 1e-9);
  }
}
