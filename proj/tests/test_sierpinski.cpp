#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "reslab/exponents.hpp"
#include "reslab/sierpinski.hpp"

using namespace reslab;

TEST_CASE("level construction: counts, coordinates and measure") {
  for (int n = 0; n <= 4; ++n) {
    SgLevel lvl(n);
    std::size_t pow3 = 1;
    for (int k = 0; k < n; ++k) pow3 *= 3;
    CHECK(lvl.n_vertices() == 3 * (pow3 + 1) / 2);
    CHECK(lvl.n_edges() == 3 * pow3);

    double total = 0.0;
    for (double m : lvl.measure()) {
      total += m;
      bool small = std::abs(m - 1.0 / (3.0 * pow3)) < 1e-15;
      bool large = std::abs(m - 2.0 / (3.0 * pow3)) < 1e-15;
      CHECK((small || large));
    }
    CHECK(std::abs(total - 1.0) < 1e-12);

    // measure coincides with degree / (2 #edges)
    std::vector<int> degree(lvl.n_vertices(), 0);
    for (const Edge& e : lvl.network().edges()) {
      ++degree[e.u];
      ++degree[e.v];
    }
    for (std::size_t v = 0; v < lvl.n_vertices(); ++v)
      CHECK(std::abs(lvl.measure()[v] - degree[v] / (2.0 * lvl.n_edges())) < 1e-15);

    // corner positions form a unit triangle
    auto c = lvl.corners();
    CHECK(std::abs(lvl.euclidean_distance(c[0], c[1]) - 1.0) < 1e-12);
    CHECK(std::abs(lvl.euclidean_distance(c[1], c[2]) - 1.0) < 1e-12);
    CHECK(std::abs(lvl.euclidean_distance(c[0], c[2]) - 1.0) < 1e-12);
  }
}

TEST_CASE("corner resistance at level zero") {
  SgLevel lvl(0);
  auto c = lvl.corners();
  CHECK(std::abs(lvl.network().effective_resistance(c[0], c[1]) - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("decimation compatibility at small levels") {
  CHECK(decimation_check(0) < 1e-9);
  CHECK(decimation_check(1) < 1e-9);
  CHECK(decimation_check(2) < 1e-9);
}

TEST_CASE("resistance against euclidean distance") {
  SgLevel lvl(4);
  double slope = euclid_resistance_fit(lvl);
  double expect = std::log(5.0 / 3.0) / std::log(2.0);
  CHECK(slope > expect - 0.06);
  CHECK(slope < expect + 0.06);
}

TEST_CASE("ball volumes are roughly ahlfors regular") {
  SgLevel lvl(4);
  auto fit = ahlfors_fit(lvl);
  double expect = std::log(3.0) / std::log(5.0 / 3.0);
  CHECK(fit.exponent > expect - 0.45);
  CHECK(fit.exponent < expect + 0.45);
  CHECK(fit.lower_c <= fit.upper_c);
  CHECK(fit.lower_c > 0.0);
}

TEST_CASE("hausdorff and measure decay move toward the contraction ratio") {
  auto dh = sg_hausdorff_decay(4, true);
  REQUIRE(dh.size() == 4);
  for (std::size_t k = 0; k + 1 < dh.size(); ++k) CHECK(dh[k + 1] < dh[k]);
  double ratio = dh[3] / dh[2];
  CHECK(ratio > 0.6 - 0.1);
  CHECK(ratio < 0.6 + 0.1);

  auto db = sg_measure_decay(4, 1.0, true);
  REQUIRE(db.size() == 4);
  for (std::size_t k = 0; k + 1 < db.size(); ++k) CHECK(db[k + 1] < db[k]);
  double bratio = db[3] / db[2];
  CHECK(bratio > 0.6 - 0.15);
  CHECK(bratio < 0.6 + 0.15);
}

TEST_CASE("semigroup and kernel differences decay across levels") {
  auto sg = sg_semigroup_error(1, 4, 1.0);
  REQUIRE(sg.size() == 3);
  CHECK(sg[0].err > sg[2].err);
  for (auto& row : sg) CHECK(row.err >= 0.0);

  auto hk = sg_heat_kernel_error(1, 4, 1.0);
  REQUIRE(hk.size() == 3);
  CHECK(hk[0].err > hk[2].err);
}

TEST_CASE("matched corner points across levels are exact") {
  SgLevel a(2), b(3);
  for (int c = 0; c < 3; ++c) {
    std::size_t va = a.corners()[c];
    std::size_t vb = b.match_from(a, va);
    CHECK(vb == b.corners()[c]);
  }
}
