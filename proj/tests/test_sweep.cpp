#include "catch_amalgamated.hpp"

#include "floquet_ep/sweep.hpp"
#include "support.hpp"

#include <cstdlib>
#include <numbers>

using namespace fep;
using namespace fep::sweep;
using floquet::Branch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("axis sampling", "[sweep]") {
  const auto lin = Axis{0.1, 3.0, 30, Scale::Linear}.values();
  REQUIRE(lin.size() == 30);
  CHECK(lin.front() == 0.1);
  CHECK(lin.back() == 3.0);
  CHECK_THAT(lin[1] - lin[0], WithinAbs(0.1, 1e-15));
  const auto lg = Axis{1e-2, 10.0, 4, Scale::Log}.values();
  CHECK(lg.front() == 1e-2);
  CHECK(lg.back() == 10.0);
  CHECK_THAT(lg[1], WithinRel(0.1, 1e-14));
  CHECK_THAT(lg[2], WithinRel(1.0, 1e-14));
  CHECK_THROWS_AS((Axis{0.0, 1.0, 5, Scale::Log}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Axis{1.0, 1.0, 5, Scale::Linear}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Axis{0.0, 1.0, 1, Scale::Linear}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Axis{0.0, NAN, 3, Scale::Linear}.validate()), std::invalid_argument);
}

TEST_CASE("default phase-diagram grid", "[sweep]") {
  const auto grid = GridSpec::figure1_preset();
  CHECK(grid.gamma_axis.count == 400);
  CHECK(grid.omega_axis.count == 400);
  CHECK(grid.gamma_axis.scale == Scale::Log);
  CHECK(grid.p == 0.5);
  const auto params = grid.params_at(2.0, 1.5);
  CHECK_THAT(params.gamma_scaled(), WithinRel(2.0, 1e-14));
  CHECK_THAT(params.omega_scaled(), WithinRel(1.5, 1e-14));
}

TEST_CASE("small heat map by hand", "[sweep]") {
  GridSpec grid{{0.0, 1.0, 2, Scale::Linear}, {0.5, 2.5, 2, Scale::Linear}, 0.5, 1.0};
  const auto map = compute_heatmap(grid, Quantity::InnerProduct, 1);
  REQUIRE(map.values.size() == 4);
  CHECK(map.at(0, 0) == 0.0);
  CHECK(map.at(0, 1) == 0.0);
  for (std::size_t iw = 0; iw < 2; ++iw) {
    const double expect = floquet::eigenvector_overlap(grid.params_at(1.0, map.omega[iw]));
    CHECK(map.at(1, iw) == expect);
  }
  const auto disc = compute_heatmap(grid, Quantity::Discriminant, 1);
  CHECK(disc.at(1, 1) == floquet::discriminant(grid.params_at(1.0, 2.5)));
}

TEST_CASE("inner-product peak tracks the closed-form contour", "[sweep]") {
  GridSpec grid{{1e-2, 10.0, 200, Scale::Log}, {0.1, 3.0, 40, Scale::Linear}, 0.5, 1.0};
  const auto map = compute_heatmap(grid, Quantity::InnerProduct, 2);
  const double ratio = map.gamma[1] / map.gamma[0];
  for (std::size_t iw = 0; iw < map.omega.size(); ++iw) {
    const auto params = grid.params_at(1.0, map.omega[iw]);
    for (Branch b : {Branch::PlusOne, Branch::MinusOne}) {
      const auto g = floquet::ep_contour_gamma(params, b);
      if (!g) continue;
      const double scaled = params.with_gamma(*g).gamma_scaled();
      if (scaled < map.gamma.front() * ratio || scaled > map.gamma.back() / ratio) continue;
      // The nearest sample to the contour is a local peak of I_P.
      std::size_t ig = 0;
      for (std::size_t i = 1; i < map.gamma.size(); ++i) {
        if (std::abs(std::log(map.gamma[i] / scaled)) <
            std::abs(std::log(map.gamma[ig] / scaled))) {
          ig = i;
        }
      }
      const double peak = std::max({map.at(ig, iw), map.at(ig - 1, iw), map.at(ig + 1, iw)});
      CHECK(peak > 0.9);
      CHECK(map.at(ig - 2, iw) <= peak);
      CHECK(map.at(ig + 2, iw) <= peak);
    }
  }
}

TEST_CASE("phase map agrees with classification", "[sweep]") {
  GridSpec grid{{1e-2, 10.0, 30, Scale::Log}, {0.1, 3.0, 30, Scale::Linear}, 0.5, 1.0};
  const auto map = compute_heatmap(grid, Quantity::Phase, 3);
  for (std::size_t ig = 0; ig < map.gamma.size(); ++ig) {
    for (std::size_t iw = 0; iw < map.omega.size(); ++iw) {
      const auto label =
          floquet::classify_phase(grid.params_at(map.gamma[ig], map.omega[iw])).kind;
      const double code = label == floquet::PhaseKind::PTSymmetric ? kPhaseSymmetric
                          : label == floquet::PhaseKind::PTBroken  ? kPhaseBroken
                                                                   : kPhaseEP;
      CHECK(map.at(ig, iw) == code);
    }
  }
}

TEST_CASE("heat maps are identical for any worker count", "[sweep][property]") {
  GridSpec grid{{1e-2, 10.0, 37, Scale::Log}, {0.1, 3.0, 23, Scale::Linear}, 0.5, 1.0};
  for (Quantity q : {Quantity::InnerProduct, Quantity::Discriminant, Quantity::Phase}) {
    const auto one = compute_heatmap(grid, q, 1);
    for (unsigned w : {2u, 5u, 16u, 64u}) {
      CHECK(compute_heatmap(grid, q, w).values == one.values);
    }
  }
}

TEST_CASE("worker resolution", "[sweep]") {
  CHECK(resolve_workers(3) == 3);
  ::setenv("FLOQUET_EP_THREADS", "7", 1);
  CHECK(resolve_workers() == 7);
  ::setenv("FLOQUET_EP_THREADS", "0", 1);
  CHECK(resolve_workers() >= 1);
  ::unsetenv("FLOQUET_EP_THREADS");
  CHECK(resolve_workers() >= 1);
}

TEST_CASE("resonance frequencies", "[sweep]") {
  const auto res = resonance_frequencies(0.5, 1.0, 5);
  REQUIRE(res.size() == 6);
  CHECK_FALSE(res[0].omega_k);
  CHECK(res[0].omega_node == 2.0);
  for (int k = 1; k <= 5; ++k) {
    CHECK(res[k].k == k);
    CHECK_THAT(*res[k].omega_k, WithinRel(1.0 / k, 1e-15));
    CHECK_THAT(res[k].omega_node, WithinRel(1.0 / (k + 0.5), 1e-15));
  }
  CHECK_THROWS_AS(resonance_frequencies(0.5, 1.0, 0), std::invalid_argument);
}

TEST_CASE("traced contours lie on the EP locus", "[sweep]") {
  const auto set = trace_contours(0.5, 1.0, Axis{0.15, 3.0, 500, Scale::Linear});
  REQUIRE_FALSE(set.branches.empty());
  std::size_t total = 0;
  for (std::size_t i = 0; i < set.branches.size(); ++i) {
    const auto& br = set.branches[i];
    if (i > 0) {
      const auto& prev = set.branches[i - 1];
      CHECK(std::pair(prev.k, prev.branch) < std::pair(br.k, br.branch));
    }
    for (std::size_t j = 0; j < br.points.size(); ++j) {
      const auto& pt = br.points[j];
      const auto params = floquet::FloquetParams::from_omega(0.5, pt.omega, 1.0, pt.gamma);
      CHECK(std::abs(floquet::discriminant(params)) < 1e-8);
      CHECK(static_cast<int>(std::floor(2 * 0.5 * 1.0 / pt.omega)) == br.k);
      if (j > 0) CHECK(pt.omega > br.points[j - 1].omega);
      ++total;
    }
  }
  // Exactly one branch solves the EP condition at each frequency.
  CHECK(total == 500);
}

TEST_CASE("contour slopes approach the linear law", "[sweep]") {
  for (int k = 1; k <= 5; ++k) {
    for (int side : {-1, 1}) {
      const auto slope = contour_slope(0.5, 1.0, k, 1e-6, side);
      REQUIRE(slope);
      CHECK_THAT(*slope, WithinRel(k / (2.0 * 0.5), 1e-4));
    }
  }
}
