#include "flda/ftree.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "flda/rng.hpp"
#include "flda/samplers.hpp"

using namespace flda;

namespace {

const std::vector<double> kFigWeights{0.3, 1.5, 0.4, 0.3};

FTree fig_tree() { return FTree{std::span<const double>(kFigWeights)}; }

}  // namespace

TEST_CASE("build: 4-leaf tree node values") {
  FTree f = fig_tree();
  const double expect[7] = {2.5, 1.8, 0.7, 0.3, 1.5, 0.4, 0.3};
  for (int i = 1; i <= 7; ++i)
    CHECK(f.node(i) == doctest::Approx(expect[i - 1]).epsilon(1e-12));
}

TEST_CASE("build: singleton collapses to a single node") {
  const std::vector<double> w{1.0};
  FTree f{std::span<const double>(w)};
  CHECK(f.leaf_base() == 1);
  CHECK(f.total() == 1.0);
  CHECK(f.leaf(0) == 1.0);
  CHECK(f.sample(0.5) == 0);
}

TEST_CASE("build: T=3 pads the fourth leaf with zero") {
  const std::vector<double> w{0.3, 1.5, 0.4};
  FTree f{std::span<const double>(w)};
  CHECK(f.leaf_base() == 4);
  CHECK(f.node(4) == 0.3);
  CHECK(f.node(5) == 1.5);
  CHECK(f.node(6) == 0.4);
  CHECK(f.node(7) == 0.0);
  CHECK(f.total() == doctest::Approx(2.2).epsilon(1e-12));
}

TEST_CASE("build: negative weight rejected") {
  const std::vector<double> w{0.3, -0.1};
  CHECK_THROWS_AS(FTree{std::span<const double>(w)}, InvalidDistributionError);
}

TEST_CASE("sample: figure walk u=2.1 lands on third leaf") {
  CHECK(fig_tree().sample(2.1) == 2);
}

TEST_CASE("sample: u=0 lands on first positive leaf") {
  CHECK(fig_tree().sample(0.0) == 0);
  const std::vector<double> w{0.0, 0.0, 0.7, 0.1};
  FTree f{std::span<const double>(w)};
  CHECK(f.sample(0.0) == 2);
}

TEST_CASE("sample: agrees with the cumulative binary-search oracle") {
  RngStream rng(7, 99);
  for (int trial = 0; trial < 100; ++trial) {
    const int T = 1 + static_cast<int>(rng.uniform_below(40));
    std::vector<double> w(T);
    double total = 0.0;
    for (double& x : w) {
      x = rng.uniform01() < 0.25 ? 0.0 : rng.uniform01();
      total += x;
    }
    if (total <= 0.0) {
      w[0] = 0.5;
      total += 0.5;
    }
    FTree f{std::span<const double>(w)};
    const Cdf cdf = cumsum_build(std::span<const double>(w));
    for (int k = 0; k < 100; ++k) {
      const double u = rng.uniform(total);
      if (u >= cdf.total() || u >= f.total()) continue;
      CHECK(f.sample(u) == bsearch_sample(cdf, u));
    }
  }
}

TEST_CASE("sample: u out of range throws") {
  FTree f = fig_tree();
  CHECK_THROWS_AS(f.sample(2.5), ContractViolationError);
  CHECK_THROWS_AS(f.sample(3.0), ContractViolationError);
  CHECK_THROWS_AS(f.sample(-0.1), ContractViolationError);
  CHECK_THROWS_AS(f.sample(std::nan("")), ContractViolationError);
  FTree zero(4);
  CHECK(zero.total() == 0.0);
  CHECK_THROWS_AS(zero.sample(0.0), ContractViolationError);
}

TEST_CASE("update: figure delta propagates to the root") {
  FTree f = fig_tree();
  f.update(2, 1.0);
  CHECK(f.node(1) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(f.node(2) == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(f.node(3) == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(f.node(6) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(f.node(7) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.total() == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("update: zero delta is a no-op") {
  FTree f = fig_tree();
  f.update(1, 0.0);
  const double expect[7] = {2.5, 1.8, 0.7, 0.3, 1.5, 0.4, 0.3};
  for (int i = 1; i <= 7; ++i) CHECK(f.node(i) == expect[i - 1]);
}

TEST_CASE("update: delta then -delta restores every node") {
  FTree f = fig_tree();
  FTree orig = fig_tree();
  RngStream rng(3, 3);
  for (int k = 0; k < 200; ++k) {
    const int t = static_cast<int>(rng.uniform_below(4));
    const double d = rng.uniform01();
    f.update(t, d);
    f.update(t, -d);
  }
  const double tol = 1e-9 * orig.total();
  for (int i = 1; i <= 7; ++i) CHECK(std::abs(f.node(i) - orig.node(i)) <= tol);
}

TEST_CASE("update: topic out of range throws") {
  FTree f = fig_tree();
  CHECK_THROWS_AS(f.update(4, 1.0), ContractViolationError);
  CHECK_THROWS_AS(f.update(-1, 1.0), ContractViolationError);
}

TEST_CASE("update: tiny negative clamps, large negative throws") {
  FTree f = fig_tree();
  f.update(0, -0.3 - 1e-15);  // cancellation noise
  CHECK(f.leaf(0) == 0.0);
  FTree g = fig_tree();
  CHECK_THROWS_AS(g.update(0, -0.4), ContractViolationError);
}

TEST_CASE("total: figure values and zero tree") {
  CHECK(fig_tree().total() == doctest::Approx(2.5).epsilon(1e-12));
  FTree zero(3);
  CHECK(zero.total() == 0.0);
  FTree f = fig_tree();
  f.update(2, 1.0);
  CHECK(f.total() == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("incremental updates match a rebuilt tree") {
  const int T = 37;
  RngStream rng(11, 0);
  std::vector<double> w(T);
  for (double& x : w) x = rng.uniform01();

  FTree live{std::span<const double>(w)};
  for (int k = 0; k < 20000; ++k) {
    const int t = static_cast<int>(rng.uniform_below(T));
    double delta = rng.uniform01() - 0.4;
    if (w[t] + delta < 0.0) delta = -w[t];
    w[t] += delta;
    live.update(t, delta);
  }
  FTree rebuilt{std::span<const double>(w)};
  const double tol = 1e-9 * rebuilt.total();
  for (int i = 1; i < 2 * live.leaf_base(); ++i)
    CHECK(std::abs(live.node(i) - rebuilt.node(i)) <= tol);
}

TEST_CASE("zero-pad safety: sample never returns a zero-weight leaf") {
  const std::vector<double> w{0.5, 0.0, 1.25, 0.0, 0.25};  // T=5, T'=8
  FTree f{std::span<const double>(w)};
  RngStream rng(5, 5);
  for (int k = 0; k < 20000; ++k) {
    const int t = f.sample(rng.uniform(f.total()));
    CAPTURE(t);
    REQUIRE(t < 5);
    REQUIRE(f.leaf(t) > 0.0);
  }
  // boundary values too
  for (double u : {0.0, 0.5, 1.75, std::nextafter(2.0, 0.0)}) {
    const int t = f.sample(u);
    REQUIRE(f.leaf(t) > 0.0);
  }
}

TEST_CASE("set_leaf pins the leaf to its target") {
  FTree f = fig_tree();
  f.set_leaf(1, 0.25);
  CHECK(f.leaf(1) == 0.25);
  CHECK(f.total() == doctest::Approx(1.25).epsilon(1e-12));
  f.set_leaf(1, 1.5);
  CHECK(f.leaf(1) == 1.5);
}
