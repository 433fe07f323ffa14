#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "kfree/correlation.hpp"
#include "kfree/sieve.hpp"

using namespace kfree;

namespace {

NumberField gauss() { return make_field({Int(1), Int(0), Int(1)}); }
NumberField root2() { return make_field({Int(-2), Int(0), Int(1)}); }
NumberField rationals() { return make_field({Int(0), Int(1)}); }

bool naive_squarefree(long long n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("rational square-free pattern matches trial division") {
  NumberField F = rationals();
  SieveGrid g = sieve(F, 2, 100);
  for (long long n = -100; n <= 100; ++n) {
    auto b = g.bit_of({n});
    REQUIRE(b.has_value());
    CHECK(*b == naive_squarefree(n));
  }
  CHECK_FALSE(*g.bit_of({0}));
  CHECK(*g.bit_of({1}));
  CHECK_FALSE(*g.bit_of({-12}));
}

TEST_CASE("ball index round trips both directions") {
  BallIndex idx = BallIndex::build(2, 7);
  CHECK(idx.count() == ball_count(2, 7));
  for (uint32_t i = 0; i < idx.count(); ++i) {
    std::vector<long long> c(idx.points[i].begin(), idx.points[i].end());
    auto back = idx.index_of(c);
    REQUIRE(back.has_value());
    CHECK(*back == i);
  }
  CHECK_FALSE(idx.index_of({8, 0}).has_value());
  CHECK_FALSE(idx.index_of({4, 4}).has_value());
}

TEST_CASE("ideal lattice points agree with direct containment scan") {
  NumberField F = gauss();
  Ideal two = principal(elem_ll(F, {2, 0}));
  auto pts = lattice_points_in_ball(two, 2);
  std::sort(pts.begin(), pts.end());
  CHECK(pts == std::vector<std::vector<long long>>{
                   {-2, 0}, {0, -2}, {0, 0}, {0, 2}, {2, 0}});

  SplitMix64 rng(7);
  for (int t = 0; t < 12; ++t) {
    std::vector<Int> c{Int(rng.range(-6, 6)), Int(rng.range(-6, 6))};
    if (c[0] == 0 && c[1] == 0) c[0] = 3;
    Ideal a = principal(elem(F, c));
    long long x = rng.range(3, 12);
    auto got = lattice_points_in_ball(a, x);
    std::sort(got.begin(), got.end());
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    std::vector<std::vector<long long>> want;
    for_each_ball_point(2, x, [&](const std::vector<long long>& p) {
      if (contains(a, elem_ll(F, p))) want.push_back(p);
    });
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("square-free mask is invariant under multiplication by i") {
  NumberField F = gauss();
  SieveGrid g = sieve(F, 2, 30);
  for (const auto& p : g.idx.points) {
    std::vector<long long> rot{-p[1], p[0]};
    CHECK(*g.bit_of(rot) == *g.bit_of({p[0], p[1]}));
  }
}

TEST_CASE("larger radius restricts to the smaller grid") {
  NumberField F = gauss();
  SieveGrid small = sieve(F, 2, 30);
  SieveGrid large = sieve(F, 2, 40);
  for (const auto& p : small.idx.points)
    CHECK(*large.bit_of({p[0], p[1]}) == *small.bit_of({p[0], p[1]}));
}

TEST_CASE("specific Gaussian integers classified correctly") {
  NumberField F = gauss();
  SieveGrid g = sieve(F, 2, 50);
  CHECK(*g.bit_of({1, 1}));        // prime of norm 2
  CHECK_FALSE(*g.bit_of({2, 0}));  // (1+i)^2
  CHECK_FALSE(*g.bit_of({8, -6})); // divisible by (1+i)^2
  CHECK(*g.bit_of({1, 2}));
  CHECK(*g.bit_of({0, 1}));        // unit
}

TEST_CASE("sampled factorizations never disagree with the grid") {
  NumberField Fi = gauss();
  for (int k = 2; k <= 3; ++k) {
    SieveGrid g = sieve(Fi, k, 25);
    auto rep = crosscheck_sample(g, 200, 11);
    CHECK(rep.samples == 200);
    CHECK(rep.mismatches == 0);
  }
  NumberField Fs = root2();
  SieveGrid g = sieve(Fs, 2, 25);
  auto rep = crosscheck_sample(g, 200, 12);
  CHECK(rep.mismatches == 0);
}

TEST_CASE("density error shrinks from the smallest to the largest radius") {
  struct Probe {
    NumberField F;
    int k;
  };
  const Probe probes[] = {{gauss(), 2}, {rationals(), 3}, {root2(), 2}};
  for (const auto& pr : probes) {
    long double limit = 1.0L / dedekind_zeta(pr.F, pr.k, 1000000).value;
    long double err40 = 0, err160 = 0;
    for (long long x : {40LL, 80LL, 160LL}) {
      SieveGrid g = sieve(pr.F, pr.k, x);
      long double err = fabsl(static_cast<long double>(g.density()) - limit);
      // error envelope of order x^(-1/2); the constant has ample slack
      CHECK(err * sqrtl(static_cast<long double>(x)) < 1.0L);
      if (x == 40) err40 = err;
      if (x == 160) err160 = err;
    }
    CHECK(err160 <= err40);
  }
}
