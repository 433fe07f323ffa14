// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "kfree/io.hpp"

using namespace kfree;

namespace {

int failures = 0;

void report(int idx, const std::string& desc, bool ok, const std::string& detail) {
  std::printf("%s — %2d. %s%s%s\n", ok ? "PASS" : "FAIL", idx, desc.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string phase_key(const std::vector<Rat>& y) {
  std::string s;
  for (const Rat& r : y) s += format_rat(r) + "|";
  return s;
}

long double to_ld(const Rat& r) {
  return static_cast<long double>(numerator(r).convert_to<double>()) /
         static_cast<long double>(denominator(r).convert_to<double>());
}

std::vector<bool> squarefree_table(long long n) {
  std::vector<bool> sf(static_cast<size_t>(n) + 1, true);
  sf[0] = false;
  for (long long d = 2; d * d <= n; ++d)
    for (long long m = d * d; m <= n; m += d * d) sf[static_cast<size_t>(m)] = false;
  return sf;
}

}  // namespace

int main() {
  NumberField F = make_field({Int(1), Int(0), Int(1)});   // x^2 + 1
  NumberField Q = make_field({Int(0), Int(1)});           // x
  NumberField R2 = make_field({Int(-2), Int(0), Int(1)}); // x^2 - 2

  // 1. density of square-free Gaussian integers, empirical and analytic
  try {
    auto t0 = std::chrono::steady_clock::now();
    SieveGrid g = sieve(F, 2, 120);
    double dens = g.density();
    TruncatedValue z = dedekind_zeta(F, 2, 1000000);
    long double analytic = 1.0L / z.value;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = std::fabs(dens - 0.6637) < 0.01 &&
              fabsl(analytic - 0.6637L) < 1e-4L && secs < 30.0;
    report(1, "square-free density in Z[i]", ok,
           fmt("density=%.6f analytic=%.6Lf %.2fs", dens, analytic, secs));
  } catch (const Error& e) {
    report(1, "square-free density in Z[i]", false, e.what());
  }

  SieveGrid shared = sieve(F, 2, 202);

  // 2. exactly vanishing shift tuple (1, i, 1+i)
  try {
    CorrelationSpec spec{2, {elem_ll(F, {1, 0}), elem_ll(F, {0, 1}), elem_ll(F, {1, 1})},
                         std::nullopt};
    AnalyticResult a = analytic_correlation(F, spec, 100000);
    bool ok = a.exact_zero && a.tv.value == 0.0L && a.tv.tail_bound == 0.0L &&
              a.witness.has_value() && a.witness->norm == 2;
    std::string detail = a.exact_zero ? "analytic exact 0, witness norm 2" : "not zero";
    for (long long x : {40LL, 80LL, 120LL}) {
      Rat emp = empirical_correlation(shared, spec, x);
      if (!(emp == 0)) {
        ok = false;
        detail = fmt("empirical nonzero at radius %lld", x);
      }
    }
    report(2, "vanishing correlation for shifts (1, i, 1+i)", ok, detail);
  } catch (const Error& e) {
    report(2, "vanishing correlation for shifts (1, i, 1+i)", false, e.what());
  }

  // 3. fifth-order correlation of the unit shifts
  try {
    CorrelationSpec spec{2,
                         {elem_ll(F, {1, 0}), elem_ll(F, {0, 1}), elem_ll(F, {-1, 0}),
                          elem_ll(F, {0, -1})},
                         std::nullopt};
    AnalyticResult a = analytic_correlation(F, spec, 100000);
    Rat emp = empirical_correlation(shared, spec, 150);
    long double ev = to_ld(emp);
    bool ok = fabsl(a.tv.value - 0.1303L) <= 2e-3L && fabsl(ev - a.tv.value) <= 0.02L;
    report(3, "correlation of the four unit shifts", ok,
           fmt("analytic=%.6Lf empirical=%.6Lf", a.tv.value, ev));
  } catch (const Error& e) {
    report(3, "correlation of the four unit shifts", false, e.what());
  }

  // 4. annihilator group of (8-6i)
  try {
    Ideal a = principal(elem_ll(F, {8, -6}));
    auto pts = annihilator_points(a);
    bool ok = pts.size() == 100;
    std::set<std::string> keys;
    for (const auto& y : pts) keys.insert(phase_key(y));
    ok = ok && keys.size() == 100;
    for (const auto& y : pts) {
      if (!annihilates(y, a)) ok = false;
      for (const Rat& c : y)
        if (Int(100) % denominator(c) != 0) ok = false;
    }
    for (const auto& y : pts)
      for (const auto& z : pts) {
        std::vector<Rat> s(y.size());
        for (size_t i = 0; i < y.size(); ++i) s[i] = frac_part(y[i] + z[i]);
        if (keys.count(phase_key(s)) == 0) { ok = false; break; }
      }
    report(4, "annihilator of (8-6i) is a group of order 100", ok,
           fmt("%zu points", pts.size()));
  } catch (const Error& e) {
    report(4, "annihilator of (8-6i) is a group of order 100", false, e.what());
  }

  // 5. atom sums against the pair-correlation Euler product
  try {
    bool ok = true;
    long double worst = 0.0L;
    SplitMix64 rng(77);
    auto one = [&](const NumberField& K, const Elem& a) {
      TruncatedValue atoms = c2_from_atoms(a, 2, 100000);
      CorrelationSpec spec{2, {a}, std::nullopt};
      AnalyticResult c = analytic_correlation(K, spec, 100000);
      long double gap = fabsl(atoms.value - c.tv.value);
      long double allow =
          fabsl(c.tv.value) * (atoms.tail_bound + c.tv.tail_bound) + 1e-6L;
      worst = std::max(worst, gap);
      if (gap > allow) ok = false;
    };
    for (int t = 0; t < 20; ++t) {
      long long x, y;
      do {
        x = rng.range(-20, 20);
        y = rng.range(-20, 20);
      } while ((x == 0 && y == 0) || std::llabs(x) + std::llabs(y) > 20);
      one(F, elem_ll(F, {x, y}));
    }
    for (int t = 0; t < 20; ++t) {
      long long x;
      do { x = rng.range(-20, 20); } while (x == 0);
      one(Q, elem_ll(Q, {x}));
    }
    report(5, "spectral atom sums reproduce the pair correlation", ok,
           fmt("worst gap %.2Le over 40 shifts", worst));
  } catch (const Error& e) {
    report(5, "spectral atom sums reproduce the pair correlation", false, e.what());
  }

  // 6. eigenfunction averages at the generic point
  try {
    bool ok = true;
    Character trivial{unit_ideal(F), {Rat(0), Rat(0)}};
    auto t = empirical_theta(trivial, shared, 200);
    CorrelationSpec density_spec{2, {}, std::nullopt};
    long double dens200 = to_ld(empirical_correlation(shared, density_spec, 200));
    if (fabsl(t.real() - dens200) > 1e-12L || fabsl(t.imag()) > 1e-15L) ok = false;

    auto lam = lambda_approx(F, 2, 81);
    std::vector<Character> picks;
    std::set<std::string> levels_seen;
    for (const Character& chi : lam) {
      if (chi.level.is_unit_ideal()) continue;
      if (levels_seen.insert(ideal_str(chi.level)).second) picks.push_back(chi);
    }
    for (const Character& chi : lam) {
      if (picks.size() >= 5) break;
      if (chi.level.is_unit_ideal()) continue;
      bool dup = false;
      for (const Character& p : picks)
        dup = dup || (p.level == chi.level && phase_key(p.phase) == phase_key(chi.phase));
      if (!dup) picks.push_back(chi);
    }
    long double worst = 0.0L;
    for (const Character& chi : picks) {
      SpectralWeights w = weights(chi.level, 2, 100000);
      auto v = empirical_theta(chi, shared, 200);
      long double gap = std::abs(v - std::complex<long double>(w.g.value, 0.0L));
      worst = std::max(worst, gap);
      if (gap > 0.05L) ok = false;
    }
    report(6, "eigenfunction averages approach the g weights", ok,
           fmt("trivial=density, worst gap %.4Lf over %zu characters", worst,
               picks.size()));
  } catch (const Error& e) {
    report(6, "eigenfunction averages approach the g weights", false, e.what());
  }

  // 7. orthonormal expansion mass
  try {
    bool ok = true;
    std::string detail;
    for (const NumberField* K : {&F, &Q}) {
      ParsevalResult p = parseval_check(*K, 2, 10000);
      for (size_t i = 1; i < p.partial.size(); ++i)
        if (p.partial[i].second <= p.partial[i - 1].second) ok = false;
      if (p.total.value < 0.99L) ok = false;
      detail += fmt("%s=%.5Lf ", K == &F ? "Z[i]" : "Z", p.total.value);
    }
    report(7, "Parseval mass reaches 0.99 by level norm 1e4", ok, detail);
  } catch (const Error& e) {
    report(7, "Parseval mass reaches 0.99 by level norm 1e4", false, e.what());
  }

  // 8. exact eigenrelations on finite truncations
  try {
    bool ok = true;
    std::string detail;
    for (long long D : {4LL, 25LL, 100LL}) {
      RotationReport r = rotation_eigencheck(F, 2, D, {{1, 0}, {0, 1}});
      auto lam = lambda_approx(F, 2, D);
      long long pairs = static_cast<long long>(lam.size()) *
                        (static_cast<long long>(lam.size()) - 1) / 2;
      if (r.characters != static_cast<int>(lam.size())) ok = false;
      if (r.orthogonal_pairs != pairs) ok = false;
      if (r.relation_checks != r.group_order * r.characters * 2) ok = false;
      detail += fmt("D=%lld:%d chars ", D, r.characters);
    }
    report(8, "translation eigenrelations verified exactly", ok, detail);
  } catch (const Error& e) {
    report(8, "translation eigenrelations verified exactly", false, e.what());
  }

  // 9. sampled factorization oracle against the sieve
  try {
    bool ok = true;
    std::string detail;
    struct Probe {
      const NumberField* K;
      int k;
      long long radius;
      const char* name;
    };
    const Probe probes[] = {{&F, 2, 60, "Z[i]"}, {&Q, 3, 1000, "Z"}, {&R2, 2, 80, "Z[s]"}};
    for (const Probe& pr : probes) {
      SieveGrid g = sieve(*pr.K, pr.k, pr.radius);
      CrosscheckReport rep = crosscheck_sample(g, 500, 4242);
      if (rep.samples != 500 || rep.mismatches != 0) ok = false;
      detail += fmt("%s:%d/%d ", pr.name, rep.samples - rep.mismatches, rep.samples);
    }
    report(9, "sampled factorizations match the sieve", ok, detail);
  } catch (const Error& e) {
    report(9, "sampled factorizations match the sieve", false, e.what());
  }

  // 10. character-sum formula against the Euler product
  try {
    bool ok = true;
    long double worst = 0.0L;
    const std::vector<Elem> cases = {zero_elem(F), elem_ll(F, {1, 0}),
                                     elem_ll(F, {2, 0}), elem_ll(F, {1, 1})};
    for (const Elem& a : cases) {
      TruncatedValue h = hall_formula_r2(F, {a}, 2, 100000, 10000);
      CorrelationSpec spec{2, {a}, std::nullopt};
      AnalyticResult c = analytic_correlation(F, spec, 100000);
      long double gap = fabsl(h.value - c.tv.value);
      worst = std::max(worst, gap);
      if (gap > 1e-3L) ok = false;
    }
    report(10, "character-sum series matches pair correlations", ok,
           fmt("worst gap %.2Le over 4 shifts", worst));
  } catch (const Error& e) {
    report(10, "character-sum series matches pair correlations", false, e.what());
  }

  // 11. constrained main term against brute-force counts
  try {
    bool ok = true;
    std::string detail;
    CorrelationSpec even{2, {}, principal(elem_ll(Q, {2}))};
    AnalyticResult s = analytic_S(Q, even, 1000000);
    auto sf = squarefree_table(1000104);
    long long cnt = 0;
    for (long long n = 1; n <= 1000000; ++n)
      if (n % 2 == 0 && sf[static_cast<size_t>(n)]) ++cnt;
    long double brute = static_cast<long double>(cnt) / 1000000.0L;
    if (fabsl(s.tv.value - brute) > 1e-3L) ok = false;
    detail = fmt("S=%.6Lf brute=%.6Lf", s.tv.value, brute);

    struct Spec {
      long long b;
      std::vector<long long> shifts;
    };
    const Spec list[] = {{4, {}}, {9, {}}, {8, {}}, {12, {}}, {2, {2}},
                         {2, {}}, {3, {}}, {6, {}}, {2, {1}}, {2, {4}}};
    int zeros = 0;
    for (const Spec& sp : list) {
      CorrelationSpec cs{2, {}, principal(elem_ll(Q, {sp.b}))};
      for (long long a : sp.shifts) cs.shifts.push_back(elem_ll(Q, {a}));
      AnalyticResult r = analytic_S(Q, cs, 10000);
      long long hits = 0;
      for (long long n = 1; n <= 100000; ++n) {
        if (n % sp.b != 0) continue;
        bool all = sf[static_cast<size_t>(n)];
        for (long long a : sp.shifts) all = all && sf[static_cast<size_t>(n + a)];
        if (all) ++hits;
      }
      if (r.exact_zero != (hits == 0)) ok = false;
      if (r.exact_zero) ++zeros;
    }
    if (zeros != 5) ok = false;
    detail += fmt(", %d/10 specs vanish exactly", zeros);
    report(11, "constrained density matches brute-force counts", ok, detail);
  } catch (const Error& e) {
    report(11, "constrained density matches brute-force counts", false, e.what());
  }

  std::printf("%s: %d/11 criteria passed\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              11 - failures);
  return failures == 0 ? 0 : 1;
}
