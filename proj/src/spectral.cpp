#include "kfree/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>

namespace kfree {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;
constexpr long double kPerFactorRounding = 1e-12L;

Int lcm_int(const Int& a, const Int& b) { return a / gcd(a, b) * b; }

// common denominator of a phase vector
Int common_den(const std::vector<Rat>& y) {
  Int q = 1;
  for (const Rat& r : y) q = lcm_int(q, denominator(r));
  return q;
}

std::vector<Rat> add_mod1(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = frac_part(a[i] + b[i]);
  return r;
}

long double powk_ld(long long n, int k) {
  return powl(static_cast<long double>(n), static_cast<long double>(k));
}

Int powk_int(const Int& n, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= n;
  return r;
}

long long kth_root_floor_ll(long long v, int k) {
  if (v <= 0) return 0;
  long long r = static_cast<long long>(std::pow(static_cast<double>(v), 1.0 / k)) + 2;
  while (r > 0 && powk_int(Int(r), k) > v) --r;
  return r;
}

std::vector<std::pair<PrimeIdeal, int>> squarefree_factors(const Ideal& d) {
  auto fac = factor_ideal(d);
  for (auto& [p, v] : fac)
    if (v != 1) throw Error(Errc::NotSquareFree, "level ideal is not square-free");
  return fac;
}

// product over prime norms <= cutoff of (1 - m/n^k), in log space, plus the
// count of factors used
long double all_prime_log(const NumberField& F, int k, int m, long long cutoff,
                          long long& factors) {
  long double acc = 0.0L;
  factors = 0;
  for (auto& [n, c] : prime_norms_upto(F, cutoff)) {
    acc += c * log1pl(-static_cast<long double>(m) / powk_ld(n, k));
    factors += c;
  }
  return acc;
}

long double tail_log(int d, long long cutoff, int k, int m) {
  long long t = std::max(cutoff, 1LL);
  long double x_max = static_cast<long double>(m) / powk_ld(t + 1, k);
  if (x_max >= 1.0L) return HUGE_VALL;
  return (1.0L / (1.0L - x_max)) * m * d * powl(static_cast<long double>(t), 1.0L - k) /
         (k - 1);
}

}  // namespace

bool operator==(const Character& a, const Character& b) {
  return a.level == b.level && a.phase == b.phase;
}

Rat char_phase(const Character& chi, const Elem& v) {
  Rat s = 0;
  for (size_t i = 0; i < chi.phase.size(); ++i)
    s += chi.phase[i] * Rat(v.c[static_cast<int>(i)]);
  return frac_part(s);
}

std::vector<std::vector<Rat>> annihilator_points(const Ideal& a) {
  const int d = a.fld->degree;
  const IMat& m = a.basis;
  std::vector<std::vector<Rat>> out;
  out.reserve(static_cast<size_t>(to_ll(a.norm)));
  std::vector<Int> w(d, 0);
  std::vector<Rat> y(d);
  while (true) {
    // solve M^T y = w by forward substitution (M^T is lower triangular)
    for (int i = 0; i < d; ++i) {
      Rat s(w[i]);
      for (int j = 0; j < i; ++j) s -= Rat(m(j, i)) * y[j];
      y[i] = s / Rat(m(i, i));
    }
    std::vector<Rat> p(d);
    for (int i = 0; i < d; ++i) p[i] = frac_part(y[i]);
    out.push_back(std::move(p));
    int i = d - 1;
    while (i >= 0) {
      w[i] += 1;
      if (w[i] < m(i, i)) break;
      w[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

bool annihilates(const std::vector<Rat>& y, const Ideal& a) {
  const int d = a.fld->degree;
  for (int j = 0; j < d; ++j) {
    Rat s = 0;
    for (int i = 0; i < d; ++i) s += y[i] * Rat(a.basis(i, j));
    if (denominator(s) != 1) return false;
  }
  return true;
}

Ideal reduced_level(const NumberField& F, const std::vector<Rat>& y,
                    const Ideal& candidate, int k) {
  auto fac = squarefree_factors(candidate);
  Ideal kept = unit_ideal(F);
  for (size_t i = 0; i < fac.size(); ++i) {
    Ideal others = unit_ideal(F);
    for (size_t j = 0; j < fac.size(); ++j)
      if (j != i) others = product(others, fac[j].first.ideal);
    if (!annihilates(y, power(others, k))) kept = product(kept, fac[i].first.ideal);
  }
  return kept;
}

SpectralWeights weights(const Ideal& d, int k, long long cutoff) {
  const NumberField& F = *d.fld;
  auto fac = squarefree_factors(d);
  SpectralWeights w;
  w.mu = fac.size() % 2 == 0 ? 1 : -1;

  long long factors = 0;
  long double logsig = all_prime_log(F, k, 2, cutoff, factors);
  logsig -= static_cast<long double>(k) * logl(static_cast<long double>(to_ll(d.norm)));
  for (auto& [p, v] : fac) {
    long long n = to_ll(p.ideal.norm);
    logsig -= log1pl(-2.0L / powk_ld(n, k));  // p | d is excluded from the product
    --factors;
  }
  w.sigma.value = expl(logsig);
  w.sigma.cutoff = cutoff;
  w.sigma.tail_bound = expm1l(tail_log(F.degree, cutoff, k, 2)) + kPerFactorRounding * factors;

  TruncatedValue zeta = dedekind_zeta(F, k, cutoff);
  long double gval = static_cast<long double>(w.mu) / zeta.value;
  for (auto& [p, v] : fac) gval /= powk_ld(to_ll(p.ideal.norm), k) - 1.0L;
  w.g.value = gval;
  w.g.cutoff = cutoff;
  w.g.tail_bound = zeta.tail_bound / (1.0L - zeta.tail_bound) +
                   kPerFactorRounding * static_cast<long long>(fac.size());
  return w;
}

TruncatedValue sigma_via_cross(const Ideal& d, int k, long long cutoff) {
  const NumberField& F = *d.fld;
  auto fac = squarefree_factors(d);
  SpectralWeights base = weights(unit_ideal(F), k, cutoff);
  TruncatedValue tv = base.sigma;
  for (auto& [p, v] : fac) tv.value /= powk_ld(to_ll(p.ideal.norm), k) - 2.0L;
  tv.tail_bound += kPerFactorRounding * static_cast<long long>(fac.size());
  return tv;
}

TruncatedValue c2_from_atoms(const Elem& a, int k, long long cutoff) {
  const NumberField& F = *a.fld;
  long long factors = 0;
  long double base_log = all_prime_log(F, k, 2, cutoff, factors);
  long double tb_base = expm1l(tail_log(F.degree, cutoff, k, 2)) + kPerFactorRounding * factors;

  // sigma_d = base / (N(d^k) * prod_{p | d} (1 - 2/N(p^k))), evaluated per level
  auto sigma_of = [&](const std::vector<long long>& prime_norms) {
    long double logs = base_log;
    for (long long n : prime_norms) {
      logs -= log1pl(-2.0L / powk_ld(n, k));
      logs -= static_cast<long double>(k) * logl(static_cast<long double>(n));
    }
    return expl(logs);
  };

  TruncatedValue tv;
  tv.cutoff = cutoff;
  if (!a.is_zero()) {
    // finitely many levels: subsets of the primes whose k-th power contains a
    std::vector<long long> crit;
    for (auto& [p, v] : factor_ideal(principal(a)))
      if (v >= k) crit.push_back(to_ll(p.ideal.norm));
    long double total = 0.0L;
    for (size_t mask = 0; mask < (size_t(1) << crit.size()); ++mask) {
      std::vector<long long> sel;
      for (size_t i = 0; i < crit.size(); ++i)
        if (mask & (size_t(1) << i)) sel.push_back(crit[i]);
      total += sigma_of(sel);
    }
    tv.value = total;
    tv.tail_bound = tb_base + kPerFactorRounding * static_cast<long long>(1 << crit.size());
    return tv;
  }

  // a = 0: every square-free level contributes; enumerate N(d^k) <= cutoff
  long long level_bound = kth_root_floor_ll(cutoff, k);
  auto primes = primes_by_norm(F, level_bound);
  long double total = 0.0L;
  std::vector<long long> stack;
  auto rec = [&](auto&& self, size_t start, long long norm_prod) -> void {
    total += sigma_of(stack);
    for (size_t i = start; i < primes.size(); ++i) {
      long long n = to_ll(primes[i].ideal.norm);
      if (norm_prod > level_bound / n) break;
      stack.push_back(n);
      self(self, i + 1, norm_prod * n);
      stack.pop_back();
    }
  };
  rec(rec, 0, 1);
  tv.value = total;
  // sum_{N(d) > C} sigma_d <= sum_{n > C} (#ideals of norm n) n^-k, bounded by
  // zeta_K((k+1)/2) <= zeta((k+1)/2)^deg via C^((1-k)/2)
  long double s0 = 0.5L * (k + 1);
  long double zb = powl(std::riemann_zetal(s0), static_cast<long double>(F.degree));
  long double abs_tail = zb * powl(static_cast<long double>(std::max(level_bound, 1LL)),
                                   0.5L * (1 - k));
  tv.tail_bound = tb_base + abs_tail / tv.value;
  return tv;
}

std::vector<Character> lambda_approx(const NumberField& F, int k,
                                     long long max_level_norm) {
  long long level_bound = kth_root_floor_ll(max_level_norm, k);
  auto primes = primes_by_norm(F, level_bound);
  std::vector<Character> out;

  // nonzero annihilator points of p^k per prime, fixed enumeration order
  std::vector<std::vector<std::vector<Rat>>> nonzero(primes.size());
  for (size_t i = 0; i < primes.size(); ++i) {
    for (auto& y : annihilator_points(power(primes[i].ideal, k))) {
      bool zero = std::all_of(y.begin(), y.end(),
                              [](const Rat& r) { return r == 0; });
      if (!zero) nonzero[i].push_back(y);
    }
  }

  std::vector<size_t> chosen;
  auto emit_level = [&]() {
    Ideal level = unit_ideal(F);
    for (size_t i : chosen) level = product(level, primes[i].ideal);
    // sums with one nonzero component per chosen prime: exactly the reduced class
    std::vector<std::vector<Rat>> sums{std::vector<Rat>(F.degree, Rat(0))};
    for (size_t i : chosen) {
      std::vector<std::vector<Rat>> next;
      next.reserve(sums.size() * nonzero[i].size());
      for (const auto& s : sums)
        for (const auto& y : nonzero[i]) next.push_back(add_mod1(s, y));
      sums = std::move(next);
    }
    for (auto& y : sums) out.push_back(Character{level, std::move(y)});
  };
  auto rec = [&](auto&& self, size_t start, long long norm_prod) -> void {
    emit_level();
    for (size_t i = start; i < primes.size(); ++i) {
      long long n = to_ll(primes[i].ideal.norm);
      if (norm_prod > level_bound / n) break;
      chosen.push_back(i);
      self(self, i + 1, norm_prod * n);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 1);

  std::sort(out.begin(), out.end(), [](const Character& a, const Character& b) {
    if (a.level.norm != b.level.norm) return a.level.norm < b.level.norm;
    if (!(a.level == b.level)) return a.level < b.level;
    return a.phase < b.phase;
  });
  return out;
}

std::complex<long double> empirical_theta(const Character& chi, const SieveGrid& grid,
                                          long long radius) {
  if (radius > grid.radius)
    throw Error(Errc::RadiusTooSmall, "averaging radius exceeds the grid radius");
  const int d = grid.fld->degree;
  Int q = common_den(chi.phase);
  long long ql = to_ll(q);
  std::vector<long long> nums(d);
  for (int i = 0; i < d; ++i) nums[i] = to_ll(numerator(chi.phase[i] * Rat(q)));

  std::vector<unsigned long long> bucket(static_cast<size_t>(ql), 0);
  for_each_ball_point(d, radius, [&](const std::vector<long long>& a) {
    if (!*grid.bit_of(a)) return;
    long long n = 0;  // phase numerator of chi(-a)
    for (int i = 0; i < d; ++i) n -= nums[i] % ql * (a[i] % ql);
    n = ((n % ql) + ql) % ql;
    ++bucket[static_cast<size_t>(n)];
  });

  std::complex<long double> acc(0.0L, 0.0L);
  for (long long n = 0; n < ql; ++n) {
    if (!bucket[static_cast<size_t>(n)]) continue;
    long double ang = kTwoPi * n / ql;
    acc += static_cast<long double>(bucket[static_cast<size_t>(n)]) *
           std::complex<long double>(cosl(ang), sinl(ang));
  }
  return acc / static_cast<long double>(ball_count(d, radius));
}

namespace {

// per-point product of factor corrections for primes whose k-th power
// contains the point; paired with the base product this gives c2 pointwise
std::vector<long double> membership_factors(const NumberField& F, const BallIndex& idx,
                                            int k, const Int& max_norm,
                                            int tuple_size) {
  std::vector<long double> factor(idx.count(), 1.0L);
  long long prime_bound = 0;
  {
    Int b = max_norm;
    prime_bound = kth_root_floor_ll(to_ll(b < 1 ? Int(1) : b), k);
  }
  for (const PrimeIdeal& p : primes_by_norm(F, prime_bound)) {
    long double nk = powk_ld(to_ll(p.ideal.norm), k);
    if (nk > static_cast<long double>(max_norm)) continue;
    long double m = static_cast<long double>(tuple_size);
    long double ratio = (1.0L - (m - 1.0L) / nk) / (1.0L - m / nk);
    Ideal pk = power(p.ideal, k);
    for (const auto& pt : lattice_points_in_ball(pk, idx.radius)) {
      auto i = idx.index_of(pt);
      factor[*i] *= ratio;
    }
  }
  return factor;
}

}  // namespace

std::complex<long double> weighted_c2_average(const NumberField& F, const Character& chi,
                                              int k, long long x, long long cutoff) {
  BallIndex idx = BallIndex::build(F.degree, x);
  Int max_norm = 0;
  std::vector<Int> cv(F.degree);
  std::vector<Int> norms(idx.count());
  for (size_t i = 0; i < idx.count(); ++i) {
    for (int j = 0; j < F.degree; ++j) cv[j] = idx.points[i][j];
    norms[i] = abs(elem_norm(elem(F, cv)));
    if (norms[i] > max_norm) max_norm = norms[i];
  }
  long long factors = 0;
  long double base = expl(all_prime_log(F, k, 2, cutoff, factors));
  TruncatedValue zeta = dedekind_zeta(F, k, cutoff);
  std::vector<long double> corr = membership_factors(F, idx, k, max_norm, 2);

  Int q = common_den(chi.phase);
  long long ql = to_ll(q);
  std::vector<long long> nums(F.degree);
  for (int i = 0; i < F.degree; ++i) nums[i] = to_ll(numerator(chi.phase[i] * Rat(q)));
  std::vector<long double> bucket(static_cast<size_t>(ql), 0.0L);
  for (size_t i = 0; i < idx.count(); ++i) {
    long double c2;
    if (norms[i] == 0)
      c2 = 1.0L / zeta.value;  // c2(0) = density
    else
      c2 = base * corr[i];
    long long n = 0;
    for (int j = 0; j < F.degree; ++j) n += nums[j] % ql * (idx.points[i][j] % ql);
    n = ((n % ql) + ql) % ql;
    bucket[static_cast<size_t>(n)] += c2;
  }
  std::complex<long double> acc(0.0L, 0.0L);
  for (long long n = 0; n < ql; ++n) {
    long double ang = kTwoPi * n / ql;
    acc += bucket[static_cast<size_t>(n)] * std::complex<long double>(cosl(ang), sinl(ang));
  }
  return acc / static_cast<long double>(ball_count(F.degree, x));
}

std::complex<long double> weighted_c3_average(const NumberField& F, const Character& chi1,
                                              const Character& chi2, int k, long long x,
                                              long long cutoff) {
  BallIndex idx = BallIndex::build(F.degree, x);
  BallIndex idx2 = BallIndex::build(F.degree, 2 * x);
  Int max_norm = 0;
  std::vector<Int> cv(F.degree);
  for (size_t i = 0; i < idx2.count(); ++i) {
    for (int j = 0; j < F.degree; ++j) cv[j] = idx2.points[i][j];
    Int n = abs(elem_norm(elem(F, cv)));
    if (n > max_norm) max_norm = n;
  }

  long long prime_bound = kth_root_floor_ll(to_ll(max_norm < 1 ? Int(1) : max_norm), k);
  auto primes = primes_by_norm(F, prime_bound);
  std::vector<PrimeIdeal> used;
  for (auto& p : primes)
    if (powk_int(p.ideal.norm, k) <= max_norm) used.push_back(p);
  if (used.size() > 64)
    throw Error(Errc::UnsupportedDimension, "pair average limited to 64 primes");

  // membership masks over the radius-2x ball (differences live there too)
  std::vector<uint64_t> mask(idx2.count(), 0);
  std::vector<std::array<long double, 4>> ratio(used.size());
  long double log_a3 = 0.0L;
  {
    long long factors = 0;
    log_a3 = all_prime_log(F, k, 3, cutoff, factors);
  }
  for (size_t pi = 0; pi < used.size(); ++pi) {
    long double nk = powk_ld(to_ll(used[pi].ideal.norm), k);
    long double generic = 1.0L - 3.0L / nk;
    ratio[pi] = {1.0L, (1.0L - 2.0L / nk) / generic, 0.0L, (1.0L - 1.0L / nk) / generic};
    Ideal pk = power(used[pi].ideal, k);
    for (const auto& pt : lattice_points_in_ball(pk, 2 * x)) {
      auto i = idx2.index_of(pt);
      mask[*i] |= uint64_t(1) << pi;
    }
  }
  long double a3 = expl(log_a3);

  // phase numerators over the common denominator q1*q2
  long long q1 = to_ll(common_den(chi1.phase));
  long long q2 = to_ll(common_den(chi2.phase));
  long long Q = q1 * q2;
  std::vector<long long> n1(idx.count()), n2(idx.count());
  {
    std::vector<long long> a(F.degree), b(F.degree);
    for (int i = 0; i < F.degree; ++i) {
      a[i] = to_ll(numerator(chi1.phase[i] * Rat(q1)));
      b[i] = to_ll(numerator(chi2.phase[i] * Rat(q2)));
    }
    for (size_t i = 0; i < idx.count(); ++i) {
      long long s1 = 0, s2 = 0;
      for (int j = 0; j < F.degree; ++j) {
        s1 += a[j] % q1 * (idx.points[i][j] % q1);
        s2 += b[j] % q2 * (idx.points[i][j] % q2);
      }
      n1[i] = ((s1 % q1) + q1) % q1;
      n2[i] = ((s2 % q2) + q2) % q2;
    }
  }

  std::vector<long double> bucket(static_cast<size_t>(Q), 0.0L);
  std::vector<long long> diff(F.degree);
  // masks of b1 and b2 inside the small ball, looked up through the big index
  std::vector<uint64_t> small_mask(idx.count());
  for (size_t i = 0; i < idx.count(); ++i) {
    std::vector<long long> c(idx.points[i].begin(), idx.points[i].end());
    small_mask[i] = mask[*idx2.index_of(c)];
  }
  for (size_t i = 0; i < idx.count(); ++i) {
    for (size_t j = 0; j < idx.count(); ++j) {
      for (int t = 0; t < F.degree; ++t)
        diff[t] = static_cast<long long>(idx.points[i][t]) - idx.points[j][t];
      uint64_t m1 = small_mask[i], m2 = small_mask[j];
      uint64_t m12 = mask[*idx2.index_of(diff)];
      uint64_t u = m1 | m2 | m12;
      long double val = a3;
      while (u) {
        int p = __builtin_ctzll(u);
        u &= u - 1;
        int cnt = static_cast<int>((m1 >> p) & 1) + static_cast<int>((m2 >> p) & 1) +
                  static_cast<int>((m12 >> p) & 1);
        val *= ratio[static_cast<size_t>(p)][static_cast<size_t>(cnt)];
      }
      long long n = (n1[i] * q2 + n2[j] * q1) % Q;
      bucket[static_cast<size_t>(n)] += val;
    }
  }
  std::complex<long double> acc(0.0L, 0.0L);
  for (long long n = 0; n < Q; ++n) {
    if (bucket[static_cast<size_t>(n)] == 0.0L) continue;
    long double ang = kTwoPi * n / Q;
    acc += bucket[static_cast<size_t>(n)] * std::complex<long double>(cosl(ang), sinl(ang));
  }
  long double balls = static_cast<long double>(ball_count(F.degree, x));
  return acc / (balls * balls);
}

TruncatedValue hall_formula_r2(const NumberField& F, const std::vector<Elem>& shifts,
                               int k, long long cutoff, long long level_norm_bound) {
  const int r = static_cast<int>(shifts.size());
  if (r > 2) throw Error(Errc::BadLiteral, "character-sum formula implemented for r <= 2");
  TruncatedValue zeta = dedekind_zeta(F, k, cutoff);

  struct PrimeData {
    long long norm;
    long double nk;       // N(p^k)
    bool in1, in2, in12;  // a1, a2, a1-a2 in p^k
  };
  std::vector<PrimeData> pr;
  for (const PrimeIdeal& p : primes_by_norm(F, level_norm_bound)) {
    PrimeData d;
    d.norm = to_ll(p.ideal.norm);
    d.nk = powk_ld(d.norm, k);
    Ideal pk = power(p.ideal, k);
    d.in1 = r >= 1 && contains(pk, shifts[0]);
    d.in2 = r >= 2 && contains(pk, shifts[1]);
    d.in12 = r >= 2 && contains(pk, shifts[0] - shifts[1]);
    pr.push_back(d);
  }

  TruncatedValue tv;
  tv.cutoff = cutoff;
  if (r == 0) {
    // only the trivial character of level O contributes: c1 = g(O) = 1/zeta
    tv.value = 1.0L / zeta.value;
    tv.tail_bound = zeta.tail_bound / (1.0L - zeta.tail_bound);
    return tv;
  }

  long double inv_zeta = 1.0L / zeta.value;
  if (r == 1) {
    // levels collapse to pairs d0 = d1 = d; per-prime factor
    // (N[a in p^k] - 1) / (N(p^k) - 1)^2
    long double total = 0.0L, abs_total = 0.0L, abs_all = 1.0L;
    auto rec = [&](auto&& self, size_t start, long long norm_prod, long double term,
                   long double abs_term) -> void {
      total += term;
      abs_total += abs_term;
      for (size_t i = start; i < pr.size(); ++i) {
        if (norm_prod > level_norm_bound / pr[i].norm) break;
        long double den = (pr[i].nk - 1.0L) * (pr[i].nk - 1.0L);
        long double num = pr[i].in1 ? pr[i].nk - 1.0L : -1.0L;
        self(self, i + 1, norm_prod * pr[i].norm, term * num / den,
             abs_term * fabsl(num) / den);
      }
    };
    rec(rec, 0, 1, 1.0L, 1.0L);
    for (const auto& p : pr) {
      long double den = (p.nk - 1.0L) * (p.nk - 1.0L);
      long double num = p.in1 ? p.nk - 1.0L : -1.0L;
      abs_all *= 1.0L + fabsl(num) / den;
    }
    tv.value = inv_zeta * inv_zeta * total;
    long double abs_tail = inv_zeta * inv_zeta * (abs_all - abs_total);
    tv.tail_bound = fabsl(abs_tail / tv.value) +
                    2.0L * zeta.tail_bound / (1.0L - zeta.tail_bound) +
                    kPerFactorRounding * static_cast<long double>(pr.size());
    return tv;
  }

  // r = 2: per prime the level-support pattern (d0,d1,d2) is one of
  // 000, 011, 101, 110, 111; closed-form local sums over reduced characters
  auto locals = [&](const PrimeData& p, long double w[5], long double aw[5]) {
    long double n = p.nk;
    long double c1 = p.in1 ? n - 1.0L : -1.0L;
    long double c2 = p.in2 ? n - 1.0L : -1.0L;
    long double c12 = p.in12 ? n - 1.0L : -1.0L;
    long double d1 = n - 1.0L;
    w[0] = 1.0L;
    w[1] = c12 / (d1 * d1);            // 011: chi2 = chi1^-1 on this prime
    w[2] = c2 / (d1 * d1);             // 101
    w[3] = c1 / (d1 * d1);             // 110
    w[4] = -(c1 * c2 - c12) / (d1 * d1 * d1);  // 111: mu flips the odd pattern
    for (int i = 0; i < 5; ++i) aw[i] = fabsl(w[i]);
  };

  // depth-first over primes with a pattern per prime; three norm budgets
  long double total = 0.0L, abs_total = 0.0L, abs_all = 1.0L;
  auto rec2 = [&](auto&& self, size_t i, long long n0, long long n1v, long long n2v,
                  long double term, long double abs_term) -> void {
    if (i == pr.size()) {
      total += term;
      abs_total += abs_term;
      return;
    }
    long double w[5], aw[5];
    locals(pr[i], w, aw);
    static constexpr int kD0[5] = {0, 0, 1, 1, 1};
    static constexpr int kD1[5] = {0, 1, 0, 1, 1};
    static constexpr int kD2[5] = {0, 1, 1, 0, 1};
    for (int pat = 0; pat < 5; ++pat) {
      long long m0 = n0, m1 = n1v, m2 = n2v;
      if (kD0[pat]) { if (m0 > level_norm_bound / pr[i].norm) continue; m0 *= pr[i].norm; }
      if (kD1[pat]) { if (m1 > level_norm_bound / pr[i].norm) continue; m1 *= pr[i].norm; }
      if (kD2[pat]) { if (m2 > level_norm_bound / pr[i].norm) continue; m2 *= pr[i].norm; }
      self(self, i + 1, m0, m1, m2, term * w[pat], abs_term * aw[pat]);
    }
  };
  rec2(rec2, 0, 1, 1, 1, 1.0L, 1.0L);
  for (const auto& p : pr) {
    long double w[5], aw[5];
    locals(p, w, aw);
    abs_all *= aw[0] + aw[1] + aw[2] + aw[3] + aw[4];
  }
  long double z3 = inv_zeta * inv_zeta * inv_zeta;
  tv.value = z3 * total;
  long double abs_tail = z3 * (abs_all - abs_total);
  tv.tail_bound = fabsl(abs_tail / tv.value) +
                  3.0L * zeta.tail_bound / (1.0L - zeta.tail_bound) +
                  kPerFactorRounding * static_cast<long double>(pr.size());
  return tv;
}

ParsevalResult parseval_check(const NumberField& F, int k, long long D) {
  // knapsack over prime norms: A[m] = sum over square-free d of norm m of
  // prod 1/(N(p)^k - 1); zeta * g^2(d) * #class collapses to that summand / zeta
  std::vector<long double> A(static_cast<size_t>(D) + 1, 0.0L);
  A[1] = 1.0L;
  for (auto& [n, c] : prime_norms_upto(F, D)) {
    long double wgt = 1.0L / (powk_ld(n, k) - 1.0L);
    // up to c primes of this norm; subsets of size j carry binomial(c, j)
    for (long long m = D / n; m >= 1; --m) {
      if (A[static_cast<size_t>(m)] == 0.0L) continue;
      long double binom = 1.0L, wpow = 1.0L;
      long long nm = m;
      for (int j = 1; j <= c; ++j) {
        if (nm > D / n) break;
        nm *= n;
        binom = binom * (c - j + 1) / j;
        wpow *= wgt;
        A[static_cast<size_t>(nm)] += A[static_cast<size_t>(m)] * binom * wpow;
      }
    }
  }
  TruncatedValue zeta = dedekind_zeta(F, k, std::max(D, 1000000LL));
  long double inv_zeta = 1.0L / zeta.value;
  ParsevalResult res;
  long double run = 0.0L;
  for (long long m = 1; m <= D; ++m) {
    if (A[static_cast<size_t>(m)] == 0.0L) continue;
    run += inv_zeta * A[static_cast<size_t>(m)];
    res.partial.emplace_back(m, run);
  }
  res.total.value = run;
  res.total.cutoff = D;
  res.total.tail_bound = (1.0L - run) / run;  // limit is exactly 1
  return res;
}

int multiplicativity_sign(const Character& chi1, const Character& chi2, int k) {
  const NumberField& F = *chi1.level.fld;
  std::vector<Rat> y = add_mod1(chi1.phase, chi2.phase);
  // candidate: product of the union of the two prime supports
  auto f1 = squarefree_factors(chi1.level);
  auto f2 = squarefree_factors(chi2.level);
  Ideal candidate = chi1.level;
  for (auto& [p, v] : f2) {
    bool present = false;
    for (auto& [q, w] : f1)
      if (q.ideal == p.ideal) { present = true; break; }
    if (!present) candidate = product(candidate, p.ideal);
  }
  Ideal d = reduced_level(F, y, candidate, k);
  return mobius_mu_k(chi1.level, 1) * mobius_mu_k(chi2.level, 1) * mobius_mu_k(d, 1);
}

RotationReport rotation_eigencheck(const NumberField& F, int k, long long D,
                                   const std::vector<std::vector<long long>>& translations) {
  RotationReport rep{};
  long long level_bound = kth_root_floor_ll(D, k);
  auto primes = primes_by_norm(F, level_bound);
  const size_t np = primes.size();
  const int d = F.degree;

  // residue data per prime: canonical representatives and O(1) rep -> index
  std::vector<Ideal> pks;
  std::vector<std::vector<Elem>> reps(np);
  std::vector<long long> sizes(np);
  rep.group_order = 1;
  for (size_t i = 0; i < np; ++i) {
    pks.push_back(power(primes[i].ideal, k));
    reps[i] = residues(pks[i]);
    sizes[i] = static_cast<long long>(reps[i].size());
    rep.group_order *= sizes[i];
  }
  auto rep_index = [&](size_t pi, const Elem& e) {
    // mixed-radix digits over the diagonal, same order residues() emits
    long long idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * to_ll(pks[pi].basis(i, i)) + to_ll(e.c[i]);
    return idx;
  };

  // characters with per-prime phase components, same canonical order as
  // lambda_approx: subsets of primes, one nonzero annihilator point each
  struct FullChar {
    std::vector<size_t> support;
    std::vector<std::vector<Rat>> comps;  // one phase vector per supported prime
    std::vector<Rat> phase;               // sum mod 1
  };
  std::vector<std::vector<std::vector<Rat>>> nonzero(np);
  for (size_t i = 0; i < np; ++i)
    for (auto& y : annihilator_points(pks[i])) {
      bool zero = std::all_of(y.begin(), y.end(), [](const Rat& r) { return r == 0; });
      if (!zero) nonzero[i].push_back(y);
    }
  std::vector<FullChar> chars;
  std::vector<size_t> chosen;
  auto emit = [&]() {
    std::vector<FullChar> partial{FullChar{{}, {}, std::vector<Rat>(d, Rat(0))}};
    for (size_t i : chosen) {
      std::vector<FullChar> next;
      for (const auto& fc : partial)
        for (const auto& y : nonzero[i]) {
          FullChar n = fc;
          n.support.push_back(i);
          n.comps.push_back(y);
          n.phase = add_mod1(n.phase, y);
          next.push_back(std::move(n));
        }
      partial = std::move(next);
    }
    for (auto& fc : partial) chars.push_back(std::move(fc));
  };
  auto rec = [&](auto&& self, size_t start, long long norm_prod) -> void {
    emit();
    for (size_t i = start; i < np; ++i) {
      long long n = to_ll(primes[i].ideal.norm);
      if (norm_prod > level_bound / n) break;
      chosen.push_back(i);
      self(self, i + 1, norm_prod * n);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 1);
  rep.characters = static_cast<int>(chars.size());

  // common denominator Q; integer numerator tables per character per prime
  Int q_all = 1;
  for (const auto& fc : chars)
    for (const auto& y : fc.comps) q_all = lcm_int(q_all, common_den(y));
  const long long Q = std::max(to_ll(q_all), 1LL);

  auto scaled_num = [&](const std::vector<Rat>& y, const Elem& v) {
    Rat s = 0;
    for (int i = 0; i < d; ++i) s += y[static_cast<size_t>(i)] * Rat(v.c[i]);
    return to_ll(numerator(frac_part(s) * Rat(Q)));  // in [0, Q)
  };

  std::vector<Elem> tr_elems;
  std::vector<Int> cv(d);
  for (const auto& t : translations) {
    for (int i = 0; i < d; ++i) cv[i] = t[static_cast<size_t>(i)];
    tr_elems.push_back(elem(F, cv));
  }

  // per-prime translation permutations: index -> index of rep + v
  std::vector<std::vector<std::vector<long long>>> perm(translations.size());
  for (size_t t = 0; t < translations.size(); ++t) {
    perm[t].resize(np);
    for (size_t pi = 0; pi < np; ++pi) {
      perm[t][pi].resize(static_cast<size_t>(sizes[pi]));
      for (long long ri = 0; ri < sizes[pi]; ++ri)
        perm[t][pi][static_cast<size_t>(ri)] =
            rep_index(pi, reduce_mod(reps[pi][static_cast<size_t>(ri)] + tr_elems[t], pks[pi]));
    }
  }

  // numerator tables: phase of each character component at each residue
  std::vector<std::vector<std::vector<long long>>> table(chars.size());
  for (size_t ci = 0; ci < chars.size(); ++ci) {
    const FullChar& fc = chars[ci];
    table[ci].resize(fc.support.size());
    for (size_t s = 0; s < fc.support.size(); ++s) {
      size_t pi = fc.support[s];
      table[ci][s].resize(static_cast<size_t>(sizes[pi]));
      for (long long ri = 0; ri < sizes[pi]; ++ri)
        table[ci][s][static_cast<size_t>(ri)] =
            scaled_num(fc.comps[s], reps[pi][static_cast<size_t>(ri)]);
    }
  }

  // eigenrelation on the whole truncation, exact integer phases mod Q
  for (size_t ci = 0; ci < chars.size(); ++ci) {
    const FullChar& fc = chars[ci];
    for (size_t t = 0; t < translations.size(); ++t) {
      long long eig = 0;  // numerator of chi(iota(v))
      for (size_t s = 0; s < fc.support.size(); ++s)
        eig = (eig + scaled_num(fc.comps[s], tr_elems[t])) % Q;
      if (t == 0) rep.eigenvalue_phases.push_back(Rat(eig, Q));

      // odometer over the whole group restricted to the character's support:
      // coordinates off the support contribute no phase and cancel exactly
      long long off_support = rep.group_order;
      std::vector<long long> digit(fc.support.size(), 0);
      long long base = 0, shifted = 0;
      for (size_t s = 0; s < fc.support.size(); ++s) {
        off_support /= sizes[fc.support[s]];
        shifted = (shifted + table[ci][s][static_cast<size_t>(perm[t][fc.support[s]][0])]) % Q;
      }
      while (true) {
        if ((shifted - base - eig) % Q != 0)
          throw Error(Errc::EigenrelationViolated,
                      "translation eigenrelation failed on a truncation point");
        rep.relation_checks += off_support;
        size_t s = 0;
        for (; s < fc.support.size(); ++s) {
          size_t pi = fc.support[s];
          base = (base - table[ci][s][static_cast<size_t>(digit[s])] % Q + Q) % Q;
          shifted = (shifted -
                     table[ci][s][static_cast<size_t>(perm[t][pi][static_cast<size_t>(digit[s])])] %
                         Q + Q) % Q;
          digit[s] += 1;
          if (digit[s] < sizes[pi]) {
            base = (base + table[ci][s][static_cast<size_t>(digit[s])]) % Q;
            shifted = (shifted +
                       table[ci][s][static_cast<size_t>(perm[t][pi][static_cast<size_t>(digit[s])])]) % Q;
            break;
          }
          digit[s] = 0;
          base = (base + table[ci][s][0]) % Q;
          shifted = (shifted + table[ci][s][static_cast<size_t>(perm[t][pi][0])]) % Q;
        }
        if (s == fc.support.size()) break;
      }
    }
  }

  // orthogonality: the difference character is nontrivial at some prime, and
  // there its value histogram must be m copies of each multiple of Q/m
  for (size_t ci = 0; ci < chars.size(); ++ci) {
    for (size_t cj = ci + 1; cj < chars.size(); ++cj) {
      size_t prime = SIZE_MAX, si = SIZE_MAX, sj = SIZE_MAX;
      for (size_t pi = 0; pi < np && prime == SIZE_MAX; ++pi) {
        auto find = [&](const FullChar& fc) {
          for (size_t s = 0; s < fc.support.size(); ++s)
            if (fc.support[s] == pi) return s;
          return SIZE_MAX;
        };
        size_t a = find(chars[ci]), b = find(chars[cj]);
        if (a == SIZE_MAX && b == SIZE_MAX) continue;
        if (a != SIZE_MAX && b != SIZE_MAX && chars[ci].comps[a] == chars[cj].comps[b])
          continue;
        prime = pi; si = a; sj = b;
      }
      if (prime == SIZE_MAX)
        throw Error(Errc::EigenrelationViolated, "distinct characters share all components");
      std::map<long long, long long> hist;
      for (long long ri = 0; ri < sizes[prime]; ++ri) {
        long long va = si == SIZE_MAX ? 0 : table[ci][si][static_cast<size_t>(ri)];
        long long vb = sj == SIZE_MAX ? 0 : table[cj][sj][static_cast<size_t>(ri)];
        hist[((va - vb) % Q + Q) % Q] += 1;
      }
      long long g = Q;
      for (auto& [v, c] : hist) g = std::gcd(g, v);
      long long m = g == 0 ? 1 : Q / g;
      bool ok = m > 1 && static_cast<long long>(hist.size()) == m;
      if (ok) {
        long long expect = sizes[prime] / m;
        for (auto& [v, c] : hist)
          if (v % g != 0 || c != expect) { ok = false; break; }
      }
      if (!ok)
        throw Error(Errc::EigenrelationViolated,
                    "character difference does not cancel exactly");
      ++rep.orthogonal_pairs;
    }
  }
  return rep;
}

void export_lambda_csv(const NumberField& F, const std::vector<Character>& chars,
                       int k, long long cutoff, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadLiteral, "cannot open " + path + " for writing");
  out.precision(12);
  for (int i = 0; i < F.degree; ++i) out << "num" << i << ',';
  out << "den,level,sigma\n";
  std::map<std::string, long double> sigma_memo;
  for (const Character& chi : chars) {
    Int q = common_den(chi.phase);
    for (const Rat& p : chi.phase) out << numerator(p * Rat(q)) << ',';
    std::string lvl = ideal_str(chi.level);
    auto it = sigma_memo.find(lvl);
    if (it == sigma_memo.end())
      it = sigma_memo.emplace(lvl, weights(chi.level, k, cutoff).sigma.value).first;
    out << q << ',' << '"' << lvl << '"' << ',' << static_cast<double>(it->second) << '\n';
  }
}

void export_lambda_svg(const std::vector<Character>& chars, int k,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadLiteral, "cannot open " + path + " for writing");
  const int side = 512;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << side
      << "\" height=\"" << side << "\" viewBox=\"0 0 " << side << ' ' << side << "\">\n"
      << "<rect width=\"" << side << "\" height=\"" << side << "\" fill=\"white\"/>\n";
  char buf[160];
  for (const Character& chi : chars) {
    if (chi.phase.size() != 2)
      throw Error(Errc::UnsupportedDimension, "scatter export is defined for degree 2 only");
    double x = static_cast<double>(static_cast<long double>(Rat(chi.phase[0])));
    double y = static_cast<double>(static_cast<long double>(Rat(chi.phase[1])));
    double nk = std::pow(static_cast<double>(to_ll(chi.level.norm)), k);
    double radius = std::max(1.5, 9.0 / std::sqrt(nk));
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"black\"/>\n",
                  x * side, (1.0 - y) * side, radius);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace kfree
