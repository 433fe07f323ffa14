#include "kfree/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace kfree {

namespace {

// tuple = {0} with the shifts appended; D handles duplicates
std::vector<Elem> full_tuple(const NumberField& F, const std::vector<Elem>& shifts) {
  std::vector<Elem> t;
  t.reserve(shifts.size() + 1);
  t.push_back(zero_elem(F));
  for (const Elem& s : shifts) t.push_back(s);
  return t;
}

std::vector<Elem> distinct_elems(std::vector<Elem> t) {
  std::vector<Elem> out;
  for (const Elem& e : t) {
    bool seen = false;
    for (const Elem& o : out)
      if (o == e) { seen = true; break; }
    if (!seen) out.push_back(e);
  }
  return out;
}

// Everything at or below this norm-of-p^k threshold is evaluated exactly: all
// nonzero differences a_i - a_j have |N| below it, and so does the tuple size,
// which rules out both nongeneric D and vanishing factors in the tail.
Int exceptional_threshold(const std::vector<Elem>& tuple) {
  Int t = static_cast<long long>(distinct_elems(tuple).size());
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j) {
      Elem d = tuple[i] - tuple[j];
      if (d.is_zero()) continue;
      Int n = abs(elem_norm(d));
      if (n > t) t = n;
    }
  return t;
}

long long kth_root_floor(const Int& v, int k) {
  if (v <= 0) return 0;
  long long r = static_cast<long long>(std::pow(static_cast<double>(v), 1.0 / k)) + 2;
  auto powk = [&](long long n) {
    Int acc = 1;
    for (int i = 0; i < k; ++i) acc *= n;
    return acc;
  };
  while (r > 0 && powk(r) > v) --r;
  return r;
}

constexpr long double kPerFactorRounding = 1e-12L;

// log of the generic factors (1 - m/n^k) over prime norms in (skip-set aware
// callers subtract); returns the number of factors through factor_count
long double generic_log_sum(const NumberField& F, long long cutoff, int k, int m,
                            const Int& threshold, long long& factor_count) {
  long double acc = 0.0L;
  factor_count = 0;
  for (auto& [norm, count] : prime_norms_upto(F, cutoff)) {
    Int nk = 1;
    for (int i = 0; i < k; ++i) nk *= norm;
    if (nk <= threshold) continue;
    long double x = static_cast<long double>(m) /
                    powl(static_cast<long double>(norm), static_cast<long double>(k));
    acc += count * log1pl(-x);
    factor_count += count;
  }
  return acc;
}

long double tail_log_bound(int d, long long cutoff, int k, int m) {
  // sum over prime norms n > cutoff of -count*log(1 - m/n^k); at most d primes
  // share a norm, and sum_{n>T} n^-k <= T^(1-k)/(k-1) by integral comparison
  long long t = std::max(cutoff, 1LL);
  long double x_max = static_cast<long double>(m) /
                      powl(static_cast<long double>(t + 1), static_cast<long double>(k));
  if (x_max >= 1.0L) return HUGE_VALL;
  long double slack = 1.0L / (1.0L - x_max);
  return slack * m * d * powl(static_cast<long double>(t), 1.0L - k) / (k - 1);
}

}  // namespace

int residue_D(const Ideal& pk, const std::vector<Elem>& tuple) {
  std::vector<Elem> reps;
  for (const Elem& t : tuple) reps.push_back(reduce_mod(t, pk));
  return static_cast<int>(distinct_elems(std::move(reps)).size());
}

int residue_D_b(const Ideal& pk, const Ideal& b, const std::vector<Elem>& tuple) {
  Ideal g = sum_gcd(pk, b);
  std::vector<Elem> reps;
  for (const Elem& t : tuple) reps.push_back(reduce_mod(t, pk));
  int n = 0;
  for (const Elem& r : distinct_elems(std::move(reps)))
    if (contains(g, r)) ++n;
  return n;
}

int e_symbol(const std::vector<Ideal>& ideals, const std::vector<Elem>& shifts) {
  if (ideals.size() != shifts.size())
    throw Error(Errc::BadLiteral, "e_symbol needs one shift per ideal");
  for (size_t i = 0; i < ideals.size(); ++i)
    for (size_t j = i + 1; j < ideals.size(); ++j)
      if (!contains(sum_gcd(ideals[i], ideals[j]), shifts[i] - shifts[j])) return 0;
  return 1;
}

TruncatedValue dedekind_zeta(const NumberField& F, int s, long long cutoff) {
  TruncatedValue tv;
  tv.cutoff = cutoff;
  long double logsum = 0.0L;
  long long factors = 0;
  for (auto& [norm, count] : prime_norms_upto(F, cutoff)) {
    long double x = powl(static_cast<long double>(norm), -static_cast<long double>(s));
    logsum -= count * log1pl(-x);
    factors += count;
  }
  tv.value = expl(logsum);
  tv.tail_bound = expm1l(tail_log_bound(F.degree, cutoff, s, 1)) +
                  kPerFactorRounding * factors;
  return tv;
}

AnalyticResult analytic_correlation(const NumberField& F, const CorrelationSpec& spec,
                                    long long cutoff) {
  if (spec.modulus && !spec.modulus->is_unit_ideal())
    throw Error(Errc::BadLiteral, "constrained specs go through the S functional");
  std::vector<Elem> tuple = full_tuple(F, spec.shifts);
  const int m = static_cast<int>(distinct_elems(tuple).size());
  const Int threshold = exceptional_threshold(tuple);

  AnalyticResult res;
  res.tv.cutoff = cutoff;
  long double logsum = 0.0L;
  long long factors = 0;

  for (const PrimeIdeal& p : primes_by_norm(F, kth_root_floor(threshold, spec.k))) {
    Ideal pk = power(p.ideal, spec.k);
    int D = residue_D(pk, tuple);
    if (Int(D) == pk.norm) {
      res.exact_zero = true;
      res.witness = p.ideal;
      res.tv.value = 0.0L;
      res.tv.tail_bound = 0.0L;
      return res;
    }
    logsum += log1pl(-static_cast<long double>(D) / static_cast<long double>(pk.norm));
    ++factors;
  }

  long long generic_count = 0;
  logsum += generic_log_sum(F, cutoff, spec.k, m, threshold, generic_count);
  factors += generic_count;

  res.tv.value = expl(logsum);
  res.tv.tail_bound = expm1l(tail_log_bound(F.degree, cutoff, spec.k, m)) +
                      kPerFactorRounding * factors;
  return res;
}

AnalyticResult analytic_S(const NumberField& F, const CorrelationSpec& spec,
                          long long cutoff) {
  Ideal b = spec.modulus ? *spec.modulus : unit_ideal(F);
  std::vector<Elem> tuple = full_tuple(F, spec.shifts);
  const int m = static_cast<int>(distinct_elems(tuple).size());
  const Int threshold = exceptional_threshold(tuple);

  // exceptional set: everything with N(p)^k <= threshold plus every p | b;
  // beyond both, gcd(p^k, b) = O and D_b = m exactly
  std::vector<PrimeIdeal> except = primes_by_norm(F, kth_root_floor(threshold, spec.k));
  std::vector<std::pair<long long, int>> extra;  // (norm, multiplicity-in-norm-list)
  for (auto& [p, v] : factor_ideal(b)) {
    (void)v;
    bool present = false;
    for (const PrimeIdeal& q : except)
      if (q.ideal == p.ideal) { present = true; break; }
    if (!present) {
      extra.emplace_back(to_ll(p.ideal.norm), 1);
      except.push_back(p);
    }
  }

  AnalyticResult res;
  res.tv.cutoff = cutoff;
  long double logsum = -logl(static_cast<long double>(to_ll(b.norm)));
  long long factors = 0;

  for (const PrimeIdeal& p : except) {
    Ideal pk = power(p.ideal, spec.k);
    Ideal g = sum_gcd(pk, b);
    int Db = residue_D_b(pk, b, tuple);
    Int num = g.norm * Db;
    if (num == pk.norm) {
      res.exact_zero = true;
      res.witness = p.ideal;
      res.tv.value = 0.0L;
      res.tv.tail_bound = 0.0L;
      return res;
    }
    logsum += log1pl(-static_cast<long double>(num) / static_cast<long double>(pk.norm));
    ++factors;
  }

  long long generic_count = 0;
  logsum += generic_log_sum(F, cutoff, spec.k, m, threshold, generic_count);
  factors += generic_count;
  // primes of b above the threshold were already handled exactly; remove the
  // generic factor the norm sweep just charged for them
  for (auto& [norm, count] : extra) {
    Int nk = 1;
    for (int i = 0; i < spec.k; ++i) nk *= norm;
    if (nk <= threshold || norm > cutoff) continue;
    long double x = static_cast<long double>(m) /
                    powl(static_cast<long double>(norm), static_cast<long double>(spec.k));
    logsum -= count * log1pl(-x);
    factors -= count;
  }

  res.tv.value = expl(logsum);
  res.tv.tail_bound = expm1l(tail_log_bound(F.degree, cutoff, spec.k, m)) +
                      kPerFactorRounding * factors;
  return res;
}

Rat empirical_correlation(const SieveGrid& grid, const CorrelationSpec& spec,
                          long long avg_radius) {
  const NumberField& F = *grid.fld;
  if (spec.k != grid.k)
    throw Error(Errc::BadLiteral, "spec exponent differs from the grid exponent");
  long long max_shift = 0;
  std::vector<std::vector<long long>> shift_ll;
  for (const Elem& s : spec.shifts) {
    max_shift = std::max(max_shift, to_ll(geom_norm(s)));
    std::vector<long long> v(F.degree);
    for (int i = 0; i < F.degree; ++i) v[i] = to_ll(s.c[i]);
    shift_ll.push_back(std::move(v));
  }
  if (avg_radius + max_shift > grid.radius)
    throw Error(Errc::RadiusTooSmall, "grid radius cannot cover the shifted lookups");

  unsigned long long hits = 0;
  std::vector<long long> shifted(F.degree);
  std::vector<Int> cv(F.degree);
  for_each_ball_point(F.degree, avg_radius, [&](const std::vector<long long>& a) {
    if (spec.modulus) {
      for (int i = 0; i < F.degree; ++i) cv[i] = a[i];
      if (!contains(*spec.modulus, elem(F, cv))) return;
    }
    if (!*grid.bit_of(a)) return;
    for (const auto& s : shift_ll) {
      for (int i = 0; i < F.degree; ++i) shifted[i] = a[i] + s[i];
      if (!*grid.bit_of(shifted)) return;
    }
    ++hits;
  });
  return Rat(Int(hits), Int(ball_count(F.degree, avg_radius)));
}

}  // namespace kfree
