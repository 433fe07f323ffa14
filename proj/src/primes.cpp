#include "kfree/primes.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace kfree {

namespace {

// Dense polynomials over F_p, coefficients low-degree first, trimmed.
using Poly = std::vector<uint64_t>;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}

uint64_t powmod_u(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t p) { return powmod_u(a, p - 2, p); }

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly psub(const Poly& a, const Poly& b, uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0;
    uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  trim(r);
  return r;
}

Poly pmul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + static_cast<__uint128_t>(a[i]) * b[j]) % p;
  }
  trim(r);
  return r;
}

Poly make_monic(Poly f, uint64_t p) {
  if (f.empty() || f.back() == 1) return f;
  uint64_t inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
  return f;
}

// remainder of a by monic-normalized b
Poly pmod(Poly a, const Poly& b_in, uint64_t p) {
  Poly b = make_monic(b_in, p);
  while (pdeg(a) >= pdeg(b)) {
    uint64_t lead = a.back();
    size_t shift = a.size() - b.size();
    if (lead != 0)
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + p - mulmod(lead, b[i], p)) % p;
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly pdiv(const Poly& a_in, const Poly& b_in, uint64_t p) {
  Poly b = make_monic(b_in, p);
  uint64_t lead_inv = invmod(b_in.back(), p);
  Poly a = a_in;
  if (pdeg(a) < pdeg(b)) return {};
  Poly q(a.size() - b.size() + 1, 0);
  while (pdeg(a) >= pdeg(b)) {
    uint64_t lead = a.back();
    size_t shift = a.size() - b.size();
    q[shift] = mulmod(lead, lead_inv, p);
    if (lead != 0)
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + p - mulmod(lead, b[i], p)) % p;
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

Poly pgcd(Poly a, Poly b, uint64_t p) {
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& m, uint64_t p) {
  return pmod(pmul(a, b, p), m, p);
}

Poly ppowmod(Poly a, uint64_t e, const Poly& m, uint64_t p) {
  Poly r{1};
  a = pmod(std::move(a), m, p);
  while (e) {
    if (e & 1) r = pmulmod(r, a, m, p);
    a = pmulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

Poly derivative(const Poly& f, uint64_t p) {
  Poly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(mulmod(f[i], i % p, p));
  trim(r);
  return r;
}

// f = g(x^p) -> g; valid because c^p = c in F_p
Poly pth_root(const Poly& f, uint64_t p) {
  Poly r;
  for (size_t i = 0; i < f.size(); i += p) r.push_back(f[i]);
  trim(r);
  return r;
}

// f monic -> pairwise coprime squarefree g_i with multiplicities, f = prod g_i^{m_i}
void squarefree_parts(const Poly& f, uint64_t p, int mult,
                      std::vector<std::pair<Poly, int>>& out) {
  if (pdeg(f) < 1) return;
  Poly fp = derivative(f, p);
  if (fp.empty()) {
    squarefree_parts(pth_root(f, p), p, mult * static_cast<int>(p), out);
    return;
  }
  Poly c = pgcd(f, fp, p);
  Poly w = pdiv(f, c, p);
  int i = 1;
  while (pdeg(w) > 0) {
    Poly y = pgcd(w, c, p);
    Poly z = pdiv(w, y, p);
    if (pdeg(z) > 0) out.emplace_back(make_monic(z, p), mult * i);
    w = std::move(y);
    c = pdiv(c, w, p);
    ++i;
  }
  if (pdeg(c) > 0) squarefree_parts(pth_root(c, p), p, mult * static_cast<int>(p), out);
}

// g monic squarefree -> (product of all irreducible factors of degree d, d)
std::vector<std::pair<Poly, int>> ddf(Poly g, uint64_t p) {
  std::vector<std::pair<Poly, int>> out;
  Poly x{0, 1};
  Poly h = pmod(x, g, p);
  int i = 0;
  while (pdeg(g) > 0) {
    ++i;
    if (2 * i > pdeg(g)) {
      out.emplace_back(make_monic(g, p), pdeg(g));
      break;
    }
    h = ppowmod(h, p, g, p);
    Poly d = pgcd(psub(h, x, p), g, p);
    if (pdeg(d) > 0) {
      out.emplace_back(d, i);
      g = pdiv(g, d, p);
      h = pmod(h, g, p);
    }
  }
  return out;
}

Poly random_poly(SplitMix64& rng, int deg_below, uint64_t p) {
  Poly a(deg_below);
  for (auto& c : a) c = rng.below(p);
  trim(a);
  return a;
}

// Cantor-Zassenhaus: split monic g, a product of irreducibles of degree d.
void edf(const Poly& g, int d, uint64_t p, SplitMix64& rng, std::vector<Poly>& out) {
  if (pdeg(g) == d) {
    out.push_back(make_monic(g, p));
    return;
  }
  while (true) {
    Poly a = random_poly(rng, pdeg(g), p);
    if (pdeg(a) < 1) continue;
    Poly c;
    if (p == 2) {
      Poly t = a;
      Poly acc = a;
      for (int j = 1; j < d; ++j) {
        t = pmulmod(t, t, g, p);
        acc = psub(acc, psub({}, t, p), p);  // acc += t
      }
      c = pgcd(acc, g, p);
    } else {
      uint64_t pd = 1;
      for (int j = 0; j < d; ++j) pd *= p;
      Poly b = ppowmod(a, (pd - 1) / 2, g, p);
      c = pgcd(psub(b, Poly{1}, p), g, p);
    }
    if (pdeg(c) > 0 && pdeg(c) < pdeg(g)) {
      edf(c, d, p, rng, out);
      edf(pdiv(g, c, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<std::pair<Poly, int>> factor_monic_modp(const Poly& f, uint64_t p) {
  std::vector<std::pair<Poly, int>> parts;
  squarefree_parts(f, p, 1, parts);
  std::vector<std::pair<Poly, int>> out;
  for (auto& [part, mult] : parts) {
    SplitMix64 rng(0x5eedULL * p + 31 * static_cast<uint64_t>(pdeg(part)));
    for (auto& [prod, d] : ddf(part, p)) {
      std::vector<Poly> irr;
      edf(prod, d, p, rng, irr);
      for (auto& q : irr) out.emplace_back(std::move(q), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

Poly minpoly_modp(const NumberField& F, uint64_t p) {
  Poly f(F.min_poly.size());
  for (size_t i = 0; i < f.size(); ++i)
    f[i] = static_cast<uint64_t>(to_ll(mod_floor(F.min_poly[i], Int(p))));
  return f;
}

Elem eval_at_theta(const NumberField& F, const Poly& g) {
  Elem acc = zero_elem(F);
  Elem th = theta_elem(F);
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    acc = acc * th;
    acc.c[0] += Int(*it);
  }
  return acc;
}

}  // namespace

bool dedekind_check(const NumberField& F, long long p) {
  const uint64_t up = static_cast<uint64_t>(p);
  Poly fbar = minpoly_modp(F, up);
  std::vector<std::pair<Poly, int>> parts;
  squarefree_parts(fbar, up, 1, parts);
  Poly radical{1};
  for (auto& [g, m] : parts) radical = pmul(radical, g, up);
  Poly hbar = pdiv(fbar, radical, up);

  // T = (lift(radical) * lift(hbar) - f) / p, then gcd(T, radical, hbar) mod p
  const int d = F.degree;
  std::vector<Int> prod(2 * d + 1, 0);
  for (size_t i = 0; i < radical.size(); ++i)
    for (size_t j = 0; j < hbar.size(); ++j)
      prod[i + j] += Int(radical[i]) * Int(hbar[j]);
  Poly tbar(2 * d + 1, 0);
  for (size_t i = 0; i < prod.size(); ++i) {
    Int diff = prod[i] - (i < F.min_poly.size() ? F.min_poly[i] : Int(0));
    tbar[i] = static_cast<uint64_t>(to_ll(mod_floor(diff / p, Int(p))));
  }
  trim(tbar);
  Poly g = pgcd(pgcd(tbar, radical, up), hbar, up);
  return pdeg(g) == 0;
}

std::vector<PrimeIdeal> factor_rational_prime(const NumberField& F, long long p) {
  if (!dedekind_check(F, p)) {
    std::ostringstream os;
    os << "Z[theta] for minimal polynomial " << F.spec_string() << " is not maximal at "
       << p << "; refusing to emit results for this field";
    throw Error(Errc::NonMonogenicAtP, os.str());
  }
  const uint64_t up = static_cast<uint64_t>(p);
  Poly fbar = minpoly_modp(F, up);
  std::vector<PrimeIdeal> out;
  for (auto& [g, e] : factor_monic_modp(fbar, up)) {
    PrimeIdeal pi;
    pi.over = p;
    pi.resid_degree = pdeg(g);
    pi.ramification = e;
    Elem pe = zero_elem(F);
    pe.c[0] = p;
    pi.ideal = ideal_from_generators(F, {pe, eval_at_theta(F, g)});
    Int expect = 1;
    for (int i = 0; i < pi.resid_degree; ++i) expect *= p;
    if (pi.ideal.norm != expect)
      throw Error(Errc::NonMonogenicAtP, "prime ideal norm mismatch over p=" + std::to_string(p));
    out.push_back(std::move(pi));
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  return out;
}

std::vector<int> splitting_degrees(const NumberField& F, long long p) {
  if (!dedekind_check(F, p))
    throw Error(Errc::NonMonogenicAtP,
                "field is not monogenic at " + std::to_string(p) + "; refusing to continue");
  const uint64_t up = static_cast<uint64_t>(p);
  std::vector<std::pair<Poly, int>> parts;
  squarefree_parts(minpoly_modp(F, up), up, 1, parts);
  std::vector<int> degrees;
  for (auto& [part, mult] : parts)
    for (auto& [prod, d] : ddf(part, up)) {
      int count = pdeg(prod) / d;
      for (int i = 0; i < count; ++i) degrees.push_back(d);
    }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<PrimeIdeal> primes_by_norm(const NumberField& F, long long limit) {
  std::vector<PrimeIdeal> out;
  for (long long p : rational_primes_upto(limit)) {
    for (auto& pi : factor_rational_prime(F, p))
      if (pi.ideal.norm <= limit) out.push_back(std::move(pi));
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  return out;
}

std::vector<std::pair<long long, int>> prime_norms_upto(const NumberField& F,
                                                        long long limit) {
  // memoized per (field, limit): Euler products hit the same stream repeatedly
  static std::mutex mtx;
  static std::map<std::pair<std::string, long long>,
                  std::vector<std::pair<long long, int>>> cache;
  std::pair<std::string, long long> key{F.spec_string(), limit};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::map<long long, int> counts;
  for (long long p : rational_primes_upto(limit)) {
    for (int f : splitting_degrees(F, p)) {
      long long norm = 1;
      bool fits = true;
      for (int i = 0; i < f; ++i) {
        if (norm > limit / p) { fits = false; break; }
        norm *= p;
      }
      if (fits && norm <= limit) counts[norm] += 1;
    }
  }
  std::vector<std::pair<long long, int>> out{counts.begin(), counts.end()};
  std::lock_guard<std::mutex> lock(mtx);
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const Ideal& a) {
  std::vector<std::pair<PrimeIdeal, int>> out;
  if (a.is_unit_ideal()) return out;
  for (auto& [p, e] : factor_abs(a.norm)) {
    (void)e;
    for (auto& pi : factor_rational_prime(*a.fld, to_ll(p))) {
      int v = 0;
      Ideal cur = pi.ideal;
      while (divides(cur, a)) {
        ++v;
        cur = product(cur, pi.ideal);
      }
      if (v > 0) out.emplace_back(pi, v);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first.ideal < y.first.ideal; });
  return out;
}

int mobius_mu_k(const Ideal& a, int k) {
  auto fac = factor_ideal(a);
  if (k == 1) {
    for (auto& [pi, v] : fac)
      if (v >= 2) return 0;
    return fac.size() % 2 == 0 ? 1 : -1;
  }
  for (auto& [pi, v] : fac)
    if (v >= k) return 0;
  return 1;
}

int mobius_mu_k_via_sum(const Ideal& a, int k) {
  if (k < 2) throw Error(Errc::BadLiteral, "divisor-sum identity requires k >= 2");
  auto fac = factor_ideal(a);
  const size_t n = fac.size();
  int total = 0;
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    Ideal b = unit_ideal(*a.fld);
    int bits = 0;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) {
        b = product(b, fac[i].first.ideal);
        ++bits;
      }
    if (divides(power(b, k), a)) total += (bits % 2 == 0) ? 1 : -1;
  }
  return total;
}

}  // namespace kfree
