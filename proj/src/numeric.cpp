#include "kfree/numeric.hpp"

#include <algorithm>
#include <numeric>

namespace kfree {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotMonic: return "NotMonic";
    case Errc::ReducibleDetected: return "ReducibleDetected";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroIdeal: return "ZeroIdeal";
    case Errc::NonMonogenicAtP: return "NonMonogenicAtP";
    case Errc::MismatchFound: return "MismatchFound";
    case Errc::RadiusTooSmall: return "RadiusTooSmall";
    case Errc::NotSquareFree: return "NotSquareFree";
    case Errc::EigenrelationViolated: return "EigenrelationViolated";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::BadLiteral: return "BadLiteral";
    case Errc::Unfactorable: return "Unfactorable";
  }
  return "Unknown";
}

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // deterministic Miller-Rabin base set for 64-bit inputs
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

// Brent's cycle variant of Pollard rho with fixed increment sequence, fully
// deterministic for a given n.
u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k2 = 0; k2 < r && g == 1; k2 += 128) {
        ys = y;
        u64 lim = std::min<u64>(128, r - k2);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) { out.push_back(n); return; }
  u64 d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  if (n == 0) throw Error(Errc::Unfactorable, "factor_u64(0)");
  for (u64 p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) {
    std::vector<u64> rest;
    factor_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (size_t i = 0; i < rest.size();) {
      size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.emplace_back(rest[i], static_cast<int>(j - i));
      i = j;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Int, int>> factor_abs(const Int& n) {
  Int a = abs(n);
  if (a == 0) throw Error(Errc::Unfactorable, "factor_abs(0)");
  std::vector<std::pair<Int, int>> out;
  if (a == 1) return out;
  if (a > Int(UINT64_MAX))
    throw Error(Errc::Unfactorable, "norm too large to factor: " + a.str());
  for (auto& [p, e] : factor_u64(static_cast<u64>(a)))
    out.emplace_back(Int(p), e);
  return out;
}

std::vector<long long> rational_primes_upto(long long limit) {
  std::vector<long long> out;
  if (limit < 2) return out;
  std::vector<uint8_t> comp(static_cast<size_t>(limit) + 1, 0);
  for (long long i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (long long j = i * i; j <= limit; j += i) comp[j] = 1;
    }
  }
  return out;
}

}  // namespace kfree
