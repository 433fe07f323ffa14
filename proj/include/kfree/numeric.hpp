#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace kfree {

// Expression templates stay off: Eigen's scalar plumbing needs plain value
// semantics, and the et-on frontends trip Eigen's promote_scalar_arg probes.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

using IMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

enum class Errc {
  NotMonic,
  ReducibleDetected,
  DegreeZero,
  FieldMismatch,
  ZeroIdeal,
  NonMonogenicAtP,
  MismatchFound,
  RadiusTooSmall,
  NotSquareFree,
  EigenrelationViolated,
  UnsupportedDimension,
  BadLiteral,
  Unfactorable,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

const char* errc_name(Errc c);

inline long long to_ll(const Int& v) {
  if (v > Int(INT64_MAX) || v < Int(INT64_MIN))
    throw Error(Errc::Unfactorable, "value exceeds 64-bit range: " + v.str());
  return static_cast<long long>(v);
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;                    // gmp truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Euclidean remainder in [0, |b|).
inline Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

inline Rat frac_part(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  return Rat(mod_floor(n, d), d);
}

// Deterministic pseudorandom stream used wherever tests or samplers need
// reproducible draws.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n) by rejection, bias-free
  uint64_t below(uint64_t n) {
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do { v = next(); } while (v >= lim);
    return v % n;
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }
};

bool is_prime_u64(uint64_t n);

// (prime, exponent) pairs, primes ascending. Trial division to 1e6 then
// deterministic Brent-Pollard; throws Unfactorable if a cofactor resists.
std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n);

std::vector<std::pair<Int, int>> factor_abs(const Int& n);

std::vector<long long> rational_primes_upto(long long limit);

}  // namespace kfree
