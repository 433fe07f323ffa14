#pragma once

#include <optional>
#include <vector>

#include "kfree/sieve.hpp"

namespace kfree {

// Result of an infinite Euler product or series truncated at a prime-norm
// cutoff. Contract: the true value lies in [value*(1-tail_bound),
// value*(1+tail_bound)]; exact zeros carry tail_bound = 0.
struct TruncatedValue {
  long double value = 0.0L;
  long double tail_bound = 0.0L;
  long long cutoff = 0;
};

struct CorrelationSpec {
  int k = 2;
  std::vector<Elem> shifts;       // a_1..a_r; a_0 = 0 is always implicit
  std::optional<Ideal> modulus;   // constraint ideal b; empty means O_K
};

struct AnalyticResult {
  TruncatedValue tv;
  bool exact_zero = false;
  std::optional<Ideal> witness;  // prime whose factor vanishes
};

// Number of distinct residue classes of the tuple modulo pk.
int residue_D(const Ideal& pk, const std::vector<Elem>& tuple);

// Classes counted only when their canonical representative lies in
// gcd(pk, b); for pk | b this reduces to "some tuple element in pk".
int residue_D_b(const Ideal& pk, const Ideal& b, const std::vector<Elem>& tuple);

// 1 iff the simultaneous congruences b + a_i in n_i are solvable, decided by
// the pairwise criterion a_i - a_j in gcd(n_i, n_j); never solves the system.
int e_symbol(const std::vector<Ideal>& ideals, const std::vector<Elem>& shifts);

TruncatedValue dedekind_zeta(const NumberField& F, int s, long long cutoff);

// Euler product for the (r+1)-st correlation: factors 1 - D(p^k | 0,a_)/N(p^k).
// Primes with N(p)^k <= max(max |N(a_i - a_j)|, #distinct tuple) are evaluated
// exactly; beyond that D equals the tuple size and the tail is bounded.
AnalyticResult analytic_correlation(const NumberField& F, const CorrelationSpec& spec,
                                    long long cutoff);

// Constrained main term: (1/N(b)) * prod over all p of
// (1 - N(gcd(p^k,b)) * D(p^k,b | 0,a_) / N(p^k)); detects exact vanishing
// (factor zero for some p) and reports the witness.
AnalyticResult analytic_S(const NumberField& F, const CorrelationSpec& spec,
                          long long cutoff);

// Exact block frequency (1/#B_x) sum over a in B_x with a in b of
// prod_i bit(a + a_i), tuple again including the implicit 0.
Rat empirical_correlation(const SieveGrid& grid, const CorrelationSpec& spec,
                          long long avg_radius);

}  // namespace kfree
