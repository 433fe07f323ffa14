#pragma once

#include <map>
#include <vector>

#include "kfree/ideal.hpp"

namespace kfree {

struct PrimeIdeal {
  Ideal ideal;
  long long over = 0;   // rational prime below
  int resid_degree = 0; // f, N = p^f
  int ramification = 0; // e
};

// Dedekind's maximality criterion for Z[theta] at p. The whole artifact
// refuses to compute (NonMonogenicAtP) when this fails for a needed prime:
// partial results would be silently wrong.
bool dedekind_check(const NumberField& F, long long p);

// Kummer-Dedekind: factor min_poly mod p into irreducibles g_i^{e_i} and
// return the primes (p, g_i(theta)), sorted by (norm, basis). Requires
// dedekind_check(p).
std::vector<PrimeIdeal> factor_rational_prime(const NumberField& F, long long p);

// Residue degrees with multiplicity, one entry per prime ideal above p,
// without materializing HNF bases. This is the fast path for Euler products.
std::vector<int> splitting_degrees(const NumberField& F, long long p);

// All prime ideals with norm <= limit, ordered by (norm, basis).
std::vector<PrimeIdeal> primes_by_norm(const NumberField& F, long long limit);

// Prime-ideal norms <= limit as (norm, count) with deterministic order,
// degree data only. Counts distinct primes of equal norm.
std::vector<std::pair<long long, int>> prime_norms_upto(const NumberField& F,
                                                        long long limit);

// Prime ideals dividing a, each with its exact valuation.
std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const Ideal& a);

// k = 1: Moebius mu in {-1,0,1}. k >= 2: indicator of "no p^k divides a".
int mobius_mu_k(const Ideal& a, int k);

// Same value through the divisor-sum identity sum of mu(b) over b^k >= a,
// valid for k >= 2; exponentially slower, kept as an independent cross-check.
int mobius_mu_k_via_sum(const Ideal& a, int k);

}  // namespace kfree
