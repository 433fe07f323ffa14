#pragma once

#include <complex>
#include <vector>

#include "kfree/correlation.hpp"

namespace kfree {

// Unitary character of the additive group O_K, exact form: the phase vector
// y in [0,1)^d represents a |-> exp(2 pi i <y, coords(a)>). Tagged with its
// reduced level d: the smallest square-free ideal with y trivial on d^k.
struct Character {
  Ideal level;
  std::vector<Rat> phase;
};

bool operator==(const Character& a, const Character& b);

// exact rational phase <y, coords(v)> mod 1
Rat char_phase(const Character& chi, const Elem& v);

// The N(a) rational vectors mod 1 annihilating the ideal lattice; forms a
// group under addition mod 1.
std::vector<std::vector<Rat>> annihilator_points(const Ideal& a);

bool annihilates(const std::vector<Rat>& y, const Ideal& a);

// Smallest divisor of the square-free candidate whose k-th power y still
// annihilates (unique by the gcd characterization).
Ideal reduced_level(const NumberField& F, const std::vector<Rat>& y,
                    const Ideal& candidate, int k);

struct SpectralWeights {
  TruncatedValue sigma;  // sigma_d = (1/N(d^k)) prod_{p not| d} (1 - 2/N(p^k))
  TruncatedValue g;      // g(d) = (mu(d)/zeta_K(k)) prod_{p | d} 1/(N(p^k)-1)
  int mu = 1;            // mu(d)
};

SpectralWeights weights(const Ideal& d, int k, long long cutoff);

// Same sigma through sigma_O * prod_{p | d} 1/(N(p^k)-2); cross-check path.
TruncatedValue sigma_via_cross(const Ideal& d, int k, long long cutoff);

// c_2(a) as the sum of sigma_d over square-free d with d^k containing a;
// for a = 0 the sum runs over all levels with N(d^k) <= cutoff.
TruncatedValue c2_from_atoms(const Elem& a, int k, long long cutoff);

// All characters of reduced level d for every square-free d with
// N(d^k) <= max_level_norm, deterministic order (level norm, basis, phase).
std::vector<Character> lambda_approx(const NumberField& F, int k,
                                     long long max_level_norm);

// (1/#B_R) sum chi(-a) bit(a): the eigenfunction of the shift evaluated at
// the generic point; converges to g(level) as R grows.
std::complex<long double> empirical_theta(const Character& chi, const SieveGrid& grid,
                                          long long radius);

// (1/#B_x) sum_b chi(b) c2(b) -> g(d)^2.
std::complex<long double> weighted_c2_average(const NumberField& F, const Character& chi,
                                              int k, long long x, long long cutoff);

// Double average of chi1(b1) chi2(b2) c3(b1,b2) -> g(d1) g(d2) g(d12).
std::complex<long double> weighted_c3_average(const NumberField& F, const Character& chi1,
                                              const Character& chi2, int k, long long x,
                                              long long cutoff);

// Character-sum series for c_{r+1}, r <= 2: tuples of square-free levels with
// N(level) <= level_norm_bound, inner character sums in closed form.
TruncatedValue hall_formula_r2(const NumberField& F, const std::vector<Elem>& shifts,
                               int k, long long cutoff, long long level_norm_bound);

struct ParsevalResult {
  // (N(d), cumulative sum) after each group of equal-norm levels, ascending
  std::vector<std::pair<long long, long double>> partial;
  TruncatedValue total;
};

// zeta_K(k) * sum over square-free d, N(d) <= D, of g^2(d) * #reduced class;
// increases to 1 as D grows.
ParsevalResult parseval_check(const NumberField& F, int k, long long D);

// epsilon = mu(d1) mu(d2) mu(d) for the product character's reduced level d.
int multiplicativity_sign(const Character& chi1, const Character& chi2, int k);

struct RotationReport {
  long long group_order = 0;
  int characters = 0;
  long long relation_checks = 0;     // eigenrelation instances verified
  long long orthogonal_pairs = 0;    // distinct pairs proven orthogonal
  std::vector<Rat> eigenvalue_phases;  // phase of chi(iota(v)) per character, first v
};

// Materializes G_D = prod over N(p^k) <= D of O/p^k and verifies, in exact
// rational arithmetic, that every character of lambda_approx(k, D) induces an
// eigenfunction of each translation v: xi(g + v) = chi(v) xi(g) on all of
// G_D, plus pairwise orthogonality via exact character-sum cancellation.
// Throws EigenrelationViolated on any failure.
RotationReport rotation_eigencheck(const NumberField& F, int k, long long D,
                                   const std::vector<std::vector<long long>>& translations);

void export_lambda_csv(const NumberField& F, const std::vector<Character>& chars,
                       int k, long long cutoff, const std::string& path);

void export_lambda_svg(const std::vector<Character>& chars, int k,
                       const std::string& path);

}  // namespace kfree
