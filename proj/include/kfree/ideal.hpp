#pragma once

#include <optional>
#include <vector>

#include "kfree/field.hpp"

namespace kfree {

// Nonzero ideal of O_K as a full-rank sublattice of Z^d in canonical column
// Hermite normal form: upper triangular, positive diagonal, entries right of
// the diagonal reduced into [0, diagonal). Two generator sets of the same
// ideal always produce bit-identical bases.
struct Ideal {
  const NumberField* fld = nullptr;
  IMat basis;
  Int norm;  // product of the diagonal = [O_K : ideal]

  bool is_unit_ideal() const { return norm == 1; }
};

bool operator==(const Ideal& a, const Ideal& b);
bool operator<(const Ideal& a, const Ideal& b);  // by (norm, basis lex)

// Column HNF of an arbitrary full-rank generating set of column vectors.
IMat hnf(const NumberField& F, IMat cols);

Ideal ideal_from_columns(const NumberField& F, IMat cols);
Ideal ideal_from_generators(const NumberField& F, const std::vector<Elem>& gens);
Ideal principal(const Elem& a);
Ideal unit_ideal(const NumberField& F);

Ideal sum_gcd(const Ideal& a, const Ideal& b);
Ideal intersect_lcm(const Ideal& a, const Ideal& b);
Ideal product(const Ideal& a, const Ideal& b);
Ideal power(const Ideal& a, int k);

bool contains(const Ideal& a, const Elem& v);
bool divides(const Ideal& a, const Ideal& b);  // a | b, i.e. b subset of a

// Canonical coset representative: coordinates reduced by back-substitution
// into the mixed-radix box [0, diag_i). Idempotent and constant on cosets.
Elem reduce_mod(const Elem& v, const Ideal& a);

// Exactly N(a) canonical representatives, mixed-radix order over the diagonal.
std::vector<Elem> residues(const Ideal& a);

std::string ideal_str(const Ideal& a);  // generator-list literal, parseable back

}  // namespace kfree
