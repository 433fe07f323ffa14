#pragma once

#include <functional>
#include <initializer_list>
#include <memory>
#include <vector>

#include "kfree/numeric.hpp"

namespace kfree {

// Monogenic number field K = Q(theta), theta a root of a monic integer
// polynomial. All ring arithmetic happens in the power basis 1, theta, ...,
// theta^(d-1); the multiplication table is fixed at construction.
struct NumberField {
  int degree = 0;
  std::vector<Int> min_poly;   // degree+1 coefficients, constant term first, monic
  std::vector<Int> mult_table; // d*d*d, entry(i,j,m) = coefficient of e_m in e_i*e_j
  Int discriminant;
  Int submult_bound;           // d * max |mult_table|, so |a*b| <= bound*|a|*|b| in L1

  const Int& entry(int i, int j, int m) const {
    return mult_table[(static_cast<size_t>(i) * degree + j) * degree + m];
  }
  std::string spec_string() const;  // "1,0,1" style, constant term first
  bool same_as(const NumberField& o) const { return min_poly == o.min_poly; }
};

// Rejects reducible polynomials when detectable: rational-root test for all
// degrees, quadratic-pair search for degree 4. Degrees above 4 require
// assume_irreducible.
NumberField make_field(std::vector<Int> coeffs, bool assume_irreducible = false);

struct Elem {
  const NumberField* fld = nullptr;
  IVec c;

  bool is_zero() const {
    for (int i = 0; i < c.size(); ++i)
      if (c[i] != 0) return false;
    return true;
  }
};

Elem elem(const NumberField& F, std::vector<Int> coords);
Elem elem_ll(const NumberField& F, const std::vector<long long>& coords);
Elem zero_elem(const NumberField& F);
Elem one_elem(const NumberField& F);
Elem theta_elem(const NumberField& F);

Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);
Elem operator*(const Elem& a, const Elem& b);
bool operator==(const Elem& a, const Elem& b);

// d x d matrix of multiplication by a in the power basis
IMat mult_matrix(const Elem& a);
Int elem_norm(const Elem& a);  // det of mult_matrix; signed
Int geom_norm(const Elem& a);  // L1 norm of coordinates

std::string elem_str(const Elem& a);

// Visits every lattice point with L1 norm <= x exactly once, in lexicographic
// order on coordinates (all empirical averages depend on this order).
void for_each_ball_point(int d, long long x,
                         const std::function<void(const std::vector<long long>&)>& f);

std::vector<Elem> ball_enum(const NumberField& F, long long x);

unsigned long long ball_count(int d, long long x);

}  // namespace kfree
