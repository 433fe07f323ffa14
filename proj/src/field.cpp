#include "kfree/field.hpp"

#include <algorithm>
#include <sstream>

namespace kfree {

namespace {

// Fraction-free Gaussian elimination; exact determinant of an integer matrix.
Int det_bareiss(IMat m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int c = 0; c < n - 1; ++c) {
    if (m(c, c) == 0) {
      int pivot = -1;
      for (int r = c + 1; r < n; ++r)
        if (m(r, c) != 0) { pivot = r; break; }
      if (pivot < 0) return 0;
      m.row(c).swap(m.row(pivot));
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r) {
      for (int j = c + 1; j < n; ++j)
        m(r, j) = (m(r, j) * m(c, c) - m(r, c) * m(c, j)) / prev;
      m(r, c) = 0;
    }
    prev = m(c, c);
  }
  return sign * m(n - 1, n - 1);
}

Int resultant(const std::vector<Int>& f, const std::vector<Int>& g) {
  const int n = static_cast<int>(f.size()) - 1;
  const int m = static_cast<int>(g.size()) - 1;
  const int size = n + m;
  IMat s = IMat::Zero(size, size);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(i, i + j) = f[n - j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(m + i, i + j) = g[m - j];
  return det_bareiss(std::move(s));
}

std::vector<Int> divisors_of(const Int& n) {
  std::vector<Int> divs{1};
  for (auto& [p, e] : factor_abs(n)) {
    size_t base = divs.size();
    Int pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

Int eval_poly(const std::vector<Int>& coeffs, const Int& x) {
  Int acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool has_rational_root(const std::vector<Int>& coeffs) {
  const Int& c0 = coeffs[0];
  if (c0 == 0) return true;  // root at 0
  for (const Int& d : divisors_of(c0)) {
    if (eval_poly(coeffs, d) == 0 || eval_poly(coeffs, -d) == 0) return true;
  }
  return false;
}

// monic quartic = (x^2+ax+b)(x^2+cx+e) with integer coefficients?
bool quartic_splits(const std::vector<Int>& co) {
  const Int p = co[3], q = co[2], r = co[1], s = co[0];
  std::vector<Int> bs;
  if (s == 0) return true;  // covered by root test, but keep safe
  for (const Int& d : divisors_of(s)) { bs.push_back(d); bs.push_back(-d); }
  for (const Int& b : bs) {
    if (s % b != 0) continue;
    Int e = s / b;
    // a + c = p, a*c = q - b - e  =>  a, c roots of t^2 - p t + (q-b-e)
    Int disc = p * p - 4 * (q - b - e);
    if (disc < 0) continue;
    Int root = sqrt(disc);
    if (root * root != disc) continue;
    for (int sgn : {1, -1}) {
      Int two_a = p + sgn * root;
      if (two_a % 2 != 0) continue;
      Int a = two_a / 2, c = p - a;
      if (a * e + b * c == r) return true;
    }
  }
  return false;
}

}  // namespace

std::string NumberField::spec_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < min_poly.size(); ++i) {
    if (i) os << ',';
    os << min_poly[i];
  }
  return os.str();
}

NumberField make_field(std::vector<Int> coeffs, bool assume_irreducible) {
  if (coeffs.size() < 2) throw Error(Errc::DegreeZero, "polynomial must have degree >= 1");
  if (coeffs.back() != 1) throw Error(Errc::NotMonic, "minimal polynomial must be monic");
  const int d = static_cast<int>(coeffs.size()) - 1;

  if (!assume_irreducible && d > 1) {
    if (has_rational_root(coeffs))
      throw Error(Errc::ReducibleDetected, "polynomial has a rational root");
    if (d == 4 && quartic_splits(coeffs))
      throw Error(Errc::ReducibleDetected, "polynomial splits into two quadratics");
    if (d > 4)
      throw Error(Errc::ReducibleDetected,
                  "irreducibility not checked for degree > 4; construct with assume_irreducible");
  }

  NumberField F;
  F.degree = d;
  F.min_poly = std::move(coeffs);

  // theta^m reduced mod min_poly for m = 0 .. 2d-2
  std::vector<std::vector<Int>> pows(2 * d - 1, std::vector<Int>(d, 0));
  pows[0][0] = 1;
  for (int m = 1; m <= 2 * d - 2; ++m) {
    std::vector<Int> cur(d, 0);
    Int carry = pows[m - 1][d - 1];
    for (int i = d - 1; i > 0; --i) cur[i] = pows[m - 1][i - 1];
    cur[0] = 0;
    if (carry != 0)
      for (int i = 0; i < d; ++i) cur[i] -= carry * F.min_poly[i];
    pows[m] = std::move(cur);
  }

  F.mult_table.assign(static_cast<size_t>(d) * d * d, Int(0));
  Int maxc = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) {
        const Int& v = pows[i + j][m];
        F.mult_table[(static_cast<size_t>(i) * d + j) * d + m] = v;
        if (abs(v) > maxc) maxc = abs(v);
      }
  F.submult_bound = Int(d) * maxc;

  if (d == 1) {
    F.discriminant = 1;
  } else {
    std::vector<Int> deriv(d);
    for (int i = 1; i <= d; ++i) deriv[i - 1] = Int(i) * F.min_poly[i];
    Int res = resultant(F.min_poly, deriv);
    int sgn = ((static_cast<long long>(d) * (d - 1) / 2) % 2 == 0) ? 1 : -1;
    F.discriminant = Int(sgn) * res;
  }
  return F;
}

Elem elem(const NumberField& F, std::vector<Int> coords) {
  if (static_cast<int>(coords.size()) != F.degree)
    throw Error(Errc::BadLiteral, "coordinate count does not match field degree");
  Elem e;
  e.fld = &F;
  e.c = IVec(F.degree);
  for (int i = 0; i < F.degree; ++i) e.c[i] = std::move(coords[i]);
  return e;
}

Elem elem_ll(const NumberField& F, const std::vector<long long>& coords) {
  std::vector<Int> v(coords.begin(), coords.end());
  return elem(F, std::move(v));
}

Elem zero_elem(const NumberField& F) { return elem(F, std::vector<Int>(F.degree, 0)); }

Elem one_elem(const NumberField& F) {
  std::vector<Int> v(F.degree, 0);
  v[0] = 1;
  return elem(F, std::move(v));
}

Elem theta_elem(const NumberField& F) {
  if (F.degree == 1) return elem(F, {-F.min_poly[0]});  // theta is the root of x + c0
  std::vector<Int> v(F.degree, 0);
  v[1] = 1;
  return elem(F, std::move(v));
}

namespace {
void check_same_field(const Elem& a, const Elem& b) {
  if (a.fld != b.fld && !a.fld->same_as(*b.fld))
    throw Error(Errc::FieldMismatch, "elements belong to different fields");
}
}  // namespace

Elem operator+(const Elem& a, const Elem& b) {
  check_same_field(a, b);
  Elem r = a;
  r.c += b.c;
  return r;
}

Elem operator-(const Elem& a, const Elem& b) {
  check_same_field(a, b);
  Elem r = a;
  r.c -= b.c;
  return r;
}

Elem operator-(const Elem& a) {
  Elem r = a;
  r.c = -r.c;
  return r;
}

Elem operator*(const Elem& a, const Elem& b) {
  check_same_field(a, b);
  const NumberField& F = *a.fld;
  const int d = F.degree;
  Elem r = zero_elem(F);
  for (int i = 0; i < d; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.c[j] == 0) continue;
      Int prod = a.c[i] * b.c[j];
      for (int m = 0; m < d; ++m) {
        const Int& t = F.entry(i, j, m);
        if (t != 0) r.c[m] += prod * t;
      }
    }
  }
  return r;
}

bool operator==(const Elem& a, const Elem& b) {
  if (!a.fld->same_as(*b.fld)) return false;
  return a.c == b.c;
}

IMat mult_matrix(const Elem& a) {
  const NumberField& F = *a.fld;
  const int d = F.degree;
  IMat m = IMat::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (a.c[i] == 0) continue;
      for (int row = 0; row < d; ++row) {
        const Int& t = F.entry(i, j, row);
        if (t != 0) m(row, j) += a.c[i] * t;
      }
    }
  return m;
}

Int elem_norm(const Elem& a) { return det_bareiss(mult_matrix(a)); }

Int geom_norm(const Elem& a) {
  Int s = 0;
  for (int i = 0; i < a.c.size(); ++i) s += abs(a.c[i]);
  return s;
}

std::string elem_str(const Elem& a) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < a.c.size(); ++i) {
    if (i) os << ',';
    os << a.c[i];
  }
  os << ')';
  return os.str();
}

namespace {
void ball_rec(int d, int pos, long long budget, std::vector<long long>& coords,
              const std::function<void(const std::vector<long long>&)>& f) {
  if (pos == d) {
    f(coords);
    return;
  }
  for (long long v = -budget; v <= budget; ++v) {
    coords[pos] = v;
    ball_rec(d, pos + 1, budget - std::abs(v), coords, f);
  }
}
}  // namespace

void for_each_ball_point(int d, long long x,
                         const std::function<void(const std::vector<long long>&)>& f) {
  std::vector<long long> coords(d, 0);
  ball_rec(d, 0, x, coords, f);
}

std::vector<Elem> ball_enum(const NumberField& F, long long x) {
  std::vector<Elem> out;
  out.reserve(ball_count(F.degree, x));
  for_each_ball_point(F.degree, x,
                      [&](const std::vector<long long>& c) { out.push_back(elem_ll(F, c)); });
  return out;
}

unsigned long long ball_count(int d, long long x) {
  // sum over j of 2^j C(d,j) C(x,j): choose j nonzero coordinates, signs, and
  // a composition of the budget
  unsigned long long total = 0;
  for (int j = 0; j <= d; ++j) {
    if (x < j) break;
    unsigned long long term = 1;
    for (int i = 0; i < j; ++i) term = term * 2 * (d - i) / (i + 1);
    // C(x, j) without overflow for desk-scale x
    unsigned long long binom = 1;
    for (int i = 0; i < j; ++i) binom = binom * static_cast<unsigned long long>(x - i) / (i + 1);
    total += term * binom;
  }
  return total;
}

}  // namespace kfree
