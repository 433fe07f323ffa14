#include "kfree/ideal.hpp"

#include <algorithm>
#include <sstream>

namespace kfree {

namespace {

// Extended gcd: g = gcd(a,b) >= 0 with u*a + v*b = g.
void xgcd(const Int& a, const Int& b, Int& g, Int& u, Int& v) {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  g = r0; u = s0; v = t0;
}

// Bottom-up column reduction: after the call, for each row r = d-1 .. 0 the
// only columns with a nonzero entry in row r are the last d-r ones. Columns
// 0 .. n-d-1 end up identically zero (they span the kernel when transform is
// tracked). Throws if the columns do not span a full-rank lattice.
void triangularize(IMat& w, IMat* transform) {
  const int d = static_cast<int>(w.rows());
  const int n = static_cast<int>(w.cols());
  if (n < d) throw Error(Errc::ZeroIdeal, "fewer generators than the rank requires");
  int t = n - 1;
  for (int r = d - 1; r >= 0; --r, --t) {
    for (int c = t - 1; c >= 0; --c) {
      if (w(r, c) == 0) continue;
      if (w(r, t) == 0) {
        w.col(t).swap(w.col(c));
        if (transform) transform->col(t).swap(transform->col(c));
        continue;
      }
      Int g, u, v;
      xgcd(w(r, t), w(r, c), g, u, v);
      Int a = w(r, t) / g, b = w(r, c) / g;
      // [col_t col_c] *= [[u, -b],[v, a]], determinant u*a + v*b = 1
      IVec ct = u * w.col(t) + v * w.col(c);
      IVec cc = a * w.col(c) - b * w.col(t);
      w.col(t) = ct;
      w.col(c) = cc;
      if (transform) {
        IVec ut = u * transform->col(t) + v * transform->col(c);
        IVec uc = a * transform->col(c) - b * transform->col(t);
        transform->col(t) = ut;
        transform->col(c) = uc;
      }
    }
    if (w(r, t) == 0)
      throw Error(Errc::ZeroIdeal, "generators span a rank-deficient lattice");
  }
}

Ideal finish(const NumberField& F, IMat basis) {
  const int d = F.degree;
  for (int j = 0; j < d; ++j)
    if (basis(j, j) < 0) basis.col(j) = -basis.col(j);
  for (int i = d - 1; i >= 0; --i)
    for (int j = i + 1; j < d; ++j) {
      Int q = floor_div(basis(i, j), basis(i, i));
      if (q != 0) basis.col(j) -= q * basis.col(i);
    }
  Ideal a;
  a.fld = &F;
  a.norm = 1;
  for (int j = 0; j < d; ++j) a.norm *= basis(j, j);
  a.basis = std::move(basis);
  return a;
}

void check_same_field(const Ideal& a, const Ideal& b) {
  if (a.fld != b.fld && !a.fld->same_as(*b.fld))
    throw Error(Errc::FieldMismatch, "ideals belong to different fields");
}

}  // namespace

bool operator==(const Ideal& a, const Ideal& b) {
  if (!a.fld->same_as(*b.fld)) return false;
  return a.norm == b.norm && a.basis == b.basis;
}

bool operator<(const Ideal& a, const Ideal& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  const int d = a.fld->degree;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (a.basis(i, j) != b.basis(i, j)) return a.basis(i, j) < b.basis(i, j);
  return false;
}

IMat hnf(const NumberField& F, IMat cols) {
  triangularize(cols, nullptr);
  const int d = F.degree;
  IMat basis = cols.rightCols(d);
  return finish(F, std::move(basis)).basis;
}

Ideal ideal_from_columns(const NumberField& F, IMat cols) {
  triangularize(cols, nullptr);
  IMat basis = cols.rightCols(F.degree);
  return finish(F, std::move(basis));
}

Ideal ideal_from_generators(const NumberField& F, const std::vector<Elem>& gens) {
  const int d = F.degree;
  IMat cols(d, static_cast<int>(gens.size()) * d);
  int c = 0;
  for (const Elem& g : gens) {
    if (g.fld != &F && !g.fld->same_as(F))
      throw Error(Errc::FieldMismatch, "generator from a different field");
    IMat m = mult_matrix(g);
    for (int j = 0; j < d; ++j) cols.col(c++) = m.col(j);
  }
  return ideal_from_columns(F, std::move(cols));
}

Ideal principal(const Elem& a) {
  if (a.is_zero()) throw Error(Errc::ZeroIdeal, "zero element generates the zero ideal");
  return ideal_from_columns(*a.fld, mult_matrix(a));
}

Ideal unit_ideal(const NumberField& F) {
  Ideal a;
  a.fld = &F;
  a.basis = IMat::Identity(F.degree, F.degree);
  a.norm = 1;
  return a;
}

Ideal sum_gcd(const Ideal& a, const Ideal& b) {
  check_same_field(a, b);
  const int d = a.fld->degree;
  IMat cols(d, 2 * d);
  cols << a.basis, b.basis;
  return ideal_from_columns(*a.fld, std::move(cols));
}

Ideal intersect_lcm(const Ideal& a, const Ideal& b) {
  check_same_field(a, b);
  const int d = a.fld->degree;
  // kernel of [A | -B]: columns u with A s = B t, s the top half
  IMat stacked(d, 2 * d);
  stacked << a.basis, -b.basis;
  IMat u = IMat::Identity(2 * d, 2 * d);
  triangularize(stacked, &u);
  IMat cols(d, d);
  for (int c = 0; c < d; ++c) cols.col(c) = a.basis * u.col(c).head(d);
  return ideal_from_columns(*a.fld, std::move(cols));
}

Ideal product(const Ideal& a, const Ideal& b) {
  check_same_field(a, b);
  const NumberField& F = *a.fld;
  const int d = F.degree;
  IMat cols(d, d * d);
  int c = 0;
  for (int i = 0; i < d; ++i) {
    Elem ai = elem(F, {a.basis.col(i).data(), a.basis.col(i).data() + d});
    IMat m = mult_matrix(ai);
    for (int j = 0; j < d; ++j) cols.col(c++) = m * b.basis.col(j);
  }
  return ideal_from_columns(F, std::move(cols));
}

Ideal power(const Ideal& a, int k) {
  if (k < 0) throw Error(Errc::BadLiteral, "negative ideal power");
  Ideal acc = unit_ideal(*a.fld);
  Ideal base = a;
  while (k > 0) {
    if (k & 1) acc = product(acc, base);
    k >>= 1;
    if (k) base = product(base, base);
  }
  return acc;
}

bool contains(const Ideal& a, const Elem& v) {
  const int d = a.fld->degree;
  IVec w = v.c;
  for (int i = d - 1; i >= 0; --i) {
    if (w[i] % a.basis(i, i) != 0) return false;
    Int q = w[i] / a.basis(i, i);
    if (q != 0) w -= q * a.basis.col(i);
  }
  return true;
}

bool divides(const Ideal& a, const Ideal& b) {
  check_same_field(a, b);
  const int d = a.fld->degree;
  if (b.norm % a.norm != 0) return false;
  for (int j = 0; j < d; ++j) {
    Elem col = elem(*b.fld, {b.basis.col(j).data(), b.basis.col(j).data() + d});
    if (!contains(a, col)) return false;
  }
  return true;
}

Elem reduce_mod(const Elem& v, const Ideal& a) {
  const int d = a.fld->degree;
  Elem r = v;
  for (int i = d - 1; i >= 0; --i) {
    Int q = floor_div(r.c[i], a.basis(i, i));
    if (q != 0) r.c -= q * a.basis.col(i);
  }
  return r;
}

std::vector<Elem> residues(const Ideal& a) {
  const NumberField& F = *a.fld;
  const int d = F.degree;
  std::vector<Elem> out;
  out.reserve(static_cast<size_t>(to_ll(a.norm)));
  std::vector<Int> digit(d, 0);
  while (true) {
    out.push_back(elem(F, digit));
    int i = d - 1;
    while (i >= 0) {
      digit[i] += 1;
      if (digit[i] < a.basis(i, i)) break;
      digit[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::string ideal_str(const Ideal& a) {
  std::ostringstream os;
  os << '[';
  for (int j = 0; j < a.fld->degree; ++j) {
    if (j) os << ';';
    Elem col = elem(*a.fld, {a.basis.col(j).data(), a.basis.col(j).data() + a.fld->degree});
    os << elem_str(col);
  }
  os << ']';
  return os.str();
}

}  // namespace kfree
