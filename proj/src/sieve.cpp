#include "kfree/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kfree {

BallIndex BallIndex::build(int d, long long radius) {
  BallIndex b;
  b.d = d;
  b.radius = radius;
  double cells = 1;
  for (int i = 0; i < d; ++i) cells *= static_cast<double>(2 * radius + 1);
  if (cells > 3e8)
    throw Error(Errc::UnsupportedDimension, "dense ball index exceeds the memory budget");
  b.box.assign(static_cast<size_t>(cells), kOutside);
  b.points.reserve(ball_count(d, radius));
  const long long w = 2 * radius + 1;
  for_each_ball_point(d, radius, [&](const std::vector<long long>& c) {
    size_t cell = 0;
    for (int i = 0; i < d; ++i) cell = cell * w + static_cast<size_t>(c[i] + radius);
    b.box[cell] = static_cast<uint32_t>(b.points.size());
    b.points.emplace_back(c.begin(), c.end());
  });
  return b;
}

std::optional<uint32_t> BallIndex::index_of(const std::vector<long long>& coords) const {
  if (static_cast<int>(coords.size()) != d) return std::nullopt;
  size_t cell = 0;
  const long long w = 2 * radius + 1;
  for (int i = 0; i < d; ++i) {
    if (coords[i] < -radius || coords[i] > radius) return std::nullopt;
    cell = cell * w + static_cast<size_t>(coords[i] + radius);
  }
  uint32_t v = box[cell];
  if (v == kOutside) return std::nullopt;
  return v;
}

std::optional<bool> SieveGrid::bit_of(const std::vector<long long>& coords) const {
  auto i = idx.index_of(coords);
  if (!i) return std::nullopt;
  return bits[*i] != 0;
}

unsigned long long SieveGrid::ones() const {
  unsigned long long n = 0;
  for (uint8_t b : bits) n += b;
  return n;
}

double SieveGrid::density() const {
  return static_cast<double>(ones()) / static_cast<double>(bits.size());
}

std::vector<std::vector<long long>> lattice_points_in_ball(const Ideal& a, long long x) {
  const int d = a.fld->degree;
  const IMat& B = a.basis;
  std::vector<std::vector<long long>> out;
  std::vector<Int> v(d, 0);       // accumulated coordinates, rows i..d-1 final
  std::vector<long long> coords(d);
  // choose t_i for i = d-1 .. 0; row i of B*t is B(i,i)*t_i + (already fixed part)
  auto rec = [&](auto&& self, int i, Int budget) -> void {
    if (i < 0) {
      for (int r = 0; r < d; ++r) coords[r] = to_ll(v[r]);
      out.push_back(coords);
      return;
    }
    const Int& diag = B(i, i);
    Int lo = -floor_div(budget + v[i], diag);      // ceil((-budget - c) / diag)
    Int hi = floor_div(budget - v[i], diag);
    for (Int t = lo; t <= hi; ++t) {
      Int row = diag * t + v[i];
      std::vector<Int> saved;
      if (t != 0) {
        saved.assign(v.begin(), v.begin() + i + 1);
        for (int r = 0; r <= i; ++r) v[r] += t * B(r, i);
      }
      self(self, i - 1, budget - abs(row));
      if (t != 0)
        for (int r = 0; r <= i; ++r) v[r] = saved[r];
    }
  };
  rec(rec, d - 1, Int(x));
  return out;
}

SieveGrid sieve(const NumberField& F, int k, long long radius) {
  if (k < 2) throw Error(Errc::BadLiteral, "sieve exponent must be at least 2");
  SieveGrid g;
  g.fld = &F;
  g.k = k;
  g.radius = radius;
  g.idx = BallIndex::build(F.degree, radius);
  g.bits.assign(g.idx.count(), 1);

  Int max_norm = 0;
  std::vector<Int> cv(F.degree);
  for (const auto& p : g.idx.points) {
    for (int i = 0; i < F.degree; ++i) cv[i] = p[i];
    Int n = abs(elem_norm(elem(F, cv)));
    if (n > max_norm) max_norm = n;
  }
  g.max_elem_norm = max_norm;

  // largest prime norm L with L^k <= max_norm
  long long limit = static_cast<long long>(
      std::pow(static_cast<double>(max_norm), 1.0 / k)) + 2;
  auto powk = [&](long long n) {
    Int r = 1;
    for (int i = 0; i < k; ++i) r *= n;
    return r;
  };
  while (limit > 0 && powk(limit) > max_norm) --limit;

  std::vector<long long> zero(F.degree, 0);
  if (auto z = g.idx.index_of(zero)) g.bits[*z] = 0;
  for (const PrimeIdeal& p : primes_by_norm(F, limit)) {
    Ideal pk = power(p.ideal, k);
    for (const auto& pt : lattice_points_in_ball(pk, radius)) {
      auto i = g.idx.index_of(pt);
      g.bits[*i] = 0;
    }
  }
  return g;
}

CrosscheckReport crosscheck_sample(const SieveGrid& grid, int n, uint64_t seed) {
  SplitMix64 rng(seed);
  CrosscheckReport rep;
  const NumberField& F = *grid.fld;
  std::vector<Int> cv(F.degree);
  for (int s = 0; s < n; ++s) {
    uint32_t i;
    do {
      i = static_cast<uint32_t>(rng.below(grid.idx.count()));
    } while (std::all_of(grid.idx.points[i].begin(), grid.idx.points[i].end(),
                         [](int32_t c) { return c == 0; }));
    for (int j = 0; j < F.degree; ++j) cv[j] = grid.idx.points[i][j];
    Elem a = elem(F, cv);
    int mu = mobius_mu_k(principal(a), grid.k);
    ++rep.samples;
    if ((mu != 0) != grid.bit_at(i)) {
      ++rep.mismatches;
      throw Error(Errc::MismatchFound,
                  "sieve bit disagrees with ideal factorization at " + elem_str(a));
    }
  }
  return rep;
}

void export_grid_csv(const SieveGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadLiteral, "cannot open " + path + " for writing");
  for (int i = 0; i < grid.fld->degree; ++i) out << 'a' << i << ',';
  out << "kfree\n";
  for (size_t i = 0; i < grid.idx.count(); ++i) {
    for (int32_t c : grid.idx.points[i]) out << c << ',';
    out << int(grid.bits[i]) << '\n';
  }
}

void export_grid_pgm(const SieveGrid& grid, const std::string& path) {
  if (grid.fld->degree != 2)
    throw Error(Errc::UnsupportedDimension, "bitmap export is defined for degree 2 only");
  const long long s = grid.radius / 2;
  if (s < 1) throw Error(Errc::RadiusTooSmall, "radius too small for a bitmap");
  const long long w = 2 * s + 1;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadLiteral, "cannot open " + path + " for writing");
  out << "P5\n" << w << ' ' << w << "\n1\n";
  std::vector<long long> c(2);
  for (long long row = 0; row < w; ++row) {
    c[1] = s - row;  // top row = largest second coordinate
    for (long long col = 0; col < w; ++col) {
      c[0] = col - s;
      bool bit = *grid.bit_of(c);
      out.put(bit ? '\0' : '\1');
    }
  }
}

}  // namespace kfree
