#pragma once

#include <optional>
#include <vector>

#include "kfree/primes.hpp"

namespace kfree {

// Dense coordinate-box index over the L1 ball: maps coordinates to the
// position of the point in lexicographic enumeration order, O(1) both ways.
struct BallIndex {
  int d = 0;
  long long radius = 0;
  std::vector<uint32_t> box;                 // (2x+1)^d cells, UINT32_MAX outside ball
  std::vector<std::vector<int32_t>> points;  // enumeration order -> coordinates
  static constexpr uint32_t kOutside = UINT32_MAX;

  static BallIndex build(int d, long long radius);
  std::optional<uint32_t> index_of(const std::vector<long long>& coords) const;
  size_t count() const { return points.size(); }
};

struct SieveGrid {
  const NumberField* fld = nullptr;
  int k = 0;
  long long radius = 0;
  BallIndex idx;
  std::vector<uint8_t> bits;  // 1 = k-free; bit of 0 is 0 by convention
  Int max_elem_norm;          // exact max of |N(a)| over the ball

  bool bit_at(uint32_t i) const { return bits[i] != 0; }
  std::optional<bool> bit_of(const std::vector<long long>& coords) const;
  unsigned long long ones() const;
  double density() const;
};

// Lattice points of the ideal with L1 norm <= x, each exactly once, by
// bounded coefficient search over the triangular basis with L1-budget pruning.
std::vector<std::vector<long long>> lattice_points_in_ball(const Ideal& a, long long x);

// Clears bits on translates of p^k for every prime with N(p)^k <= max |N(a)|
// over the ball (exact pre-pass bound: no prime can be missed).
SieveGrid sieve(const NumberField& F, int k, long long radius);

struct CrosscheckReport {
  int samples = 0;
  int mismatches = 0;
};

// Recomputes mu^(k) via ideal factorization on deterministic pseudorandom
// nonzero ball points; throws MismatchFound if the grid disagrees anywhere.
CrosscheckReport crosscheck_sample(const SieveGrid& grid, int n, uint64_t seed);

void export_grid_csv(const SieveGrid& grid, const std::string& path);

// Binary PGM (maxval 1) of the inscribed coordinate square |a_i| <= floor(x/2),
// one pixel per lattice point, 0 = k-free. d = 2 only.
void export_grid_pgm(const SieveGrid& grid, const std::string& path);

}  // namespace kfree
