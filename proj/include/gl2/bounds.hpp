#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gl2/bfs.hpp"
#include "gl2/essential.hpp"

namespace gl2 {

/// prod_{i<n} (2^n - 2^i).
BigInt gl_order(int n);

enum class Provenance { Explored, Polynomial, Tabulated };

struct SphereProfile {
  int n = 0;
  std::vector<BigInt> sizes;  // R(0..k), R(0) = 1
  std::vector<Provenance> provenance;

  int k() const { return static_cast<int>(sizes.size()) - 1; }
};

/// R_n(0..k) taken from an exploration of GL(n,2).
SphereProfile sphere_profile_from(const ExplorationResult& res, int k);
/// R_n(0..k) from sphere-size polynomials. Each f_d needs n >= 2d.
SphereProfile sphere_profile_from(std::span<const PolyCoeffs> coeffs, int n, int k);

/// Smallest l >= 1 with sum_{d<=l} R(k)^{d/k} R(d%k) >= |GL(n,2)|.
int ell(const SphereProfile& profile);

struct QuadraticBound {
  double approx = 0;  // for display only
  long ceiling = 0;   // exact smallest integer >= the bound
};

/// (n^2-n)/log2(n^2-n+1), n >= 2.
QuadraticBound quadratic_bound(int n);
/// Exact test of quadratic_bound(n) > t via 2^(n^2-n) > (n^2-n+1)^t.
bool quadratic_bound_exceeds(int n, long t);
/// Smallest n in [lo, hi] whose quadratic bound exceeds 3(n-1).
std::optional<int> quadratic_threshold(int lo, int hi);

/// Smallest n in [lo, hi] with l_n(k) > 3(n-1), using polynomial spheres;
/// orders below 2k are skipped.
std::optional<int> n0_upper(int k, std::span<const PolyCoeffs> coeffs, int lo, int hi);

/// |R(d)| <= prod |R(d_i)| for a partition of d.
bool product_inequality_check(const ExplorationResult& res, int d, std::span<const int> partition);

}  // namespace gl2
