#include "gl2/bounds.hpp"

#include <cmath>

namespace gl2 {

BigInt gl_order(int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  BigInt result = 1;
  BigInt full = 1;
  mpz_mul_2exp(full.get_mpz_t(), full.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  for (int i = 0; i < n; ++i) {
    BigInt p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(i));
    result *= full - p;
  }
  return result;
}

SphereProfile sphere_profile_from(const ExplorationResult& res, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (k > res.max_complete_depth()) {
    throw HorizonError("sphere R(" + std::to_string(k) + ") is not known exactly from this exploration");
  }
  SphereProfile p;
  p.n = res.n;
  for (int d = 0; d <= k; ++d) {
    p.sizes.push_back(res.sphere_sizes[static_cast<std::size_t>(d)]);
    p.provenance.push_back(Provenance::Explored);
  }
  return p;
}

SphereProfile sphere_profile_from(std::span<const PolyCoeffs> coeffs, int n, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  SphereProfile p;
  p.n = n;
  p.sizes.push_back(1);
  p.provenance.push_back(Provenance::Explored);
  for (int d = 1; d <= k; ++d) {
    const PolyCoeffs* found = nullptr;
    for (const auto& c : coeffs) {
      if (c.d == d) found = &c;
    }
    if (!found) throw std::invalid_argument("no polynomial for distance " + std::to_string(d));
    if (!poly_is_proven(*found, n)) {
      throw std::invalid_argument("f_" + std::to_string(d) + " is only valid for n >= " + std::to_string(2 * d));
    }
    p.sizes.push_back(eval_poly(*found, n));
    p.provenance.push_back(Provenance::Polynomial);
  }
  return p;
}

int ell(const SphereProfile& profile) {
  const int k = profile.k();
  if (k < 1) throw std::invalid_argument("the bound needs at least R(1)");
  for (int d = 1; d <= k; ++d) {
    if (profile.sizes[static_cast<std::size_t>(d)] <= 0) throw std::invalid_argument("sphere sizes must be positive");
  }
  const BigInt target = gl_order(profile.n);
  const BigInt& rk = profile.sizes[static_cast<std::size_t>(k)];
  BigInt power = 1;  // R(k)^{q_k(d)}
  BigInt sum = 0;
  for (int l = 0;; ++l) {
    const int r = l % k;
    if (l > 0 && r == 0) power *= rk;
    sum += power * profile.sizes[static_cast<std::size_t>(r)];
    if (l >= 1 && sum >= target) return l;
  }
}

bool quadratic_bound_exceeds(int n, long t) {
  if (n < 2) throw std::invalid_argument("quadratic bound needs n >= 2");
  if (t < 0) return true;
  const unsigned long x = static_cast<unsigned long>(n) * static_cast<unsigned long>(n - 1);
  BigInt lhs = 1;
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), x);
  BigInt rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), x + 1, static_cast<unsigned long>(t));
  return lhs > rhs;
}

QuadraticBound quadratic_bound(int n) {
  if (n < 2) throw std::invalid_argument("quadratic bound needs n >= 2");
  const double x = static_cast<double>(n) * (n - 1);
  QuadraticBound b;
  b.approx = x / std::log2(x + 1);
  long t = 0;
  while (quadratic_bound_exceeds(n, t)) ++t;
  b.ceiling = t;
  return b;
}

std::optional<int> quadratic_threshold(int lo, int hi) {
  for (int n = std::max(lo, 2); n <= hi; ++n) {
    if (quadratic_bound_exceeds(n, 3L * (n - 1))) return n;
  }
  return std::nullopt;
}

std::optional<int> n0_upper(int k, std::span<const PolyCoeffs> coeffs, int lo, int hi) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  for (int n = std::max(lo, 2 * k); n <= hi; ++n) {
    if (ell(sphere_profile_from(coeffs, n, k)) > 3 * (n - 1)) return n;
  }
  return std::nullopt;
}

bool product_inequality_check(const ExplorationResult& res, int d, std::span<const int> partition) {
  int total = 0;
  for (int part : partition) {
    if (part < 1) throw std::invalid_argument("partition parts must be positive");
    total += part;
  }
  if (total != d) throw std::invalid_argument("parts do not sum to d");
  if (d > res.max_complete_depth()) throw HorizonError("sphere sizes beyond the explored depth");
  BigInt product = 1;
  for (int part : partition) product *= res.sphere_sizes[static_cast<std::size_t>(part)];
  return res.sphere_sizes[static_cast<std::size_t>(d)] <= product;
}

}  // namespace gl2
