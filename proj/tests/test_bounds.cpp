#include <doctest.h>

#include <cmath>
#include <functional>

#include "gl2/bounds.hpp"
#include "reference_tables.hpp"

using namespace gl2;

namespace {

const ExplorationResult& explored(int n) {
  static std::vector<ExplorationResult> cache(6);
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (slot.n == 0) slot = isometry_bfs(n, IsometryGroup::Sym);
  return slot;
}

const std::vector<PolyCoeffs>& bundled() {
  static const auto c = read_coeffs_file(GL2_COEFFS_FILE);
  return c;
}

// Smallest l with sum_{d<=l} R(k)^{d div k} R(d mod k) >= |G|, written out
// directly with a fresh power per term.
int ell_oracle(const std::vector<BigInt>& r, int k, const BigInt& order) {
  BigInt sum = 0;
  for (int l = 0;; ++l) {
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), r[static_cast<std::size_t>(k)].get_mpz_t(), static_cast<unsigned long>(l / k));
    sum += p * r[static_cast<std::size_t>(l % k)];
    if (sum >= order) return l;
  }
}

void for_each_partition(int d, int max_part, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (d == 0) {
    f(cur);
    return;
  }
  for (int p = std::min(d, max_part); p >= 1; --p) {
    cur.push_back(p);
    for_each_partition(d - p, p, cur, f);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(gl_order(1) == 1);
  CHECK(gl_order(3) == 168);
  CHECK(gl_order(7) == BigInt("163849992929280"));
  for (int n = 1; n <= 5; ++n) {
    BigInt sum = 0;
    for (const auto& s : explored(n).sphere_sizes) sum += s;
    CHECK(sum == gl_order(n));
  }
}

TEST_CASE("sphere profiles") {
  const auto p5 = sphere_profile_from(explored(5), 3);
  CHECK(p5.sizes == std::vector<BigInt>{1, 20, 260, 2570});
  CHECK(p5.provenance[3] == Provenance::Explored);

  const auto p20 = sphere_profile_from(bundled(), 20, 2);
  CHECK(p20.sizes == std::vector<BigInt>{1, 380, 79040});
  const auto p0 = sphere_profile_from(bundled(), 7, 0);
  CHECK(p0.sizes == std::vector<BigInt>{1});
  CHECK_THROWS_AS(sphere_profile_from(bundled(), 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(sphere_profile_from(bundled(), 30, 11), std::invalid_argument);
  const auto partial = isometry_bfs(4, IsometryGroup::Sym, SearchLimits{.max_depth = 2});
  CHECK_THROWS_AS(sphere_profile_from(partial, 3), HorizonError);
}

TEST_CASE("diameter lower bounds from bundled coefficients") {
  for (int n = 20; n <= 30; ++n) {
    const auto p = sphere_profile_from(bundled(), n, 10);
    CHECK(ell(p) == tables::kEll10[n - 20]);
    CHECK(ell(p) == ell_oracle(p.sizes, 10, gl_order(n)));
  }
  CHECK(ell(sphere_profile_from(bundled(), 40, 10)) == tables::kEll10At40);
  CHECK(n0_upper(10, bundled(), 20, 40) == 20);
  CHECK_FALSE(n0_upper(10, bundled(), 40, 20).has_value());
}

TEST_CASE("lower bound soundness on explored groups") {
  for (int n = 2; n <= 5; ++n) {
    const auto& res = explored(n);
    int prev = 0;
    for (int k = 1; k <= res.depth(); ++k) {
      const auto p = sphere_profile_from(res, k);
      const int l = ell(p);
      CHECK(l == ell_oracle(p.sizes, k, gl_order(n)));
      CHECK(l <= res.depth());
      if (k > 1 && k <= 4) CHECK(l >= prev);
      prev = l;
    }
  }
  const auto p3 = sphere_profile_from(explored(3), 6);
  CHECK(ell(p3) <= 6);
}

TEST_CASE("quadratic bound") {
  const auto q2 = quadratic_bound(2);
  CHECK(q2.approx == doctest::Approx(2.0 / std::log2(3.0)));
  CHECK(q2.ceiling == 2);
  CHECK_FALSE(quadratic_bound_exceeds(2, 3));
  CHECK_FALSE(quadratic_bound_exceeds(29, 84));
  CHECK(quadratic_bound_exceeds(30, 87));
  CHECK(quadratic_threshold(2, 100) == 30);
  CHECK_FALSE(quadratic_threshold(2, 29).has_value());
  for (int n = 2; n <= 60; ++n) {
    const auto q = quadratic_bound(n);
    // The ceiling is the exact crossing point of the integer test.
    CHECK(quadratic_bound_exceeds(n, q.ceiling - 1));
    CHECK_FALSE(quadratic_bound_exceeds(n, q.ceiling));
    CHECK(q.approx == doctest::Approx(double(n * n - n) / std::log2(double(n * n - n + 1))));
  }
}

TEST_CASE("k = 1 bound against the quadratic bound") {
  std::vector<PolyCoeffs> f1{bundled()[0]};
  for (int n = 2; n <= 40; ++n) {
    const auto p = sphere_profile_from(f1, n, 1);
    CHECK(p.sizes[1] == n * (n - 1));
    // (n^2-n+1)^l >= |G| > 2^(n^2-n) forces l above the quadratic bound.
    CHECK(ell(p) >= quadratic_bound(n).ceiling);
  }
  const auto n0 = n0_upper(1, f1, 2, 100);
  REQUIRE(n0.has_value());
  CHECK(*n0 <= 30);
}

TEST_CASE("sphere product inequality") {
  const std::vector<int> p22{2, 2};
  CHECK(product_inequality_check(explored(4), 4, p22));
  const std::vector<int> p33{3, 3};
  CHECK(product_inequality_check(explored(5), 6, p33));
  const std::vector<int> whole{5};
  CHECK(product_inequality_check(explored(5), 5, whole));
  const std::vector<int> bad{2, 1};
  CHECK_THROWS_AS(product_inequality_check(explored(5), 4, bad), std::invalid_argument);
  for (int n = 4; n <= 5; ++n) {
    for (int d = 1; d <= 6; ++d) {
      std::vector<int> cur;
      for_each_partition(d, d, cur, [&](const std::vector<int>& parts) {
        CHECK(product_inequality_check(explored(n), d, parts));
      });
    }
  }
}
