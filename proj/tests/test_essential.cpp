#include <doctest.h>

#include <random>
#include <sstream>

#include "gl2/bounds.hpp"
#include "gl2/essential.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

#ifndef GL2_COEFFS_FILE
#error "GL2_COEFFS_FILE must point at the bundled coefficient file"
#endif

using namespace gl2;

namespace {

const ExplorationResult& explored(int n, IsometryGroup g = IsometryGroup::Sym) {
  static std::vector<ExplorationResult> sym(6), ti(6);
  auto& slot = (g == IsometryGroup::Sym ? sym : ti)[static_cast<std::size_t>(n)];
  if (slot.n == 0) slot = isometry_bfs(n, g);
  return slot;
}

PolyCoeffs coeffs_from_table(int d) {
  PolyCoeffs c{d, {}};
  for (const auto& s : tables::low_coeffs()[static_cast<std::size_t>(d)]) c.a.emplace_back(s);
  return c;
}

PolyCoeffs extracted(int d, IsometryGroup g) {
  const auto res = isometry_bfs(2 * d, g, SearchLimits{.max_depth = d});
  return extract_coeffs(classify(res), d);
}

}  // namespace

TEST_CASE("binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(40, 20) == BigInt("137846528820"));
}

TEST_CASE("classification cells") {
  const auto t = classify(explored(4));
  CHECK(t.order == 4);
  CHECK(t.d_max == 9);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.at(1, 2) == 12);
  CHECK(t.at(1, 3) == 0);
  CHECK(t.at(2, 2) + t.at(2, 3) + t.at(2, 4) == 96);
  const auto& res = explored(4);
  for (int d = 0; d <= t.d_max; ++d) {
    BigInt row = 0;
    for (int m = 0; m <= 4; ++m) {
      row += t.at(d, m);
      if (m > 2 * d) CHECK(t.at(d, m) == 0);
    }
    CHECK(row == res.sphere_sizes[static_cast<std::size_t>(d)]);
    if (2 * d <= 4) CHECK(t.at(d, 2 * d) > 0);
  }
  // Thread count does not change the table.
  const auto t1 = classify(explored(5), 1);
  const auto t4 = classify(explored(5), 4);
  CHECK(t1.cells == t4.cells);

  std::ostringstream csv;
  write_class_table_csv(csv, t);
  CHECK(csv.str().rfind("d,m,size\n0,0,1\n", 0) == 0);
}

TEST_CASE("coefficient extraction for d = 1..3") {
  for (int d = 1; d <= 3; ++d) {
    CAPTURE(d);
    const auto sym = extracted(d, IsometryGroup::Sym);
    CHECK(sym == coeffs_from_table(d));
    CHECK(extracted(d, IsometryGroup::SymTI) == sym);
  }
}

TEST_CASE("coefficient extraction for d = 4" * doctest::timeout(600)) {
  const auto sym = extracted(4, IsometryGroup::Sym);
  CHECK(sym == coeffs_from_table(4));
  CHECK(extracted(4, IsometryGroup::SymTI) == sym);
}

TEST_CASE("extraction preconditions") {
  const auto t = classify(explored(4));
  CHECK_THROWS_AS(extract_coeffs(t, 3), std::invalid_argument);
  CHECK_THROWS_AS(extract_coeffs(classify(isometry_bfs(4, IsometryGroup::Sym, SearchLimits{.max_depth = 1})), 2),
                  HorizonError);
  // A cell that is not a multiple of C(2d,m) is a consistency failure.
  auto broken = t;
  broken.cells[2][3] += 1;
  CHECK_THROWS_AS(extract_coeffs(broken, 2), ConsistencyError);
}

TEST_CASE("polynomial evaluation") {
  const auto f1 = coeffs_from_table(1);
  const auto f2 = coeffs_from_table(2);
  CHECK(eval_poly(f2, 4) == 96);
  CHECK(eval_poly(f1, 7) == 42);
  for (long n = 4; n <= 10; ++n) {
    CHECK(eval_poly(f2, n) == (n * n * n * n - 5 * n * n + 4 * n) / 2);
  }
  CHECK(poly_is_proven(f2, 4));
  CHECK_FALSE(poly_is_proven(f2, 3));
  const auto mono = to_monomials(f2);
  REQUIRE(mono.size() == 5);
  CHECK(mono[4] == mpq_class(1, 2));
  CHECK(mono[3] == 0);
  CHECK(mono[2] == mpq_class(-5, 2));
  CHECK(mono[1] == 2);
  CHECK(mono[0] == 0);
}

TEST_CASE("polynomials match independent explorations") {
  for (int d = 1; d <= 3; ++d) {
    const auto c = extracted(d, IsometryGroup::Sym);
    // Proven range, and below it where agreement is only observed.
    for (int n = 1; n <= 5; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      const auto& res = explored(n);
      const BigInt actual =
          d <= res.depth() ? res.sphere_sizes[static_cast<std::size_t>(d)] : BigInt(0);
      CHECK(eval_poly(c, n) == actual);
    }
    for (int n = 6; n <= 7; ++n) {
      CHECK(eval_poly(c, n) == BigInt(tables::sphere_sizes()[static_cast<std::size_t>(n)][static_cast<std::size_t>(d)]));
    }
  }
}

TEST_CASE("orbit counts saturate at order 2d") {
  const auto& r4 = explored(4);
  const auto& r5 = explored(5);
  CHECK(r4.orbit_counts[2] == r5.orbit_counts[2]);
  CHECK(r4.orbit_counts[2] == 6);
}

TEST_CASE("embedding never increases distance") {
  std::mt19937_64 rng(31);
  for (int m = 2; m <= 4; ++m) {
    for (int n = m; n <= 5; ++n) {
      for (int rep = 0; rep < 50; ++rep) {
        const auto x = oracle::random_invertible(rng, m);
        CHECK(distance_of(explored(n), embed(x, n)) <= distance_of(explored(m), x));
      }
    }
  }
}

TEST_CASE("orbit growth identity") {
  CHECK(orbit_growth_check(matrix_of(2, {1, 2}), 4));
  CHECK(orbit_growth_check(identity(2), 5));
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 30; ++rep) {
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    const int n = std::uniform_int_distribution<int>(m, 6)(rng);
    CHECK(orbit_growth_check(oracle::random_invertible(rng, m), n));
  }
  // Direct cross-check of one instance against the oracle enumeration.
  const auto t12 = matrix_of(2, {1, 2});
  CHECK(oracle::enumerate_orbit(t12, false).images.size() == 2);
  CHECK(oracle::enumerate_orbit(embed(t12, 4), false).images.size() == 12);
}

TEST_CASE("witness matrices") {
  for (int d = 1; d <= 3; ++d) {
    const auto w = witness_matrix(d);
    CHECK(w.order() == 2 * d);
    CHECK(essential_count(w) == 2 * d);
    if (2 * d <= 5) CHECK(distance_of(explored(2 * d), w) == d);
  }
  CHECK(witness_matrix(1) == matrix_of(2, {1, 2}));
  const auto w4 = witness_matrix(4);
  CHECK(essential_count(w4) == 8);
  const auto r8 = isometry_bfs(8, IsometryGroup::Sym, SearchLimits{.max_depth = 4});
  CHECK(distance_of(r8, w4) == 4);
  CHECK_THROWS_AS(witness_matrix(5), std::invalid_argument);
}

TEST_CASE("coefficient files") {
  const auto bundled = read_coeffs_file(GL2_COEFFS_FILE);
  REQUIRE(bundled.size() == 10);
  for (int d = 1; d <= 10; ++d) {
    const auto& c = bundled[static_cast<std::size_t>(d - 1)];
    CHECK(c.d == d);
    CHECK(c.a.size() == static_cast<std::size_t>(2 * d + 1));
    CHECK(c.a[0] == 0);
    CHECK(c.a[1] == 0);
    CHECK(c.a.back() > 0);
  }
  for (int d = 1; d <= 4; ++d) CHECK(bundled[static_cast<std::size_t>(d - 1)] == coeffs_from_table(d));

  std::ostringstream out;
  write_coeffs(out, bundled);
  std::istringstream back(out.str());
  CHECK(read_coeffs(back) == bundled);

  std::istringstream comment("# header\n\n2,0,0,2,18,12 # trailing\n");
  CHECK(read_coeffs(comment).at(0) == coeffs_from_table(2));
  std::istringstream short_line("2,0,0,2\n");
  CHECK_THROWS_AS(read_coeffs(short_line), std::invalid_argument);
  std::istringstream junk("1,0,x,2\n");
  CHECK_THROWS_AS(read_coeffs(junk), std::invalid_argument);
  CHECK_THROWS(read_coeffs_file("/nonexistent/coeffs"));
}
