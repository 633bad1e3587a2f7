#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gl2/isometry.hpp"
#include "oracles.hpp"

using namespace gl2;

namespace {

constexpr IsometryGroup kGroups[] = {IsometryGroup::Sym, IsometryGroup::SymTI};

}  // namespace

TEST_CASE("group naming") {
  CHECK(parse_isometry("sym") == IsometryGroup::Sym);
  CHECK(parse_isometry("sym-ti") == IsometryGroup::SymTI);
  CHECK(to_string(IsometryGroup::SymTI) == "sym-ti");
  CHECK_THROWS_AS(parse_isometry("full"), std::invalid_argument);
  CHECK(group_order(5, IsometryGroup::Sym) == 120);
  CHECK(group_order(5, IsometryGroup::SymTI) == 240);
}

TEST_CASE("act") {
  const auto m = parse_matrix("111,010,011");
  CHECK(act(Permutation::identity(3), false, m) == m);
  CHECK(act(Permutation::identity(3), true, m) == transpose_inverse(m));
  CHECK(act(Permutation::parse_cycles("(1 2)", 2), false, matrix_of(2, {1, 2})) == matrix_of(2, {2, 1}));
}

TEST_CASE("canonical form of small cases") {
  for (auto g : kGroups) {
    const auto id = canonicalize(identity(4), g);
    CHECK(id.key == identity(4));
    CHECK(id.orbit_size == 1);
  }
  std::set<std::uint64_t> keys;
  for (const auto& t : transvections(3)) {
    const auto info = canonicalize(matrix_of(3, t), IsometryGroup::Sym);
    keys.insert(info.key.bits());
    CHECK(info.orbit_size == 6);
  }
  CHECK(keys.size() == 1);
  const auto succ = successor_orbits(identity(3), IsometryGroup::Sym);
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].orbit_size == 6);
}

TEST_CASE("fast canonicalizer matches enumeration") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 1000; ++rep) {
      const auto m = oracle::random_invertible(rng, n);
      for (auto g : kGroups) {
        const auto fast = canonicalize(m, g);
        REQUIRE(fast == canonicalize_reference(m, g));
        CHECK(canonicalize(fast.key, g).key == fast.key);
      }
    }
  }
  // Structured inputs with large stabilizers.
  for (int n = 2; n <= 7; ++n) {
    for (auto g : kGroups) {
      std::vector<int> shift(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) shift[static_cast<std::size_t>(i)] = (i + 1) % n + 1;
      const auto cyc = perm_matrix(Permutation::from_images(shift));
      CHECK(canonicalize(cyc, g) == canonicalize_reference(cyc, g));
      for (const auto& t : transvections(n)) {
        const auto m = matrix_of(n, t);
        CHECK(canonicalize(m, g) == canonicalize_reference(m, g));
      }
    }
  }
}

TEST_CASE("orbit-stabilizer against explicit orbit enumeration") {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      const auto m = oracle::random_invertible(rng, n);
      for (auto g : kGroups) {
        const auto orbit = oracle::enumerate_orbit(m, g == IsometryGroup::SymTI);
        CHECK(orbit.images.size() * orbit.fixing == orbit.group_size);
        CHECK(orbit.group_size == group_order(n, g));
        const auto info = canonicalize(m, g);
        CHECK(info.orbit_size == orbit.images.size());
        CHECK(info.key.bits() == *orbit.images.begin());
        CHECK(group_order(n, g) % info.orbit_size == 0);
      }
    }
  }
}

TEST_CASE("isometries preserve the generating set") {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 8; ++n) {
    std::set<std::uint64_t> gens;
    for (const auto& t : transvections(n)) gens.insert(matrix_of(n, t).bits());
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = oracle::random_perm(rng, n);
      for (bool neg : {false, true}) {
        std::set<std::uint64_t> image;
        for (const auto& t : transvections(n)) image.insert(act(s, neg, matrix_of(n, t)).bits());
        CHECK(image == gens);
      }
    }
  }
}

TEST_CASE("successors depend only on the orbit") {
  std::mt19937_64 rng(14);
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto m = oracle::random_invertible(rng, n);
      const auto s = oracle::random_perm(rng, n);
      for (auto g : kGroups) {
        const bool neg = g == IsometryGroup::SymTI && (rep % 2 == 1);
        const auto a = successor_orbits(canonicalize(m, g).key, g);
        // Expand a non-canonical member directly.
        const auto other = act(s, neg, m);
        std::map<std::uint64_t, std::uint64_t> b;
        for (const auto& t : transvections(n)) {
          const auto info = canonicalize(apply_transvection(t, other), g);
          b[info.key.bits()] = info.orbit_size;
        }
        REQUIRE(a.size() == b.size());
        CHECK(a.size() <= static_cast<std::size_t>(n * (n - 1)));
        for (const auto& o : a) CHECK(b.at(o.key.bits()) == o.orbit_size);
        CHECK(std::is_sorted(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.key < y.key; }));
      }
    }
  }
}

TEST_CASE("orbit partition of GL(3,2)") {
  // Enumerate all 3x3 matrices and keep the invertible ones.
  std::map<std::uint64_t, std::uint64_t> sym;
  std::map<std::uint64_t, std::uint64_t> symti;
  int count = 0;
  for (std::uint64_t b = 0; b < 512; ++b) {
    const auto m = BitMatrix::unchecked(3, b);
    if (!m.is_invertible()) continue;
    ++count;
    const auto s = canonicalize(m, IsometryGroup::Sym);
    const auto t = canonicalize(m, IsometryGroup::SymTI);
    sym[s.key.bits()] = s.orbit_size;
    symti[t.key.bits()] = t.orbit_size;
  }
  CHECK(count == 168);
  CHECK(sym.size() == 33);
  std::uint64_t total = 0;
  for (const auto& [k, sz] : sym) total += sz;
  CHECK(total == 168);
  total = 0;
  for (const auto& [k, sz] : symti) total += sz;
  CHECK(total == 168);
}

TEST_CASE("transpose-inverse at most doubles orbit sizes") {
  std::mt19937_64 rng(15);
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 200; ++rep) {
      const auto m = oracle::random_invertible(rng, n);
      const auto s = canonicalize(m, IsometryGroup::Sym);
      const auto t = canonicalize(m, IsometryGroup::SymTI);
      const auto kappa = t.orbit_size / s.orbit_size;
      CHECK(t.orbit_size % s.orbit_size == 0);
      // kappa is 1 exactly when the transpose-inverse lies in the S_n orbit.
      const bool in_orbit = canonicalize(transpose_inverse(m), IsometryGroup::Sym).key == s.key;
      CHECK(kappa == (in_orbit ? 1U : 2U));
    }
  }
  // At n=2 the extra map coincides with a conjugation.
  for (std::uint64_t b = 0; b < 16; ++b) {
    const auto m = BitMatrix::unchecked(2, b);
    if (!m.is_invertible()) continue;
    CHECK(canonicalize(m, IsometryGroup::Sym) == canonicalize(m, IsometryGroup::SymTI));
  }
}
