#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gl2/gf2.hpp"

namespace gl2 {

/// Which isometry subgroup acts on GL(n,2).
enum class IsometryGroup : std::uint8_t {
  Sym = 0,    // S_n acting by conjugation with permutation matrices
  SymTI = 1,  // S_n x C_2, where -1 acts as the transpose-inverse map
};

std::string_view to_string(IsometryGroup g);
/// Accepts "sym" and "sym-ti".
IsometryGroup parse_isometry(std::string_view text);

/// n! or 2*n!.
std::uint64_t group_order(int n, IsometryGroup g);

struct OrbitInfo {
  BitMatrix key;            // minimum packed value over the orbit
  std::uint64_t orbit_size = 0;

  friend bool operator==(const OrbitInfo&, const OrbitInfo&) = default;
};

/// sigma . M, followed by the transpose-inverse map when negate is set.
BitMatrix act(const Permutation& sigma, bool negate, const BitMatrix& m);

/// Canonical key and exact orbit size. Branch-and-bound over partial
/// permutations, pruning on a per-row lower bound of the image.
OrbitInfo canonicalize(const BitMatrix& m, IsometryGroup g);

/// Same result by enumerating every group element. Slow; kept as the
/// reference the fast path is checked against.
OrbitInfo canonicalize_reference(const BitMatrix& m, IsometryGroup g);

/// Distinct orbits of T*key over all transvections T, sorted by key.
std::vector<OrbitInfo> successor_orbits(const BitMatrix& key, IsometryGroup g);

}  // namespace gl2
