#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gl2/gf2.hpp"
#include "gl2/isometry.hpp"

namespace gl2 {

using BigInt = mpz_class;

/// Raised when a distance query falls outside the explored ball. Distinct
/// from std::invalid_argument, which signals malformed input.
class HorizonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  std::optional<int> max_depth;            // last level to generate
  std::optional<std::uint64_t> max_orbits;  // cap on stored keys
  int threads = 0;                          // 0: OpenMP default
  bool keep_distances = true;               // false: only level counts are kept
  std::ostream* progress = nullptr;         // one line per completed level
};

struct DistanceEntry {
  std::uint64_t key = 0;
  std::uint8_t dist = 0;

  friend bool operator==(const DistanceEntry&, const DistanceEntry&) = default;
};

struct ExplorationResult {
  int n = 0;
  IsometryGroup group = IsometryGroup::Sym;
  std::vector<DistanceEntry> entries;   // canonical keys, strictly ascending
  std::vector<BigInt> sphere_sizes;     // |R(d)|, exact except a truncated last level
  std::vector<std::uint64_t> orbit_counts;
  bool complete = false;
  bool last_level_complete = true;

  int depth() const { return static_cast<int>(sphere_sizes.size()) - 1; }
  /// Deepest level whose keys and sphere size are known exactly.
  int max_complete_depth() const { return last_level_complete ? depth() : depth() - 1; }
  /// Distance stored for a canonical key.
  std::optional<int> find(std::uint64_t key) const;

  friend bool operator==(const ExplorationResult&, const ExplorationResult&) = default;
};

/// Level-synchronous isometry BFS from I_n, parallel over each frontier.
/// The result does not depend on the thread count.
ExplorationResult isometry_bfs(int n, IsometryGroup group, const SearchLimits& limits = {});

enum class Canonicalizer { Reference, Fast };

/// Single-threaded queue-driven reference. Stores one representative per
/// orbit and accrues the orbit size when a representative is first seen.
ExplorationResult isometry_bfs_serial(int n, IsometryGroup group, std::optional<int> max_depth = std::nullopt,
                                      Canonicalizer canon = Canonicalizer::Reference);

/// delta(M) looked up through its canonical key.
int distance_of(const ExplorationResult& res, const BitMatrix& m);

/// A circuit of exactly delta(M) gates with eval_circuit(result) == M.
/// Descends greedily, trying transvections in (i,j) lexicographic order.
Circuit synthesize(const ExplorationResult& res, const BitMatrix& m);

struct BidirResult {
  bool exact = false;  // false: value is a certified lower bound
  int value = 0;
  int forward_depth = 0;   // forward levels known exactly
  int backward_depth = 0;  // backward levels scanned
};

/// Meets a forward isometry-reduced ball around I_n with an unreduced
/// backward BFS from the target.
BidirResult bidirectional_distance(const BitMatrix& target, IsometryGroup group, int forward_depth, int backward_depth,
                                   const SearchLimits& limits = {});

}  // namespace gl2
