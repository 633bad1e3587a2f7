#include <algorithm>
#include <limits>
#include <unordered_set>

#include "gl2/bfs.hpp"

namespace gl2 {
namespace {

void check_matches(const ExplorationResult& res, const BitMatrix& m) {
  if (m.order() != res.n) {
    throw std::invalid_argument("matrix order " + std::to_string(m.order()) + " does not match exploration order " +
                                std::to_string(res.n));
  }
  if (res.entries.empty()) throw std::invalid_argument("exploration result holds no distances");
}

}  // namespace

int distance_of(const ExplorationResult& res, const BitMatrix& m) {
  check_matches(res, m);
  const auto key = canonicalize(m, res.group).key.bits();
  if (auto d = res.find(key)) return *d;
  throw HorizonError("matrix " + format_matrix(m) + " lies beyond the explored horizon (depth " +
                     std::to_string(res.max_complete_depth()) + ")");
}

Circuit synthesize(const ExplorationResult& res, const BitMatrix& m) {
  int d = distance_of(res, m);
  const auto gens = transvections(m.order());
  std::vector<Transvection> path;  // path[0] is the last gate applied
  BitMatrix x = m;
  while (d > 0) {
    bool stepped = false;
    for (const auto& t : gens) {
      const BitMatrix y = apply_transvection(t, x);
      auto dy = res.find(canonicalize(y, res.group).key.bits());
      if (dy && *dy == d - 1) {
        path.push_back(t);
        x = y;
        --d;
        stepped = true;
        break;
      }
    }
    if (!stepped) throw std::logic_error("no descending neighbour: distance table is inconsistent");
  }
  Circuit c{m.order(), {}};
  c.gates.assign(path.rbegin(), path.rend());
  return c;
}

BidirResult bidirectional_distance(const BitMatrix& target, IsometryGroup group, int forward_depth, int backward_depth,
                                   const SearchLimits& limits) {
  target.validate();
  if (forward_depth < 0 || backward_depth < 0) throw std::invalid_argument("search depths must be non-negative");
  SearchLimits fwd_limits = limits;
  fwd_limits.max_depth = forward_depth;
  fwd_limits.keep_distances = true;
  const ExplorationResult forward = isometry_bfs(target.order(), group, fwd_limits);
  const int fwd_exact = forward.complete ? std::numeric_limits<int>::max() / 2 : forward.max_complete_depth();

  BidirResult out;
  out.forward_depth = forward.complete ? forward.depth() : fwd_exact;

  const int n = target.order();
  const auto gens = transvections(n);
  std::unordered_set<std::uint64_t> prev;
  std::unordered_set<std::uint64_t> cur{target.bits()};
  std::uint64_t stored = 1;

  for (int b = 0;; ++b) {
    int best = std::numeric_limits<int>::max();
    for (std::uint64_t h : cur) {
      const auto f = forward.find(canonicalize(BitMatrix::unchecked(n, h), group).key.bits());
      if (f && *f <= fwd_exact) best = std::min(best, *f + b);
    }
    out.backward_depth = b;
    if (best != std::numeric_limits<int>::max()) {
      out.exact = true;
      out.value = best;
      return out;
    }
    if (b == backward_depth) break;

    std::unordered_set<std::uint64_t> next;
    bool truncated = false;
    for (std::uint64_t h : cur) {
      for (const auto& t : gens) {
        const std::uint64_t s = apply_transvection(t, BitMatrix::unchecked(n, h)).bits();
        if (prev.contains(s) || cur.contains(s)) continue;
        if (next.insert(s).second && limits.max_orbits && ++stored > *limits.max_orbits) {
          truncated = true;
          break;
        }
      }
      if (truncated) break;
    }
    if (truncated || next.empty()) break;
    prev = std::move(cur);
    cur = std::move(next);
  }
  out.exact = false;
  out.value = out.forward_depth + out.backward_depth + 1;
  return out;
}

}  // namespace gl2
