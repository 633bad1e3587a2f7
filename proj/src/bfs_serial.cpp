#include <algorithm>
#include <queue>
#include <unordered_map>

#include "gl2/bfs.hpp"
#include "gl2/bounds.hpp"

namespace gl2 {

ExplorationResult isometry_bfs_serial(int n, IsometryGroup group, std::optional<int> max_depth, Canonicalizer canon) {
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("order must be in 1..8");
  auto rep = [&](const BitMatrix& m) {
    return canon == Canonicalizer::Reference ? canonicalize_reference(m, group) : canonicalize(m, group);
  };
  const auto gens = transvections(n);

  std::unordered_map<std::uint64_t, int> dist;
  std::vector<BigInt> sphere{1};
  std::queue<BitMatrix> queue;

  const OrbitInfo start = rep(BitMatrix::identity(n));
  dist.emplace(start.key.bits(), 0);
  queue.push(start.key);
  bool cut = false;

  while (!queue.empty()) {
    const BitMatrix g = queue.front();
    queue.pop();
    const int dg = dist.at(g.bits());
    if (max_depth && dg >= *max_depth) {
      cut = true;
      continue;
    }
    for (const auto& s : gens) {
      const OrbitInfo x = rep(apply_transvection(s, g));
      if (dist.contains(x.key.bits())) continue;
      dist.emplace(x.key.bits(), dg + 1);
      if (static_cast<int>(sphere.size()) <= dg + 1) sphere.emplace_back(0);
      sphere[static_cast<std::size_t>(dg + 1)] += BigInt(static_cast<unsigned long>(x.orbit_size));
      queue.push(x.key);
    }
  }

  ExplorationResult res;
  res.n = n;
  res.group = group;
  res.sphere_sizes = std::move(sphere);
  res.orbit_counts.assign(res.sphere_sizes.size(), 0);
  res.entries.reserve(dist.size());
  for (const auto& [key, d] : dist) {
    res.entries.push_back({key, static_cast<std::uint8_t>(d)});
    ++res.orbit_counts[static_cast<std::size_t>(d)];
  }
  std::sort(res.entries.begin(), res.entries.end(),
            [](const DistanceEntry& a, const DistanceEntry& b) { return a.key < b.key; });
  BigInt seen = 0;
  for (const auto& s : res.sphere_sizes) seen += s;
  res.complete = !cut || seen == gl_order(n);
  return res;
}

}  // namespace gl2
