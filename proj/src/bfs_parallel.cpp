#include <omp.h>

#include <algorithm>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>

#include "gl2/bfs.hpp"
#include "gl2/bounds.hpp"

namespace gl2 {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Candidate {
  std::uint64_t key = 0;
  std::uint32_t orbit_size = 0;
};

// Insert-if-absent set for one BFS level. Keys are spread over shards by
// the high hash bits; each shard is an open-addressing table behind its own
// mutex. Key 0 marks an empty slot (the zero matrix is never invertible).
class LevelSet {
 public:
  static constexpr int kShardBits = 10;

  LevelSet() : shards_(std::size_t{1} << kShardBits) {}

  bool insert(std::uint64_t key, std::uint32_t orbit_size) {
    const std::uint64_t h = mix(key);
    Shard& s = shards_[h >> (64 - kShardBits)];
    std::lock_guard lock(s.mu);
    if (s.slots.empty() || 2 * (s.used + 1) > s.slots.size()) s.grow();
    const std::size_t mask = s.slots.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      Candidate& slot = s.slots[i];
      if (slot.key == key) return false;
      if (slot.key == 0) {
        slot = {key, orbit_size};
        ++s.used;
        return true;
      }
    }
  }

  std::vector<Candidate> drain() {
    std::size_t total = 0;
    for (const auto& s : shards_) total += s.used;
    std::vector<Candidate> out;
    out.reserve(total);
    for (auto& s : shards_) {
      for (const auto& c : s.slots) {
        if (c.key) out.push_back(c);
      }
      s.slots = {};
      s.used = 0;
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
    return out;
  }

 private:
  struct Shard {
    std::mutex mu;
    std::vector<Candidate> slots;
    std::size_t used = 0;

    void grow() {
      std::vector<Candidate> old = std::move(slots);
      slots.assign(old.empty() ? 16 : 2 * old.size(), Candidate{});
      const std::size_t mask = slots.size() - 1;
      for (const auto& c : old) {
        if (!c.key) continue;
        std::size_t i = mix(c.key) & mask;
        while (slots[i].key) i = (i + 1) & mask;
        slots[i] = c;
      }
    }
  };

  std::vector<Shard> shards_;
};

int thread_count(const SearchLimits& limits) { return limits.threads > 0 ? limits.threads : omp_get_max_threads(); }

// Orbit-size sum of a level; 64-bit per-thread tallies spill into a big
// integer on overflow.
BigInt sum_orbit_sizes(const std::vector<Candidate>& level, int threads) {
  BigInt total = 0;
  const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel num_threads(threads)
  {
    std::uint64_t local = 0;
    BigInt spill = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const std::uint64_t s = level[static_cast<std::size_t>(i)].orbit_size;
      std::uint64_t t = 0;
      if (__builtin_add_overflow(local, s, &t)) {
        spill += BigInt(static_cast<unsigned long>(local));
        local = s;
      } else {
        local = t;
      }
    }
    spill += BigInt(static_cast<unsigned long>(local));
#pragma omp critical(gl2_sphere_reduce)
    total += spill;
  }
  return total;
}

std::vector<Candidate> expand_level(int n, IsometryGroup group, const std::vector<std::uint64_t>& prev,
                                    const std::vector<std::uint64_t>& cur, int threads) {
  const auto gens = transvections(n);
  LevelSet next;
  const auto count = static_cast<std::int64_t>(cur.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const BitMatrix g = BitMatrix::unchecked(n, cur[static_cast<std::size_t>(idx)]);
    for (const auto& t : gens) {
      const OrbitInfo info = canonicalize(apply_transvection(t, g), group);
      const std::uint64_t key = info.key.bits();
      if (std::binary_search(prev.begin(), prev.end(), key) || std::binary_search(cur.begin(), cur.end(), key)) {
        continue;
      }
      next.insert(key, static_cast<std::uint32_t>(info.orbit_size));
    }
  }
  return next.drain();
}

void report(std::ostream* out, int d, std::uint64_t orbits, const BigInt& elements, std::uint64_t stored) {
  if (!out) return;
  const double mib = static_cast<double>(stored) * static_cast<double>(sizeof(DistanceEntry)) / (1024.0 * 1024.0);
  std::ostringstream line;
  line << std::fixed << std::setprecision(1) << "level d=" << d << " orbits=" << orbits
       << " elements=" << elements.get_str() << " stored=" << stored << " mem~" << mib << "MiB";
  *out << line.str() << std::endl;
}

}  // namespace

std::optional<int> ExplorationResult::find(std::uint64_t key) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), key,
                             [](const DistanceEntry& e, std::uint64_t k) { return e.key < k; });
  if (it == entries.end() || it->key != key) return std::nullopt;
  return it->dist;
}

ExplorationResult isometry_bfs(int n, IsometryGroup group, const SearchLimits& limits) {
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("order must be in 1..8");
  if (limits.max_depth && *limits.max_depth < 0) throw std::invalid_argument("max depth must be non-negative");
  if (limits.max_orbits && *limits.max_orbits == 0) throw std::invalid_argument("max orbits must be positive");
  const int threads = thread_count(limits);
  const BigInt total = gl_order(n);

  ExplorationResult res;
  res.n = n;
  res.group = group;

  const std::uint64_t id = BitMatrix::identity(n).bits();
  std::vector<std::uint64_t> prev;
  std::vector<std::uint64_t> cur{id};
  res.sphere_sizes.push_back(1);
  res.orbit_counts.push_back(1);
  if (limits.keep_distances) res.entries.push_back({id, 0});
  BigInt seen = 1;
  std::uint64_t stored = 1;
  report(limits.progress, 0, 1, res.sphere_sizes.back(), stored);

  for (int d = 0;; ++d) {
    if (seen == total) {
      res.complete = true;
      break;
    }
    if (limits.max_depth && d >= *limits.max_depth) break;
    std::vector<Candidate> next = expand_level(n, group, prev, cur, threads);
    if (next.empty()) {
      res.complete = true;
      break;
    }
    if (limits.max_orbits && stored + next.size() > *limits.max_orbits) {
      // Keep the smallest keys so truncated runs stay reproducible.
      next.resize(static_cast<std::size_t>(*limits.max_orbits - std::min(stored, *limits.max_orbits)));
      res.last_level_complete = false;
    }
    if (d + 1 > 255) throw std::logic_error("distance exceeds 8-bit range");
    res.sphere_sizes.push_back(sum_orbit_sizes(next, threads));
    res.orbit_counts.push_back(next.size());
    seen += res.sphere_sizes.back();
    stored += next.size();
    std::vector<std::uint64_t> keys;
    keys.reserve(next.size());
    for (const auto& c : next) {
      keys.push_back(c.key);
      if (limits.keep_distances) res.entries.push_back({c.key, static_cast<std::uint8_t>(d + 1)});
    }
    report(limits.progress, d + 1, next.size(), res.sphere_sizes.back(), stored);
    if (!res.last_level_complete) break;
    prev = std::move(cur);
    cur = std::move(keys);
  }
  std::sort(res.entries.begin(), res.entries.end(),
            [](const DistanceEntry& a, const DistanceEntry& b) { return a.key < b.key; });
  return res;
}

}  // namespace gl2
