#include "gl2/isometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gl2 {

std::string_view to_string(IsometryGroup g) { return g == IsometryGroup::Sym ? "sym" : "sym-ti"; }

IsometryGroup parse_isometry(std::string_view text) {
  if (text == "sym") return IsometryGroup::Sym;
  if (text == "sym-ti") return IsometryGroup::SymTI;
  throw std::invalid_argument("unknown isometry group '" + std::string(text) + "' (expected sym or sym-ti)");
}

std::uint64_t group_order(int n, IsometryGroup g) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return g == IsometryGroup::SymTI ? 2 * f : f;
}

BitMatrix act(const Permutation& sigma, bool negate, const BitMatrix& m) {
  const BitMatrix moved = conjugate_by_perm(sigma, m);
  return negate ? transpose_inverse(moved) : moved;
}

namespace {

// Image of M under pi (pi = sigma^{-1}): image[i][j] = M[pi(i)][pi(j)].
// Positions are filled from the most significant row (n-1) downwards, so
// every assigned row has a known prefix of high columns. The remaining
// columns of an assigned row hold a known number of ones, and the smallest
// arrangement puts them all at the bottom; that per-row bound is compared
// against the best image found so far.
class CanonSearch {
 public:
  explicit CanonSearch(const BitMatrix& seed) : n_(seed.order()) {
    for (int i = 0; i < n_; ++i) best_[static_cast<std::size_t>(i)] = seed.row(i + 1);
  }

  void run(const BitMatrix& m) {
    for (int i = 0; i < n_; ++i) rows_[static_cast<std::size_t>(i)] = m.row(i + 1);
    img_.fill(0);
    assign(n_ - 1, static_cast<std::uint8_t>(BitMatrix::row_mask(n_)));
  }

  std::uint64_t best_bits() const {
    std::uint64_t bits = 0;
    for (int i = 0; i < n_; ++i) bits |= std::uint64_t{best_[static_cast<std::size_t>(i)]} << (i * n_);
    return bits;
  }
  std::uint64_t ties() const { return ties_; }

 private:
  // Returns <0, 0, >0 comparing the lower bound at depth k with the best.
  int compare_bound(int k, std::uint8_t unassigned) const {
    for (int i = n_ - 1; i >= k; --i) {
      const auto ui = static_cast<std::size_t>(i);
      const int ones = std::popcount(static_cast<unsigned>(rows_[static_cast<std::size_t>(perm_[ui])] & unassigned));
      const unsigned lb = img_[ui] | ((1U << ones) - 1U);
      if (lb != best_[ui]) return lb < best_[ui] ? -1 : 1;
    }
    return k == 0 ? 0 : -1;
  }

  void assign(int k, std::uint8_t unassigned) {
    for (std::uint8_t rest = unassigned; rest; rest &= static_cast<std::uint8_t>(rest - 1)) {
      const int p = std::countr_zero(rest);
      const auto uk = static_cast<std::size_t>(k);
      perm_[uk] = p;
      const std::uint8_t src = rows_[static_cast<std::size_t>(p)];
      std::uint8_t row = 0;
      for (int j = k; j < n_; ++j) row |= static_cast<std::uint8_t>(((src >> perm_[static_cast<std::size_t>(j)]) & 1U) << j);
      img_[uk] = row;
      for (int i = k + 1; i < n_; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        img_[ui] |= static_cast<std::uint8_t>(((rows_[static_cast<std::size_t>(perm_[ui])] >> p) & 1U) << k);
      }
      const std::uint8_t left = static_cast<std::uint8_t>(unassigned & ~(1U << p));

      const int cmp = compare_bound(k, left);
      if (k == 0) {
        if (cmp < 0) {
          for (int i = 0; i < n_; ++i) best_[static_cast<std::size_t>(i)] = img_[static_cast<std::size_t>(i)];
          ties_ = 1;
        } else if (cmp == 0) {
          ++ties_;
        }
      } else if (cmp <= 0) {
        assign(k - 1, left);
      }

      for (int i = k + 1; i < n_; ++i) img_[static_cast<std::size_t>(i)] &= static_cast<std::uint8_t>(~(1U << k));
    }
    img_[static_cast<std::size_t>(k)] = 0;
  }

  int n_;
  std::array<std::uint8_t, kMaxOrder> rows_{};
  std::array<std::uint8_t, kMaxOrder> img_{};
  std::array<std::uint8_t, kMaxOrder> best_{};
  std::array<int, kMaxOrder> perm_{};
  std::uint64_t ties_ = 0;
};

}  // namespace

OrbitInfo canonicalize(const BitMatrix& m, IsometryGroup g) {
  const int n = m.order();
  if (n == 0) return {m, 1};
  CanonSearch search(m);
  search.run(m);
  if (g == IsometryGroup::SymTI) search.run(transpose_inverse(m));
  const std::uint64_t order = group_order(n, g);
  return {BitMatrix::unchecked(n, search.best_bits()), order / search.ties()};
}

OrbitInfo canonicalize_reference(const BitMatrix& m, IsometryGroup g) {
  const int n = m.order();
  if (n == 0) return {m, 1};
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::uint64_t best = m.bits();
  std::uint64_t fixing = 0;
  do {
    const Permutation sigma = Permutation::from_images(images);
    for (int neg = 0; neg < (g == IsometryGroup::SymTI ? 2 : 1); ++neg) {
      const BitMatrix image = act(sigma, neg != 0, m);
      best = std::min(best, image.bits());
      if (image == m) ++fixing;
    }
  } while (std::next_permutation(images.begin(), images.end()));
  return {BitMatrix::unchecked(n, best), group_order(n, g) / fixing};
}

std::vector<OrbitInfo> successor_orbits(const BitMatrix& key, IsometryGroup g) {
  std::vector<OrbitInfo> out;
  for (const auto& t : transvections(key.order())) out.push_back(canonicalize(apply_transvection(t, key), g));
  std::sort(out.begin(), out.end(), [](const OrbitInfo& a, const OrbitInfo& b) { return a.key.bits() < b.key.bits(); });
  out.erase(std::unique(out.begin(), out.end(), [](const OrbitInfo& a, const OrbitInfo& b) { return a.key == b.key; }),
            out.end());
  return out;
}

}  // namespace gl2
