#include "gl2/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace gl2 {
namespace {

void check_order(int n) {
  if (n < 1 || n > kMaxOrder) {
    throw std::invalid_argument("matrix order must be in 1.." + std::to_string(kMaxOrder) + ", got " +
                                std::to_string(n));
  }
}

void check_same_order(const BitMatrix& a, const BitMatrix& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
  }
}

void check_transvection(int n, Transvection t) {
  if (t.i < 1 || t.i > n || t.j < 1 || t.j > n || t.i == t.j) {
    throw std::invalid_argument("invalid transvection T_{" + std::to_string(t.i) + "," + std::to_string(t.j) +
                                "} for order " + std::to_string(n));
  }
}

std::array<std::uint8_t, kMaxOrder> rows_of(const BitMatrix& m) {
  std::array<std::uint8_t, kMaxOrder> rows{};
  for (int i = 1; i <= m.order(); ++i) rows[static_cast<std::size_t>(i - 1)] = m.row(i);
  return rows;
}

BitMatrix pack_rows(int n, const std::array<std::uint8_t, kMaxOrder>& rows) {
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) bits |= std::uint64_t{rows[static_cast<std::size_t>(i)]} << (i * n);
  return BitMatrix::unchecked(n, bits);
}

}  // namespace

int BitMatrix::rank() const {
  auto rows = rows_of(*this);
  int rank = 0;
  for (int col = 0; col < n_ && rank < n_; ++col) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1U << col);
    int pivot = -1;
    for (int r = rank; r < n_; ++r) {
      if (rows[static_cast<std::size_t>(r)] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < n_; ++r) {
      if (r != rank && (rows[static_cast<std::size_t>(r)] & bit)) {
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
      }
    }
    ++rank;
  }
  return rank;
}

void BitMatrix::validate() const {
  check_order(n_);
  if (n_ < kMaxOrder && (bits_ >> (n_ * n_)) != 0) {
    throw std::invalid_argument("matrix bits beyond position n^2 are set");
  }
  if (!is_invertible()) throw SingularMatrixError("matrix is singular over F2");
}

BitMatrix BitMatrix::from_bits(int n, std::uint64_t bits) {
  BitMatrix m(n, bits);
  m.validate();
  return m;
}

BitMatrix BitMatrix::identity(int n) {
  check_order(n);
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) bits |= std::uint64_t{1} << (i * n + i);
  return BitMatrix(n, bits);
}

BitMatrix BitMatrix::from_rows(std::span<const std::uint8_t> rows) {
  const int n = static_cast<int>(rows.size());
  check_order(n);
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    if (rows[static_cast<std::size_t>(i)] >> n) throw std::invalid_argument("row has bits beyond column n");
    bits |= std::uint64_t{rows[static_cast<std::size_t>(i)]} << (i * n);
  }
  return from_bits(n, bits);
}

std::vector<Transvection> transvections(int n) {
  std::vector<Transvection> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1)));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j) out.push_back({i, j});
    }
  }
  return out;
}

// Permutation

Permutation Permutation::identity(int n) {
  Permutation p;
  p.map_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p.map_[static_cast<std::size_t>(i)] = i + 1;
  return p;
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : images) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("permutation images are not a bijection on 1..n");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  Permutation p;
  p.map_ = std::move(images);
  return p;
}

Permutation Permutation::parse_cycles(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("permutation degree must be positive");
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i + 1;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<int> cycle;
    while (true) {
      while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
      if (pos >= text.size()) throw std::invalid_argument("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw std::invalid_argument("unexpected character in cycle notation: " + std::string(text));
      }
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > 1000) throw std::invalid_argument("cycle element out of range");
        ++pos;
      }
      if (v < 1 || v > n) throw std::invalid_argument("cycle element " + std::to_string(v) + " outside 1..n");
      if (used[static_cast<std::size_t>(v)]) throw std::invalid_argument("element repeated in cycle notation");
      used[static_cast<std::size_t>(v)] = true;
      cycle.push_back(v);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()];
    }
    skip_ws();
  }
  return from_images(std::move(images));
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[static_cast<std::size_t>(map_[i] - 1)] = static_cast<int>(i) + 1;
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.degree() != degree()) throw std::invalid_argument("permutation degree mismatch");
  Permutation p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[i] = (*this)(other.map_[i]);
  return p;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(map_.size() + 1, false);
  for (int start = 1; start <= degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int v = start; !seen[static_cast<std::size_t>(v)]; v = (*this)(v)) {
      seen[static_cast<std::size_t>(v)] = true;
      cycle.push_back(v);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  for (const auto& cycle : cycles()) {
    if (cycle.size() == 1) continue;
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(cycle[k]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// Matrix operations

BitMatrix identity(int n) { return BitMatrix::identity(n); }

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  check_same_order(a, b);
  const int n = a.order();
  std::array<std::uint8_t, kMaxOrder> rows{};
  // Row i of A*B is the XOR of the rows of B selected by row i of A.
  for (int i = 1; i <= n; ++i) {
    std::uint8_t acc = 0;
    for (std::uint8_t sel = a.row(i); sel; sel &= static_cast<std::uint8_t>(sel - 1)) {
      acc ^= b.row(std::countr_zero(sel) + 1);
    }
    rows[static_cast<std::size_t>(i - 1)] = acc;
  }
  return pack_rows(n, rows);
}

BitMatrix matrix_of(int n, Transvection t) {
  check_transvection(n, t);
  return apply_transvection(t, BitMatrix::identity(n));
}

BitMatrix apply_transvection(Transvection t, const BitMatrix& m) {
  const int n = m.order();
  check_transvection(n, t);
  const std::uint64_t src = (m.bits() >> ((t.j - 1) * n)) & BitMatrix::row_mask(n);
  return BitMatrix::unchecked(n, m.bits() ^ (src << ((t.i - 1) * n)));
}

BitMatrix transpose(const BitMatrix& m) {
  const int n = m.order();
  std::uint64_t bits = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (m.at(i, j)) bits |= std::uint64_t{1} << ((j - 1) * n + (i - 1));
    }
  }
  return BitMatrix::unchecked(n, bits);
}

BitMatrix invert(const BitMatrix& m) {
  const int n = m.order();
  auto rows = rows_of(m);
  auto inv = rows_of(BitMatrix::identity(n));
  int top = 0;
  for (int col = 0; col < n; ++col) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1U << col);
    int pivot = -1;
    for (int r = top; r < n; ++r) {
      if (rows[static_cast<std::size_t>(r)] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrixError("cannot invert a singular matrix");
    if (pivot != top) {
      // A swap built from row additions: bring the pivot row into place by
      // adding it to the top row, then clear it from below.
      rows[static_cast<std::size_t>(top)] ^= rows[static_cast<std::size_t>(pivot)];
      inv[static_cast<std::size_t>(top)] ^= inv[static_cast<std::size_t>(pivot)];
    }
    for (int r = 0; r < n; ++r) {
      if (r != top && (rows[static_cast<std::size_t>(r)] & bit)) {
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(top)];
        inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(top)];
      }
    }
    ++top;
  }
  return pack_rows(n, inv);
}

BitMatrix transpose_inverse(const BitMatrix& m) { return invert(transpose(m)); }

BitMatrix conjugate_by_perm(const Permutation& sigma, const BitMatrix& m) {
  const int n = m.order();
  if (sigma.degree() != n) throw std::invalid_argument("permutation degree does not match matrix order");
  const Permutation inv = sigma.inverse();
  std::uint64_t bits = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (m.at(inv(i), inv(j))) bits |= std::uint64_t{1} << ((i - 1) * n + (j - 1));
    }
  }
  return BitMatrix::unchecked(n, bits);
}

BitMatrix perm_matrix(const Permutation& sigma) {
  const int n = sigma.degree();
  check_order(n);
  std::uint64_t bits = 0;
  for (int j = 1; j <= n; ++j) bits |= std::uint64_t{1} << ((sigma(j) - 1) * n + (j - 1));
  return BitMatrix::unchecked(n, bits);
}

int cycle_count(const Permutation& sigma) { return static_cast<int>(sigma.cycles().size()); }

BitMatrix eval_circuit(const Circuit& c) {
  validate(c);
  BitMatrix m = BitMatrix::identity(c.n);
  for (const auto& g : c.gates) m = apply_transvection(g, m);
  return m;
}

void validate(const Circuit& c) {
  check_order(c.n);
  for (const auto& g : c.gates) check_transvection(c.n, g);
}

std::vector<int> essential_indices(const BitMatrix& m) {
  const int n = m.order();
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) {
    const std::uint8_t e = static_cast<std::uint8_t>(1U << (i - 1));
    bool off_row = (m.row(i) & static_cast<std::uint8_t>(~e)) != 0;
    bool off_col = false;
    for (int j = 1; j <= n && !off_col; ++j) off_col = j != i && m.at(j, i);
    if (off_row || off_col) out.push_back(i);
  }
  return out;
}

int essential_count(const BitMatrix& m) {
  const int n = m.order();
  std::uint8_t ess = 0;
  for (int i = 1; i <= n; ++i) {
    const std::uint8_t off = static_cast<std::uint8_t>(m.row(i) & ~(1U << (i - 1)));
    if (off) ess |= static_cast<std::uint8_t>(off | (1U << (i - 1)));
  }
  return std::popcount(ess);
}

BitMatrix embed(const BitMatrix& m, int n) {
  check_order(n);
  const int k = m.order();
  if (k > n) throw std::invalid_argument("cannot embed a larger matrix into a smaller order");
  std::array<std::uint8_t, kMaxOrder> rows{};
  for (int i = 1; i <= n; ++i) {
    rows[static_cast<std::size_t>(i - 1)] = i <= k ? m.row(i) : static_cast<std::uint8_t>(1U << (i - 1));
  }
  return pack_rows(n, rows);
}

Compacted compact_to_essential(const BitMatrix& m) {
  const int n = m.order();
  const auto ess = essential_indices(m);
  const int k = static_cast<int>(ess.size());

  std::vector<int> images(static_cast<std::size_t>(n), 0);
  int next_ess = 1;
  int next_rest = k + 1;
  for (int i = 1; i <= n; ++i) {
    const bool is_ess = std::binary_search(ess.begin(), ess.end(), i);
    images[static_cast<std::size_t>(i - 1)] = is_ess ? next_ess++ : next_rest++;
  }
  Permutation sigma = Permutation::from_images(std::move(images));
  if (k == 0) return {BitMatrix(), sigma};

  const BitMatrix moved = conjugate_by_perm(sigma, m);
  std::uint64_t bits = 0;
  for (int i = 1; i <= k; ++i) {
    bits |= std::uint64_t{static_cast<std::uint8_t>(moved.row(i) & BitMatrix::row_mask(k))} << ((i - 1) * k);
  }
  return {BitMatrix::unchecked(k, bits), sigma};
}

// Text formats

BitMatrix parse_matrix(std::string_view text) {
  std::vector<std::string> rows;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      rows.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  rows.push_back(cur);
  const int n = static_cast<int>(rows.size());
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("matrix must have 1..8 rows: '" + std::string(text) + "'");
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(r.size()) != n) {
      throw std::invalid_argument("matrix row " + std::to_string(i + 1) + " has length " + std::to_string(r.size()) +
                                  ", expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      const char c = r[static_cast<std::size_t>(j)];
      if (c != '0' && c != '1') throw std::invalid_argument("matrix entries must be '0' or '1'");
      if (c == '1') bits |= std::uint64_t{1} << (i * n + j);
    }
  }
  return BitMatrix::from_bits(n, bits);
}

std::string format_matrix(const BitMatrix& m) {
  std::string out;
  for (int i = 1; i <= m.order(); ++i) {
    if (i > 1) out += ',';
    for (int j = 1; j <= m.order(); ++j) out += m.at(i, j) ? '1' : '0';
  }
  return out;
}

Circuit parse_circuit(std::string_view text, int n) {
  check_order(n);
  Circuit c{n, {}};
  std::string s(text);
  std::stringstream ss(s);
  std::string gate;
  while (std::getline(ss, gate, ';')) {
    std::stringstream gs(gate);
    std::string name;
    if (!(gs >> name)) continue;
    int ctrl = -1;
    int tgt = -1;
    std::string extra;
    if (name != "CNOT" || !(gs >> ctrl >> tgt) || (gs >> extra)) {
      throw std::invalid_argument("malformed gate: '" + gate + "'");
    }
    c.gates.push_back({tgt + 1, ctrl + 1});
  }
  validate(c);
  return c;
}

std::string format_circuit(const Circuit& c) {
  std::string out;
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    if (k) out += ';';
    out += "CNOT " + std::to_string(c.gates[k].j - 1) + " " + std::to_string(c.gates[k].i - 1);
  }
  return out;
}

}  // namespace gl2
