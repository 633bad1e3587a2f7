#pragma once

// Bit-packed linear algebra over F2 for orders 1..8.
//
// A matrix of order n is stored in a single 64-bit word: entry M[i,j]
// (1-indexed) lives at bit (i-1)*n + (j-1). Row i is therefore the n-bit
// field starting at bit (i-1)*n, with column 1 in its least significant bit.
// This layout is also the on-disk key format of the distance database.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gl2 {

inline constexpr int kMaxOrder = 8;

/// Thrown when a matrix that must be invertible is singular.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BitMatrix {
 public:
  /// Order-0 empty matrix. Stands for the compacted form of an identity.
  constexpr BitMatrix() = default;

  /// Wraps raw bits without any check. Parsers must call validate() before
  /// handing the value to anything else.
  static constexpr BitMatrix unchecked(int n, std::uint64_t bits) { return BitMatrix(n, bits); }

  /// Raw bits that must describe an invertible matrix of order n.
  static BitMatrix from_bits(int n, std::uint64_t bits);

  static BitMatrix identity(int n);

  /// Rows given as n-bit masks (bit j-1 set means column j is 1).
  static BitMatrix from_rows(std::span<const std::uint8_t> rows);
  static BitMatrix from_rows(std::initializer_list<std::uint8_t> rows) {
    return from_rows(std::span<const std::uint8_t>(rows.begin(), rows.size()));
  }

  constexpr int order() const { return n_; }
  constexpr std::uint64_t bits() const { return bits_; }

  /// 1-indexed entry access.
  constexpr bool at(int i, int j) const { return (bits_ >> ((i - 1) * n_ + (j - 1))) & 1U; }

  /// Row i (1-indexed) as an n-bit mask.
  constexpr std::uint8_t row(int i) const {
    return static_cast<std::uint8_t>((bits_ >> ((i - 1) * n_)) & row_mask(n_));
  }

  static constexpr std::uint64_t row_mask(int n) { return (std::uint64_t{1} << n) - 1; }

  /// Rank over F2 of the stored bits (usable on unchecked values).
  int rank() const;
  bool is_invertible() const { return rank() == n_; }

  /// Throws std::invalid_argument on stray high bits and SingularMatrixError
  /// on rank deficiency.
  void validate() const;

  friend constexpr bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend constexpr auto operator<=>(const BitMatrix& a, const BitMatrix& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  constexpr BitMatrix(int n, std::uint64_t bits) : n_(n), bits_(bits) {}

  int n_ = 0;
  std::uint64_t bits_ = 0;
};

/// T_{i,j} = I + Delta_{i,j}; left multiplication adds row j to row i.
/// As a CNOT gate: control j, target i.
struct Transvection {
  int i = 0;
  int j = 0;

  friend constexpr bool operator==(const Transvection&, const Transvection&) = default;
};

/// All n(n-1) transvections of order n in (i,j) lexicographic order.
std::vector<Transvection> transvections(int n);

/// A permutation of {1..n}; image(i) = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  /// map[k] = sigma(k+1), values 1-based.
  static Permutation from_images(std::vector<int> images);
  /// Cycle notation such as "(1 2 3)(4 5)"; fixed points may be omitted.
  static Permutation parse_cycles(std::string_view text, int n);

  int degree() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[static_cast<std::size_t>(i - 1)]; }
  Permutation inverse() const;
  /// (this * other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;
  /// Disjoint cycles including fixed points, each starting at its minimum,
  /// ordered by that minimum.
  std::vector<std::vector<int>> cycles() const;
  std::string to_cycle_string() const;
  const std::vector<int>& images() const { return map_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

/// A word over transvections; gates[0] is applied first.
struct Circuit {
  int n = 0;
  std::vector<Transvection> gates;

  std::size_t size() const { return gates.size(); }
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

BitMatrix identity(int n);
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
BitMatrix matrix_of(int n, Transvection t);
/// T * M as a single shift, mask and XOR.
BitMatrix apply_transvection(Transvection t, const BitMatrix& m);
BitMatrix transpose(const BitMatrix& m);
/// Gauss-Jordan with row additions only; pivot is leftmost column, topmost row.
BitMatrix invert(const BitMatrix& m);
/// (M^T)^{-1}.
BitMatrix transpose_inverse(const BitMatrix& m);
/// P_sigma M P_sigma^{-1}, evaluated entrywise as M[sigma^-1(i), sigma^-1(j)].
BitMatrix conjugate_by_perm(const Permutation& sigma, const BitMatrix& m);
/// Columns [e_sigma(1), ..., e_sigma(n)].
BitMatrix perm_matrix(const Permutation& sigma);
int cycle_count(const Permutation& sigma);

BitMatrix eval_circuit(const Circuit& c);
void validate(const Circuit& c);

/// Sorted 1-based indices i with M[i,j] = 1 or M[j,i] = 1 for some j != i.
std::vector<int> essential_indices(const BitMatrix& m);
int essential_count(const BitMatrix& m);

/// diag(M, I_{n-m}).
BitMatrix embed(const BitMatrix& m, int n);

struct Compacted {
  BitMatrix matrix;   // order |eps(N)|; order 0 when N is the identity
  Permutation sigma;  // embed(matrix, N.n) == conjugate_by_perm(sigma, N)
};
Compacted compact_to_essential(const BitMatrix& m);

// Text formats.

/// "111,010,011": rows joined by commas, row 1 first, column 1 first.
BitMatrix parse_matrix(std::string_view text);
std::string format_matrix(const BitMatrix& m);

/// "CNOT c d;CNOT c d" with 0-based qubits; CNOT c d is T_{d+1,c+1}.
Circuit parse_circuit(std::string_view text, int n);
std::string format_circuit(const Circuit& c);

}  // namespace gl2
