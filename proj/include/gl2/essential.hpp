#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gl2/bfs.hpp"

namespace gl2 {

/// S(d,m): total size of the orbits at distance d whose members have m
/// essential indices, for an exploration of order `order`.
struct EssentialClassTable {
  int order = 0;
  IsometryGroup group = IsometryGroup::Sym;
  int d_max = 0;
  std::vector<std::vector<BigInt>> cells;  // cells[d][m], m in 0..order

  const BigInt& at(int d, int m) const { return cells[static_cast<std::size_t>(d)][static_cast<std::size_t>(m)]; }
};

/// f_d(n) = sum_m a[m] * C(n,m) for n >= 2d.
struct PolyCoeffs {
  int d = 0;
  std::vector<BigInt> a;  // a[0..2d]

  friend bool operator==(const PolyCoeffs&, const PolyCoeffs&) = default;
};

/// Thrown when a coefficient is not an exact quotient.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

BigInt binomial(long n, long k);

/// Covers every level of `res` that is known exactly.
EssentialClassTable classify(const ExplorationResult& res, int threads = 0);

/// a[m] = S(d,m) / C(2d,m); needs a table of order exactly 2d.
PolyCoeffs extract_coeffs(const EssentialClassTable& table, int d);

BigInt eval_poly(const PolyCoeffs& c, long n);
/// Whether f_d(n) is proven to equal |R_n(d)|.
inline bool poly_is_proven(const PolyCoeffs& c, long n) { return n >= 2L * c.d; }

/// Coefficients of f_d in the monomial basis n^0..n^{2d}.
std::vector<mpq_class> to_monomials(const PolyCoeffs& c);

/// |S_n . embed(M,n)| * C(m,k) == |S_m . M| * C(n,k) with k = |eps(M)|,
/// both orbit sizes obtained by full enumeration.
bool orbit_growth_check(const BitMatrix& m, int n);

/// T_{1,2} T_{3,4} ... T_{2d-1,2d}, of order 2d.
BitMatrix witness_matrix(int d);

// Coefficient files: one line per d, "d,a0,a1,...,a2d"; '#' starts a comment.
std::vector<PolyCoeffs> read_coeffs(std::istream& in);
std::vector<PolyCoeffs> read_coeffs_file(const std::string& path);
void write_coeffs(std::ostream& out, std::span<const PolyCoeffs> coeffs);

void write_class_table_csv(std::ostream& out, const EssentialClassTable& table);
void write_class_table_text(std::ostream& out, const EssentialClassTable& table);

}  // namespace gl2
