#include "gl2/essential.hpp"

#include <omp.h>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gl2 {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

EssentialClassTable classify(const ExplorationResult& res, int threads) {
  if (res.entries.empty()) throw std::invalid_argument("classification needs stored distances");
  EssentialClassTable table;
  table.order = res.n;
  table.group = res.group;
  table.d_max = res.max_complete_depth();
  const auto rows = static_cast<std::size_t>(table.d_max + 1);
  const auto cols = static_cast<std::size_t>(res.n + 1);
  table.cells.assign(rows, std::vector<BigInt>(cols, 0));

  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(res.entries.size());
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<std::uint64_t> local(rows * cols, 0);
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const auto& e = res.entries[static_cast<std::size_t>(i)];
      if (e.dist > table.d_max) continue;
      const BitMatrix key = BitMatrix::unchecked(res.n, e.key);
      const auto cell = e.dist * cols + static_cast<std::size_t>(essential_count(key));
      // Orbit sizes are at most 2*8!, so the 64-bit tallies cannot overflow
      // before 2^47 entries.
      local[cell] += canonicalize(key, res.group).orbit_size;
    }
#pragma omp critical(gl2_classify_reduce)
    for (std::size_t d = 0; d < rows; ++d) {
      for (std::size_t m = 0; m < cols; ++m) table.cells[d][m] += BigInt(static_cast<unsigned long>(local[d * cols + m]));
    }
  }
  return table;
}

PolyCoeffs extract_coeffs(const EssentialClassTable& table, int d) {
  if (d < 0 || table.order != 2 * d) {
    throw std::invalid_argument("coefficients of f_" + std::to_string(d) + " need an exploration of order " +
                                std::to_string(2 * d) + ", got order " + std::to_string(table.order));
  }
  if (d > table.d_max) throw HorizonError("distance " + std::to_string(d) + " is beyond the classified levels");
  PolyCoeffs c{d, std::vector<BigInt>(static_cast<std::size_t>(2 * d + 1), 0)};
  for (int m = 0; m <= 2 * d; ++m) {
    const BigInt denom = binomial(2 * d, m);
    const BigInt& s = table.at(d, m);
    if (s % denom != 0) {
      throw ConsistencyError("S(" + std::to_string(d) + "," + std::to_string(m) + ") = " + s.get_str() +
                             " is not divisible by C(" + std::to_string(2 * d) + "," + std::to_string(m) + ")");
    }
    c.a[static_cast<std::size_t>(m)] = s / denom;
  }
  return c;
}

BigInt eval_poly(const PolyCoeffs& c, long n) {
  if (n < 0) throw std::invalid_argument("polynomial argument must be non-negative");
  BigInt sum = 0;
  for (std::size_t m = 0; m < c.a.size(); ++m) sum += c.a[m] * binomial(n, static_cast<long>(m));
  return sum;
}

std::vector<mpq_class> to_monomials(const PolyCoeffs& c) {
  // C(n,m) = n(n-1)...(n-m+1)/m!, expanded one linear factor at a time.
  std::vector<mpq_class> out(c.a.size(), 0);
  for (std::size_t m = 0; m < c.a.size(); ++m) {
    std::vector<mpq_class> falling{1};
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<mpq_class> next(falling.size() + 1, 0);
      for (std::size_t p = 0; p < falling.size(); ++p) {
        next[p + 1] += falling[p];
        next[p] -= falling[p] * static_cast<long>(r);
      }
      falling = std::move(next);
    }
    BigInt fact = 1;
    for (std::size_t r = 2; r <= m; ++r) fact *= static_cast<unsigned long>(r);
    mpq_class scale(c.a[m], fact);
    scale.canonicalize();
    for (std::size_t p = 0; p < falling.size(); ++p) out[p] += falling[p] * scale;
  }
  for (auto& q : out) q.canonicalize();
  return out;
}

bool orbit_growth_check(const BitMatrix& m, int n) {
  const int small = m.order();
  if (small < 1 || small > n || n > kMaxOrder) throw std::invalid_argument("need 1 <= M.n <= n <= 8");
  const int k = essential_count(m);
  const BigInt lhs = BigInt(static_cast<unsigned long>(canonicalize_reference(embed(m, n), IsometryGroup::Sym).orbit_size)) *
                     binomial(small, k);
  const BigInt rhs = BigInt(static_cast<unsigned long>(canonicalize_reference(m, IsometryGroup::Sym).orbit_size)) *
                     binomial(n, k);
  return lhs == rhs;
}

BitMatrix witness_matrix(int d) {
  if (d < 1 || 2 * d > kMaxOrder) throw std::invalid_argument("witness needs 1 <= d <= 4");
  Circuit c{2 * d, {}};
  for (int p = 1; p <= d; ++p) c.gates.push_back({2 * p - 1, 2 * p});
  return eval_circuit(c);
}

std::vector<PolyCoeffs> read_coeffs(std::istream& in) {
  std::vector<PolyCoeffs> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::vector<std::string> fields;
    std::string f;
    while (std::getline(ss, f, ',')) {
      const auto b = f.find_first_not_of(" \t\r");
      const auto e = f.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos ? std::string() : f.substr(b, e - b + 1));
    }
    if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("coefficient file line " + std::to_string(lineno) + ": " + why);
    };
    PolyCoeffs c;
    try {
      c.d = std::stoi(fields[0]);
    } catch (const std::exception&) {
      throw bad("distance is not an integer");
    }
    if (c.d < 0 || fields.size() != static_cast<std::size_t>(2 * c.d + 2)) throw bad("expected 2d+1 coefficients");
    for (std::size_t m = 1; m < fields.size(); ++m) {
      BigInt v;
      if (fields[m].empty() || v.set_str(fields[m], 10) != 0 || v < 0) throw bad("malformed coefficient '" + fields[m] + "'");
      c.a.push_back(v);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PolyCoeffs> read_coeffs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file '" + path + "'");
  return read_coeffs(in);
}

void write_coeffs(std::ostream& out, std::span<const PolyCoeffs> coeffs) {
  for (const auto& c : coeffs) {
    out << c.d;
    for (const auto& v : c.a) out << ',' << v.get_str();
    out << '\n';
  }
}

void write_class_table_csv(std::ostream& out, const EssentialClassTable& table) {
  out << "d,m,size\n";
  for (int d = 0; d <= table.d_max; ++d) {
    for (int m = 0; m <= table.order; ++m) {
      if (table.at(d, m) != 0) out << d << ',' << m << ',' << table.at(d, m).get_str() << '\n';
    }
  }
}

void write_class_table_text(std::ostream& out, const EssentialClassTable& table) {
  out << "order " << table.order << ", isometry " << to_string(table.group) << '\n';
  out << std::setw(4) << "d\\m";
  for (int m = 0; m <= table.order; ++m) out << ' ' << std::setw(12) << m;
  out << '\n';
  for (int d = 0; d <= table.d_max; ++d) {
    out << std::setw(4) << d;
    for (int m = 0; m <= table.order; ++m) out << ' ' << std::setw(12) << table.at(d, m).get_str();
    out << '\n';
  }
}

}  // namespace gl2
