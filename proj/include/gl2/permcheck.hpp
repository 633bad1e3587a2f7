#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gl2/bfs.hpp"

namespace gl2 {

/// Parts of a cycle type, descending; p = number of parts = c(sigma).
struct CycleType {
  std::vector<int> parts;

  static CycleType of(const Permutation& sigma);
  std::string to_string() const;
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

/// [T_{i,j}, T_{j,i}, T_{i,j}], which evaluates to P_{(i j)}.
Circuit transposition_circuit(int i, int j, int n);

/// 3(n - c(sigma)) gates evaluating to P_sigma.
Circuit perm_circuit(const Permutation& sigma);

struct GluedCycle {
  Permutation tau;  // a single n-cycle
  Circuit glue;     // eval_circuit(glue) * P_sigma == P_tau
};

/// Merges the cycles of sigma into one, joining at each step the merged
/// cycle with the cycle of the next smallest minimum element.
GluedCycle glue_cycles(const Permutation& sigma);

/// One block-form permutation per partition of n, partitions in
/// reverse-lexicographic order.
std::vector<Permutation> cycle_type_reps(int n);

struct PermCheckLine {
  CycleType type;
  Permutation rep;
  int expected = 0;
  int measured = 0;
  bool pass() const { return expected == measured; }
};

struct PermCheckReport {
  int n = 0;
  std::vector<PermCheckLine> lines;
  bool all_pass() const;
};

/// delta(P_sigma) == 3(n - c(sigma)) for one sigma per cycle type. Needs a
/// complete exploration.
PermCheckReport verify_conjecture(const ExplorationResult& res);

/// "type,expected,measured,PASS|FAIL" per line.
void write_report(std::ostream& out, const PermCheckReport& report);

}  // namespace gl2
