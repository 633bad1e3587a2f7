#include "gl2/permcheck.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

namespace gl2 {

CycleType CycleType::of(const Permutation& sigma) {
  CycleType t;
  for (const auto& c : sigma.cycles()) t.parts.push_back(static_cast<int>(c.size()));
  std::sort(t.parts.rbegin(), t.parts.rend());
  return t;
}

std::string CycleType::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(parts[k]);
  }
  return s + ")";
}

Circuit transposition_circuit(int i, int j, int n) {
  Circuit c{n, {{i, j}, {j, i}, {i, j}}};
  validate(c);
  return c;
}

Circuit perm_circuit(const Permutation& sigma) {
  // (a1 a2 ... ak) = (a1 ak) ... (a1 a3)(a1 a2); the rightmost factor is the
  // first gate block.
  Circuit c{sigma.degree(), {}};
  for (const auto& cycle : sigma.cycles()) {
    for (std::size_t k = 1; k < cycle.size(); ++k) {
      const auto t = transposition_circuit(cycle[0], cycle[k], c.n);
      c.gates.insert(c.gates.end(), t.gates.begin(), t.gates.end());
    }
  }
  return c;
}

GluedCycle glue_cycles(const Permutation& sigma) {
  const int n = sigma.degree();
  const auto cycles = sigma.cycles();  // ordered by minimum element
  GluedCycle out{sigma, Circuit{n, {}}};
  // (a b)(a ...)(b ...) = (a ... b ...): joining at the anchors a, b.
  const int anchor = cycles.front().front();
  for (std::size_t k = 1; k < cycles.size(); ++k) {
    const int other = cycles[k].front();
    std::vector<int> swap_images = Permutation::identity(n).images();
    swap_images[static_cast<std::size_t>(anchor - 1)] = other;
    swap_images[static_cast<std::size_t>(other - 1)] = anchor;
    out.tau = Permutation::from_images(std::move(swap_images)).compose(out.tau);
    const auto t = transposition_circuit(anchor, other, n);
    out.glue.gates.insert(out.glue.gates.end(), t.gates.begin(), t.gates.end());
  }
  return out;
}

std::vector<Permutation> cycle_type_reps(int n) {
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("order must be in 1..8");
  std::vector<Permutation> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      std::vector<int> images(static_cast<std::size_t>(n));
      int start = 1;
      for (int len : parts) {
        for (int k = 0; k < len; ++k) images[static_cast<std::size_t>(start + k - 1)] = start + (k + 1) % len;
        start += len;
      }
      out.push_back(Permutation::from_images(std::move(images)));
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

bool PermCheckReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const PermCheckLine& l) { return l.pass(); });
}

PermCheckReport verify_conjecture(const ExplorationResult& res) {
  if (!res.complete) throw HorizonError("permutation check needs a complete exploration");
  PermCheckReport report;
  report.n = res.n;
  for (const auto& sigma : cycle_type_reps(res.n)) {
    PermCheckLine line;
    line.type = CycleType::of(sigma);
    line.rep = sigma;
    line.expected = 3 * (res.n - cycle_count(sigma));
    line.measured = distance_of(res, perm_matrix(sigma));
    report.lines.push_back(std::move(line));
  }
  return report;
}

void write_report(std::ostream& out, const PermCheckReport& report) {
  out << "type,expected,measured,status\n";
  for (const auto& l : report.lines) {
    out << '"' << l.type.to_string() << "\"," << l.expected << ',' << l.measured << ',' << (l.pass() ? "PASS" : "FAIL")
        << '\n';
  }
}

}  // namespace gl2
