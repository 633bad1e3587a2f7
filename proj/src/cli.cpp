#include "gl2/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "gl2/bounds.hpp"
#include "gl2/essential.hpp"
#include "gl2/permcheck.hpp"
#include "gl2/store.hpp"
#include "json.hpp"

namespace gl2::cli {
namespace {

using nlohmann::json;

struct Options {
  int n = 0;
  std::optional<int> max_depth;
  std::optional<std::uint64_t> max_orbits;
  int threads = 0;
  std::string isometry = "sym";
  std::string out_path;
  std::string db;
  std::string matrix;
  std::string perm;
  std::string coeffs;
  int k = 0;
  int d = -1;
  int n_min = 0;
  int n_max = 40;
  int fwd = 0;
  int bwd = 0;
  bool json = false;
  bool text = false;
  bool quiet = false;
};

// Either --matrix or --perm (with the given order) must name the target.
BitMatrix target_matrix(const Options& o, int n) {
  if (!o.matrix.empty() && !o.perm.empty()) throw std::invalid_argument("give either --matrix or --perm, not both");
  if (!o.matrix.empty()) return parse_matrix(o.matrix);
  if (!o.perm.empty()) {
    if (n < 1) throw std::invalid_argument("--perm needs the order (--n)");
    return perm_matrix(Permutation::parse_cycles(o.perm, n));
  }
  throw std::invalid_argument("a target is required: --matrix or --perm");
}

SearchLimits limits_of(const Options& o, std::ostream& err) {
  SearchLimits l;
  l.max_depth = o.max_depth;
  l.max_orbits = o.max_orbits;
  l.threads = o.threads;
  l.progress = o.quiet ? nullptr : &err;
  return l;
}

// The exploration behind a query: a saved database, or a fresh run.
ExplorationResult source(const Options& o, std::ostream& err) {
  if (!o.db.empty()) return load(o.db);
  if (o.n < 1) throw std::invalid_argument("either --db or --n is required");
  return isometry_bfs(o.n, parse_isometry(o.isometry), limits_of(o, err));
}

int cmd_explore(const Options& o, std::ostream& out, std::ostream& err) {
  const ExplorationResult res = isometry_bfs(o.n, parse_isometry(o.isometry), limits_of(o, err));
  if (!o.out_path.empty()) save(res, o.out_path);
  if (o.json) {
    write_sphere_json(out, res);
  } else {
    write_sphere_csv(out, res);
  }
  if (!res.complete) {
    err << "exploration stopped before exhausting GL(" << o.n << ",2); exact through depth " << res.max_complete_depth()
        << '\n';
    return kIncomplete;
  }
  return kOk;
}

int cmd_dist(const Options& o, std::ostream& out) {
  const DatabaseHeader h = read_header(o.db);
  const BitMatrix m = target_matrix(o, h.n);
  const auto d = lookup(o.db, m);
  if (!d) throw HorizonError("matrix lies beyond the explored horizon (depth " + std::to_string(h.max_complete_depth) + ")");
  if (o.json) {
    out << json{{"matrix", format_matrix(m)}, {"distance", *d}}.dump() << '\n';
  } else {
    out << *d << '\n';
  }
  return kOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  const ExplorationResult res = load(o.db);
  const BitMatrix m = target_matrix(o, res.n);
  const Circuit c = synthesize(res, m);
  if (eval_circuit(c) != m) throw std::logic_error("synthesized circuit does not evaluate to the target");
  if (o.json) {
    out << json{{"matrix", format_matrix(m)}, {"gates", c.size()}, {"circuit", format_circuit(c)}}.dump() << '\n';
  } else {
    out << format_circuit(c) << '\n';
  }
  return kOk;
}

int cmd_perm_check(const Options& o, std::ostream& out, std::ostream& err) {
  const ExplorationResult res = source(o, err);
  PermCheckReport report;
  if (!o.perm.empty()) {
    const Permutation sigma = Permutation::parse_cycles(o.perm, res.n);
    report.n = res.n;
    report.lines.push_back({CycleType::of(sigma), sigma, 3 * (res.n - cycle_count(sigma)),
                            distance_of(res, perm_matrix(sigma))});
  } else {
    report = verify_conjecture(res);
  }
  if (o.json) {
    json lines = json::array();
    for (const auto& l : report.lines) {
      lines.push_back({{"type", l.type.parts},
                       {"representative", l.rep.to_cycle_string()},
                       {"expected", l.expected},
                       {"measured", l.measured},
                       {"pass", l.pass()}});
    }
    out << json{{"n", report.n}, {"lines", lines}, {"pass", report.all_pass()}}.dump(2) << '\n';
  } else {
    write_report(out, report);
  }
  return report.all_pass() ? kOk : kInternal;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  const EssentialClassTable table = classify(source(o, err), o.threads);
  if (o.json) {
    json cells = json::array();
    for (int d = 0; d <= table.d_max; ++d) {
      for (int m = 0; m <= table.order; ++m) {
        if (table.at(d, m) != 0) cells.push_back({{"d", d}, {"m", m}, {"size", table.at(d, m).get_str()}});
      }
    }
    out << json{{"order", table.order}, {"isometry", std::string(to_string(table.group))}, {"cells", cells}}.dump(2)
        << '\n';
  } else if (o.text) {
    write_class_table_text(out, table);
  } else {
    write_class_table_csv(out, table);
  }
  return kOk;
}

int cmd_poly_extract(const Options& o, std::ostream& out, std::ostream& err) {
  Options src = o;
  if (src.db.empty() && src.d >= 1 && src.n == 0) src.n = 2 * src.d;
  if (src.db.empty() && !src.max_depth && src.d >= 1) src.max_depth = src.d;
  const ExplorationResult res = source(src, err);
  const int d = o.d >= 0 ? o.d : res.n / 2;
  const PolyCoeffs c = extract_coeffs(classify(res, o.threads), d);
  if (o.json) {
    std::vector<std::string> a;
    for (const auto& v : c.a) a.push_back(v.get_str());
    out << json{{"d", c.d}, {"a", a}}.dump() << '\n';
  } else {
    const PolyCoeffs one[] = {c};
    write_coeffs(out, one);
  }
  return kOk;
}

const PolyCoeffs& find_coeffs(const std::vector<PolyCoeffs>& all, int d) {
  for (const auto& c : all) {
    if (c.d == d) return c;
  }
  throw std::invalid_argument("coefficient file has no record for d = " + std::to_string(d));
}

int cmd_poly_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const auto all = read_coeffs_file(o.coeffs);
  const PolyCoeffs& c = find_coeffs(all, o.d);
  const BigInt v = eval_poly(c, o.n);
  if (!poly_is_proven(c, o.n)) err << "note: n < 2d, the value is not proven to equal |R_n(d)|\n";
  if (o.json) {
    out << json{{"d", o.d}, {"n", o.n}, {"value", v.get_str()}, {"proven", poly_is_proven(c, o.n)}}.dump() << '\n';
  } else {
    out << v.get_str() << '\n';
  }
  return kOk;
}

int cmd_diam_bound(const Options& o, std::ostream& out) {
  SphereProfile profile;
  if (!o.db.empty()) {
    profile = sphere_profile_from(load(o.db), o.k);
  } else {
    const auto all = read_coeffs_file(o.coeffs);
    profile = sphere_profile_from(all, o.n, o.k);
  }
  const int l = ell(profile);
  if (o.json) {
    out << json{{"n", profile.n}, {"k", o.k}, {"ell", l}, {"three_n_minus_one", 3 * (profile.n - 1)}}.dump() << '\n';
  } else {
    out << l << '\n';
  }
  return kOk;
}

int cmd_n0_search(const Options& o, std::ostream& out, std::ostream& err) {
  const auto all = read_coeffs_file(o.coeffs);
  const int lo = o.n_min > 0 ? o.n_min : 2 * o.k;
  const auto n0 = n0_upper(o.k, all, lo, o.n_max);
  if (!n0) {
    err << "no n in [" << lo << "," << o.n_max << "] with l_n(" << o.k << ") > 3(n-1)\n";
    if (o.json) out << json{{"k", o.k}, {"n0_upper", nullptr}}.dump() << '\n';
    return kIncomplete;
  }
  const int l = ell(sphere_profile_from(all, *n0, o.k));
  if (o.json) {
    out << json{{"k", o.k}, {"n0_upper", *n0}, {"ell", l}}.dump() << '\n';
  } else {
    out << *n0 << '\n';
  }
  return kOk;
}

int cmd_bidir(const Options& o, std::ostream& out, std::ostream& err) {
  const BitMatrix target = target_matrix(o, o.n);
  const BidirResult r = bidirectional_distance(target, parse_isometry(o.isometry), o.fwd, o.bwd, limits_of(o, err));
  if (o.json) {
    out << json{{"exact", r.exact},
                {"distance", r.value},
                {"forward_depth", r.forward_depth},
                {"backward_depth", r.backward_depth}}
               .dump()
        << '\n';
  } else {
    out << (r.exact ? "" : ">=") << r.value << '\n';
  }
  return r.exact ? kOk : kIncomplete;
}

int cmd_db_info(const Options& o, std::ostream& out) {
  const DatabaseHeader h = read_header(o.db);
  const json j{{"version", h.version},
               {"n", h.n},
               {"isometry", std::string(to_string(h.group))},
               {"max_complete_depth", h.max_complete_depth},
               {"complete", h.complete},
               {"last_level_complete", h.last_level_complete},
               {"levels", h.levels},
               {"entries", h.entries}};
  if (o.json) {
    out << j.dump(2) << '\n';
  } else {
    out << "field,value\n";
    for (const auto& [key, value] : j.items()) out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cayley-graph exploration of GL(n,2) under CNOT generators"};
  app.require_subcommand(1);

  auto order = [&](CLI::App* sc, bool required) {
    auto* opt = sc->add_option("--n", o.n, "matrix order")->check(CLI::Range(1, kMaxOrder));
    if (required) opt->required();
  };
  auto search = [&](CLI::App* sc) {
    sc->add_option("--max-depth", o.max_depth, "last BFS level to generate")->check(CLI::NonNegativeNumber);
    sc->add_option("--max-orbits", o.max_orbits, "cap on stored orbit keys")->check(CLI::PositiveNumber);
    sc->add_option("--threads", o.threads, "worker threads (0: default)")->check(CLI::NonNegativeNumber);
    sc->add_option("--isometry", o.isometry, "isometry group: sym or sym-ti")->check(CLI::IsMember({"sym", "sym-ti"}));
    sc->add_flag("--quiet", o.quiet, "no per-level progress on stderr");
  };
  auto fmt = [&](CLI::App* sc) { sc->add_flag("--json", o.json, "JSON output"); };

  auto* explore = app.add_subcommand("explore", "isometry BFS from the identity; prints the sphere table");
  order(explore, true);
  search(explore);
  explore->add_option("--out", o.out_path, "write the distance database here");
  fmt(explore);

  auto* dist = app.add_subcommand("dist", "distance of a matrix from a database");
  dist->add_option("--db", o.db, "distance database")->required();
  dist->add_option("--matrix", o.matrix, "rows of 0/1 joined by commas");
  dist->add_option("--perm", o.perm, "permutation in cycle notation");
  fmt(dist);

  auto* synth = app.add_subcommand("synth", "optimal CNOT circuit for a matrix");
  synth->add_option("--db", o.db, "distance database")->required();
  synth->add_option("--matrix", o.matrix, "rows of 0/1 joined by commas");
  synth->add_option("--perm", o.perm, "permutation in cycle notation");
  fmt(synth);

  auto* perm = app.add_subcommand("perm-check", "check delta(P_sigma) = 3(n - c(sigma)) per cycle type");
  perm->add_option("--db", o.db, "distance database (otherwise explore --n)");
  order(perm, false);
  search(perm);
  perm->add_option("--perm", o.perm, "check a single permutation");
  fmt(perm);

  auto* cls = app.add_subcommand("classify", "sphere sizes split by essential-index count");
  cls->add_option("--db", o.db, "distance database (otherwise explore --n)");
  order(cls, false);
  search(cls);
  cls->add_flag("--text", o.text, "aligned text table");
  fmt(cls);

  auto* extract = app.add_subcommand("poly-extract", "coefficients of f_d from an exploration of order 2d");
  extract->add_option("--db", o.db, "distance database of order 2d (otherwise explore)");
  order(extract, false);
  search(extract);
  extract->add_option("--d", o.d, "distance")->check(CLI::Range(1, kMaxOrder / 2));
  fmt(extract);

  auto* peval = app.add_subcommand("poly-eval", "evaluate f_d(n)");
  peval->add_option("--coeffs", o.coeffs, "coefficient file")->required();
  peval->add_option("--d", o.d, "distance")->required()->check(CLI::NonNegativeNumber);
  peval->add_option("--n", o.n, "order")->required()->check(CLI::NonNegativeNumber);
  fmt(peval);

  auto* bound = app.add_subcommand("diam-bound", "diameter lower bound l_n(k)");
  bound->add_option("--coeffs", o.coeffs, "coefficient file");
  bound->add_option("--db", o.db, "distance database (sphere sizes explored)");
  bound->add_option("--k", o.k, "largest sphere used")->required()->check(CLI::PositiveNumber);
  bound->add_option("--n", o.n, "order")->check(CLI::PositiveNumber);
  fmt(bound);

  auto* n0 = app.add_subcommand("n0-search", "smallest n with l_n(k) > 3(n-1)");
  n0->add_option("--coeffs", o.coeffs, "coefficient file")->required();
  n0->add_option("--k", o.k, "largest sphere used")->required()->check(CLI::PositiveNumber);
  n0->add_option("--n-min", o.n_min, "first order tried (default 2k)")->check(CLI::PositiveNumber);
  n0->add_option("--n-max", o.n_max, "last order tried")->check(CLI::PositiveNumber);
  fmt(n0);

  auto* bidir = app.add_subcommand("bidir", "bidirectional distance search");
  order(bidir, false);
  bidir->add_option("--matrix", o.matrix, "rows of 0/1 joined by commas");
  bidir->add_option("--perm", o.perm, "permutation in cycle notation (needs --n)");
  bidir->add_option("--fwd", o.fwd, "forward depth")->required()->check(CLI::NonNegativeNumber);
  bidir->add_option("--bwd", o.bwd, "backward depth")->required()->check(CLI::NonNegativeNumber);
  search(bidir);
  fmt(bidir);

  auto* info = app.add_subcommand("db-info", "database header");
  info->add_option("--db", o.db, "distance database")->required();
  fmt(info);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (explore->parsed()) return cmd_explore(o, out, err);
    if (dist->parsed()) return cmd_dist(o, out);
    if (synth->parsed()) return cmd_synth(o, out);
    if (perm->parsed()) return cmd_perm_check(o, out, err);
    if (cls->parsed()) return cmd_classify(o, out, err);
    if (extract->parsed()) return cmd_poly_extract(o, out, err);
    if (peval->parsed()) return cmd_poly_eval(o, out, err);
    if (bound->parsed()) {
      if (o.db.empty() == o.coeffs.empty()) throw std::invalid_argument("diam-bound needs exactly one of --coeffs or --db");
      if (!o.coeffs.empty() && o.n < 1) throw std::invalid_argument("diam-bound with --coeffs needs --n");
      return cmd_diam_bound(o, out);
    }
    if (n0->parsed()) return cmd_n0_search(o, out, err);
    if (bidir->parsed()) return cmd_bidir(o, out, err);
    if (info->parsed()) return cmd_db_info(o, out);
  } catch (const HorizonError& e) {
    err << "beyond horizon: " << e.what() << '\n';
    return kIncomplete;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kInternal;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error derive from logic_error but are input errors.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
    err << "internal consistency failure: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace gl2::cli
