// pdsx: command-line front end.
//
// Exit codes: 0 success, 1 a checked relation failed, 2 parse error,
// 3 semantic input error, 4 resource guard.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pdsx/ck.hpp"
#include "pdsx/cross.hpp"
#include "pdsx/error.hpp"
#include "pdsx/io.hpp"
#include "pdsx/pisom.hpp"
#include "pdsx/qlattice.hpp"
#include "pdsx/spectrum.hpp"

using namespace pdsx;
using io::json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Guard: return 4;
    default: return 3;
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Accepts inline JSON or a path to a JSON file.
json json_arg(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (value[first] == '{' || value[first] == '[')) return io::parse_json(value);
  return io::parse_json(io::read_file(value));
}

CKMatrix matrix_arg(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && value[first] == '[') {
    json j = io::parse_json(value);
    return io::ck_matrix_from_json(json{{"n", j.size()}, {"a", j}});
  }
  if (first != std::string::npos && value[first] == '{') return io::ck_matrix_from_json(io::parse_json(value));
  return io::read_ck_matrix(value);
}

std::pair<std::string, std::string> split_relations(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

json report_json(const CheckReport& r) {
  json v = json::array();
  for (const auto& f : r.violations) v.push_back({{"relation", f.relation}, {"where", f.where}, {"residual", f.residual}});
  return {{"passed", r.passed()}, {"checks", r.checks}, {"skipped", r.skipped}, {"maxResidual", r.max_residual},
          {"violations", v}};
}

void print_report(const CheckReport& r) {
  std::cout << (r.passed() ? "PASS" : "FAIL") << "  checks=" << r.checks << " skipped=" << r.skipped
            << " max_residual=" << r.max_residual << "\n";
  for (const auto& f : r.violations) std::cout << "  " << f.relation << " at " << f.where << ": residual " << f.residual << "\n";
}

// ---- analyze-ck ---------------------------------------------------------

struct AnalyzeOpts {
  std::string matrix;
  int depth = 8;
  std::string dot;
  bool json = false;
  bool timing = false;
};

int cmd_analyze(const AnalyzeOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  const CKMatrix a = io::read_ck_matrix(o.matrix);
  const auto ci = ck::condition_I(a);
  const auto tf = ck::is_topologically_free(a);
  const auto sv = ck::simplicity_verdict(a, o.depth);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json witnesses = json::object();
  json terminal = json::array();
  for (const auto& c : ck::simple_circuits(a))
    if (ck::is_terminal(c, a)) terminal.push_back(c.to_string());
  witnesses["terminalCircuits"] = terminal;
  if (ci.witness) witnesses["conditionIWitness"] = ci.witness->to_string();
  if (tf.fixing_element) witnesses["fixingElement"] = tf.fixing_element->to_string();
  if (tf.fixed_path) witnesses["fixedPath"] = tf.fixed_path->to_string();
  witnesses["components"] = sv.components;
  if (!sv.invariant_union.empty()) {
    json u = json::array();
    for (const auto& c : sv.invariant_union) u.push_back(c.prefix.to_string());
    witnesses["invariantUnion"] = u;
  }
  witnesses["reasons"] = sv.reasons;

  json report = {{"input", io::to_json(a)},
                 {"conditionI", ci.holds ? "holds" : "fails"},
                 {"topologicallyFree", tf.holds ? "holds" : "fails"},
                 {"simplicityVerdict", ck::to_string(sv.verdict)},
                 {"witnesses", witnesses}};
  if (o.timing) report["timing"] = {{"milliseconds", ms}};

  if (!o.dot.empty()) {
    std::ofstream out(o.dot);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + o.dot);
    out << ck::to_dot(a);
  }
  if (o.json) {
    emit(report);
    return 0;
  }
  std::cout << "conditionI: " << (ci.holds ? "holds" : "fails (witness " + ci.witness->to_string() + ")") << "\n";
  std::cout << "topologicallyFree: "
            << (tf.holds ? "holds" : "fails (t = " + tf.fixing_element->to_string() + ", fixed path " + tf.fixed_path->to_string() + ")")
            << "\n";
  std::cout << "simplicity: " << ck::to_string(sv.verdict) << "\n";
  for (const auto& r : sv.reasons) std::cout << "  " << r << "\n";
  if (o.timing) std::cout << "time: " << ms << " ms\n";
  return 0;
}

// ---- check-rep ----------------------------------------------------------

struct CheckOpts {
  std::string rep;
  std::string relations;
  std::optional<double> tol;
  int cap = 2;
  bool json = false;
};

template <class S>
std::vector<Matrix<S>> generator_list(const std::map<std::string, Matrix<S>>& images, int rank) {
  std::vector<Matrix<S>> out;
  for (int i = 1; i <= rank; ++i) {
    auto it = images.find("g" + std::to_string(i));
    if (it == images.end()) throw Error(ErrorKind::Parse, "missing generator g" + std::to_string(i));
    out.push_back(it->second);
  }
  if (images.size() != static_cast<std::size_t>(rank)) throw Error(ErrorKind::Parse, "semisaturated files list g1..gn only");
  return out;
}

template <class S>
PartialRep<S> build_rep(const io::RepSpec& spec, const std::map<std::string, Matrix<S>>& images) {
  if (spec.rank < 1) throw Error(ErrorKind::Parse, "'rank' is required for free group representations");
  if (spec.mode == "semisaturated") return PartialRep<S>::semisaturated(spec.rank, generator_list(images, spec.rank));
  std::map<ReducedWord, Matrix<S>> table;
  for (const auto& [key, m] : images) table.emplace(io::word_from_json(spec.rank, key), m);
  return PartialRep<S>::table(spec.rank, spec.dim, std::move(table));
}

template <class S>
std::vector<std::pair<ReducedWord, ReducedWord>> sample_pairs(const PartialRep<S>& u, int cap) {
  std::vector<ReducedWord> words;
  if (u.mode() == PartialRep<S>::Mode::Semisaturated) {
    words = ball(u.rank(), cap);
  } else {
    for (const auto& w : ball(u.rank(), cap))
      if (u.has_image(w) && u.has_image(w.inverse())) words.push_back(w);
  }
  std::vector<std::pair<ReducedWord, ReducedWord>> pairs;
  for (const auto& s : words)
    for (const auto& t : words)
      if (u.has_image(s * t)) pairs.emplace_back(s, t);
  return pairs;
}

template <class G, class S>
CheckReport nica_check(const G& g, const io::RepSpec& spec, const std::map<std::string, Matrix<S>>& images, double tol) {
  std::map<typename G::Element, Matrix<S>> v;
  for (const auto& [key, m] : images) {
    auto p = g.parse(key);
    if (!g.in_positive(p)) throw Error(ErrorKind::InvalidInput, "isometry key " + key + " is not in P");
    v.emplace(std::move(p), m);
  }
  std::vector<typename G::Element> positives;
  for (const auto& [p, m] : v) positives.push_back(p);
  std::vector<std::pair<typename G::Element, typename G::Element>> pairs;
  std::size_t skipped = 0;
  for (const auto& x : positives)
    for (const auto& y : positives) {
      auto b = g.lub(x, y);
      if (!b.is_infinite() && !v.count(b.value())) {
        ++skipped;
        continue;
      }
      pairs.emplace_back(x, y);
    }
  std::function<Matrix<S>(const typename G::Element&)> u = [&](const typename G::Element& x) { return v.at(x); };
  auto report = check_nica_relations<S, G>(g, u, spec.dim, positives, pairs, tol);
  report.skipped += skipped;
  return report;
}

template <class S>
CheckReport run_check(const CheckOpts& o, const io::RepSpec& spec, const std::map<std::string, Matrix<S>>& images, double tol) {
  const auto [kind, arg] = split_relations(o.relations);
  if (kind == "nica") {
    const auto inst = io::ql_instance_from_json(json_arg(arg));
    if (inst.type == "ZkNk") return nica_check(ql::ZkNk(inst.param), spec, images, tol);
    return nica_check(ql::FreeQL(inst.param), spec, images, tol);
  }
  const PartialRep<S> u = build_rep(spec, images);
  const auto pairs = sample_pairs(u, o.cap);
  CheckReport report = check_partial_rep<S>(u, pairs, tol);
  if (kind == "ck") {
    const CKMatrix a = matrix_arg(arg);
    if (a.n() != spec.rank) throw Error(ErrorKind::DimensionMismatch, "matrix size differs from the representation rank");
    if (u.mode() == PartialRep<S>::Mode::Semisaturated) report.merge(check_ck_family<S>(u.generators(), a, tol));
    const auto polys = ck::ck_relation_polys(a, o.cap);
    report.merge(check_relations<S>(u, polys, tol));
  } else if (kind == "file") {
    const auto polys = io::relations_from_json(spec.rank, json_arg(arg));
    report.merge(check_relations<S>(u, polys, tol));
  } else if (!kind.empty() && kind != "none") {
    throw Error(ErrorKind::Parse, "--relations must be ck:, nica:, file: or none");
  }
  return report;
}

int cmd_check_rep(const CheckOpts& o) {
  const io::RepSpec spec = io::rep_from_json(json_arg(o.rep));
  double tol = 0.0;
  if (!spec.exact) {
    tol = o.tol.value_or(default_tolerance(spec.dim));
    if (tol <= 0.0) throw Error(ErrorKind::InvalidInput, "--tol 0 selects exact mode, but the representation has floating entries");
  }
  const CheckReport report = spec.exact ? run_check<Gaussian>(o, spec, spec.exact_images, tol)
                                        : run_check<Complex>(o, spec, spec.float_images, tol);
  if (o.json) {
    json j = report_json(report);
    j["mode"] = spec.exact ? "exact" : "float";
    j["tolerance"] = tol;
    emit(j);
  } else {
    print_report(report);
  }
  return report.passed() ? 0 : 1;
}

// ---- spectrum -----------------------------------------------------------

struct SpectrumOpts {
  std::string relations = "empty";
  int rank = 1;
  int radius = 1;
  bool json = false;
};

int cmd_spectrum(const SpectrumOpts& o) {
  if (o.rank < 1) throw Error(ErrorKind::InvalidInput, "--rank must be positive");
  check_spectrum_guard(o.rank, o.radius);
  const auto [kind, arg] = split_relations(o.relations);
  std::vector<FreeRelation> rels;
  if (kind == "ck") {
    const CKMatrix a = matrix_arg(arg);
    if (a.n() != o.rank) throw Error(ErrorKind::DimensionMismatch, "matrix size differs from --rank");
    rels = ck::ck_relation_polys(a, o.radius);
  } else if (kind == "file") {
    rels = io::relations_from_json(o.rank, json_arg(arg));
  } else if (kind != "empty" && kind != "none") {
    throw Error(ErrorKind::Parse, "--relations must be empty, ck: or file:");
  }
  const auto patterns = enumerate_spectrum_ball(rels, o.rank, o.radius);
  if (o.json) {
    json list = json::array();
    for (const auto& p : patterns) {
      json j = io::to_json(p);
      json skipped = json::array();
      for (const auto& s : satisfies_relations_locally(p, rels).skipped)
        skipped.push_back({{"center", s.center.to_string()}, {"relation", rels[s.relation].label}});
      j["skipped"] = skipped;
      list.push_back(j);
    }
    emit({{"rank", o.rank}, {"radius", o.radius}, {"count", patterns.size()}, {"patterns", list}});
    return 0;
  }
  std::cout << patterns.size() << " pattern(s)\n";
  for (const auto& p : patterns) {
    std::cout << "{";
    bool first = true;
    for (const auto& w : p.members) {
      std::cout << (first ? "" : ", ") << w.to_string();
      first = false;
    }
    std::cout << "}\n";
  }
  return 0;
}

// ---- qlattice -----------------------------------------------------------

struct QLOpts {
  std::string instance;
  std::string op;
  std::vector<std::string> args;
  int radius = 2;
  bool json = false;
};

template <class G>
json ql_query(const G& g, const QLOpts& o) {
  auto need = [&](std::size_t k) {
    if (o.args.size() != k) throw Error(ErrorKind::Parse, o.op + " takes " + std::to_string(k) + " element(s)");
  };
  if (o.op == "lub") {
    need(2);
    auto b = g.lub(g.parse(o.args[0]), g.parse(o.args[1]));
    return b.is_infinite() ? json("INFINITY") : json(g.format(b.value()));
  }
  if (o.op == "sigmatau") {
    need(1);
    auto st = ql::sigma_tau(g, g.parse(o.args[0]));
    if (!st) return "absent";
    return json{{"sigma", g.format(st->first)}, {"tau", g.format(st->second)}};
  }
  if (o.op == "principal") {
    need(1);
    json list = json::array();
    for (const auto& x : ql::principal_point(g, g.parse(o.args[0]), g.ball(o.radius))) list.push_back(g.format(x));
    return list;
  }
  throw Error(ErrorKind::Parse, "unknown qlattice query '" + o.op + "'");
}

int cmd_qlattice(const QLOpts& o) {
  const auto inst = io::ql_instance_from_json(json_arg(o.instance));
  json result = inst.type == "ZkNk" ? ql_query(ql::ZkNk(inst.param), o) : ql_query(ql::FreeQL(inst.param), o);
  if (o.json) {
    emit({{"instance", inst.type}, {"query", o.op}, {"result", result}});
  } else if (result.is_string()) {
    std::cout << result.get<std::string>() << "\n";
  } else {
    std::cout << result.dump() << "\n";
  }
  return 0;
}

// ---- hcompress ----------------------------------------------------------

struct HOpts {
  std::string system;
  std::string element;
  double eps = 0.1;
  bool json = false;
};

int cmd_hcompress(const HOpts& o) {
  const auto sys = io::finite_system_from_json(json_arg(o.system));
  const auto c = io::crossed_element_from_json(sys, json_arg(o.element));
  try {
    const auto r = cross::hprop_compress(sys, c, o.eps);
    json h = json::object();
    for (int x = 0; x < sys.num_states(); ++x) h[sys.states()[static_cast<std::size_t>(x)]] = io::to_json(r.h[static_cast<std::size_t>(x)]);
    json j = {{"x0", sys.states()[static_cast<std::size_t>(r.x0)]},
              {"h", h},
              {"normDiagonal", r.diagonal_norm},
              {"normExpectation", cross::sup_norm(cross::expectation(c, sys))},
              {"offDiagonal", r.off_diagonal},
              {"eps", o.eps}};
    if (o.json) {
      emit(j);
    } else {
      std::cout << "x0 = " << j["x0"].get<std::string>() << "\n||h E(c) h|| = " << r.diagonal_norm
                << "\n||h E(c) h - h c h|| = " << r.off_diagonal << "\n";
    }
  } catch (const cross::NoCompressionPoint& e) {
    if (o.json) {
      json obs = json::array();
      for (const auto& ob : e.obstructions()) {
        json fixed = json::array();
        for (int x : ob.fixed) fixed.push_back(sys.states()[static_cast<std::size_t>(x)]);
        obs.push_back({{"t", sys.group().name(ob.t)}, {"fixed", fixed}});
      }
      std::cerr << json{{"error", e.what()}, {"obstructions", obs}}.dump(2) << "\n";
    }
    throw;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial dynamical systems toolkit"};
  app.require_subcommand(1);

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze-ck", "Condition (I), topological freeness and simplicity of a 0/1 matrix");
  analyze->add_option("matrix", ao.matrix, "Matrix file (JSON or 0/1 rows)")->required();
  analyze->add_option("--depth", ao.depth, "Cylinder depth for the invariant-set probe");
  analyze->add_option("--dot", ao.dot, "Write the transition graph as DOT");
  analyze->add_flag("--json", ao.json, "JSON report");
  analyze->add_flag("--timing", ao.timing, "Include timing");

  CheckOpts co;
  auto* check = app.add_subcommand("check-rep", "Verify a partial representation against a relation family");
  check->add_option("rep", co.rep, "Representation JSON")->required();
  check->add_option("--relations", co.relations, "ck:A.json | nica:QL.json | file:polys.json | none");
  check->add_option("--tol", co.tol, "Floating tolerance");
  check->add_option("--cap", co.cap, "Word-length cap for sampled words and (CK_ss)");
  check->add_flag("--json", co.json, "JSON report");

  SpectrumOpts so;
  auto* spectrum = app.add_subcommand("spectrum", "Enumerate the truncated spectrum of a relation set");
  spectrum->add_option("--relations", so.relations, "empty | ck:A | file:polys.json");
  spectrum->add_option("--rank", so.rank, "Free group rank");
  spectrum->add_option("--radius", so.radius, "Ball radius");
  spectrum->add_flag("--json", so.json, "JSON output");

  QLOpts qo;
  auto* qlattice = app.add_subcommand("qlattice", "Quasi-lattice queries: lub x y | sigmatau x | principal t");
  qlattice->add_option("--instance", qo.instance, "Instance selector JSON (inline or file)")->required();
  qlattice->add_option("query", qo.op, "lub, sigmatau or principal")->required();
  qlattice->add_option("args", qo.args, "Elements");
  qlattice->add_option("--radius", qo.radius, "Ball radius for principal");
  qlattice->add_flag("--json", qo.json, "JSON output");

  HOpts ho;
  auto* hcompress = app.add_subcommand("hcompress", "Compression function h for a crossed-product element");
  hcompress->add_option("system", ho.system, "FiniteSystem JSON")->required();
  hcompress->add_option("--element", ho.element, "CrossedElement JSON")->required();
  hcompress->add_option("--eps", ho.eps, "Epsilon");
  hcompress->add_flag("--json", ho.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(ao);
    if (*check) return cmd_check_rep(co);
    if (*spectrum) return cmd_spectrum(so);
    if (*qlattice) return cmd_qlattice(qo);
    if (*hcompress) return cmd_hcompress(ho);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
