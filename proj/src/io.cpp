#include "pdsx/io.hpp"

#include <fstream>
#include <sstream>

#include "pdsx/error.hpp"

namespace pdsx::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) fail("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string state_name(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  fail("state names must be strings or integers");
}

Complex complex_from_json(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
  fail("expected a number or a [re, im] pair");
}

bool is_exact_entry(const json& v) { return v.is_string() || v.is_number_integer(); }

template <class S, class F>
Matrix<S> matrix_from_json(const json& rows, std::size_t dim, F entry) {
  if (!rows.is_array() || rows.size() != dim) fail("matrix must have " + std::to_string(dim) + " rows");
  Matrix<S> m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!rows[r].is_array() || rows[r].size() != dim) fail("matrix row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = entry(rows[r][c]);
  }
  return m;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Gaussian gaussian_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return Gaussian::parse(j.get<std::string>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (j.is_number_integer()) return Gaussian(j.get<long>());
  const Complex z = complex_from_json(j);
  return Gaussian(mpq_class(z.real()), mpq_class(z.imag()));
}

json to_json(const Gaussian& z) { return z.to_string(); }

CKMatrix ck_matrix_from_json(const json& j) {
  const int n = int_field(j, "n");
  const auto& a = field(j, "a");
  if (!a.is_array() || static_cast<int>(a.size()) != n) fail("'a' must have n rows");
  std::vector<std::vector<int>> rows;
  for (const auto& row : a) {
    if (!row.is_array()) fail("'a' rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) fail("matrix entries must be integers");
      r.push_back(v.get<int>());
    }
    rows.push_back(std::move(r));
  }
  return CKMatrix(rows);
}

CKMatrix ck_matrix_from_text(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream in(line);
    std::vector<int> row;
    std::string tok;
    while (in >> tok) {
      if (tok != "0" && tok != "1") fail("matrix text must contain only 0 and 1 entries");
      row.push_back(tok == "1" ? 1 : 0);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) fail("empty matrix file");
  return CKMatrix(rows);
}

CKMatrix read_ck_matrix(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return ck_matrix_from_json(parse_json(text));
  return ck_matrix_from_text(text);
}

json to_json(const CKMatrix& a) { return json{{"n", a.n()}, {"a", a.rows()}}; }

ReducedWord word_from_json(int rank, const json& j) {
  try {
    if (j.is_string()) return ReducedWord::parse(rank, j.get<std::string>());
    if (j.is_array()) {
      std::vector<int> letters;
      for (const auto& v : j) {
        if (!v.is_number_integer()) fail("word arrays hold signed integers");
        letters.push_back(v.get<int>());
      }
      return ReducedWord::from_signed(rank, letters);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(e.what());
  }
  fail("a word is a string or an array of signed integers");
}

json to_json(const BallPattern& omega) {
  json members = json::array();
  for (const auto& w : omega.members) members.push_back(w.to_string());
  return json{{"radius", omega.radius}, {"members", members}};
}

BallPattern pattern_from_json(int rank, const json& j) {
  const int radius = int_field(j, "radius");
  const auto& m = field(j, "members");
  if (!m.is_array()) fail("'members' must be an array");
  std::set<ReducedWord> members;
  for (const auto& w : m) members.insert(word_from_json(rank, w));
  return BallPattern::make(rank, radius, std::move(members));
}

FiniteGroup finite_group_from_json(const json& j) {
  const auto& names_j = field(j, "names");
  if (!names_j.is_array()) fail("'names' must be an array");
  std::vector<std::string> names;
  for (const auto& v : names_j) names.push_back(state_name(v));
  const auto& table_j = field(j, "table");
  if (!table_j.is_array()) fail("'table' must be an array");
  std::vector<std::vector<int>> table;
  for (const auto& row : table_j) {
    if (!row.is_array()) fail("'table' rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (v.is_number_integer()) {
        r.push_back(v.get<int>());
      } else if (v.is_string()) {
        auto it = std::find(names.begin(), names.end(), v.get<std::string>());
        if (it == names.end()) fail("unknown element '" + v.get<std::string>() + "' in table");
        r.push_back(static_cast<int>(it - names.begin()));
      } else {
        fail("table entries are names or indices");
      }
    }
    table.push_back(std::move(r));
  }
  return FiniteGroup(std::move(names), std::move(table));
}

RepSpec rep_from_json(const json& j) {
  RepSpec spec;
  spec.rank = j.contains("rank") ? int_field(j, "rank") : 0;
  const int dim = int_field(j, "dim");
  if (dim <= 0) fail("'dim' must be positive");
  spec.dim = static_cast<std::size_t>(dim);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) fail("'mode' must be a string");
    spec.mode = j["mode"].get<std::string>();
    if (spec.mode != "semisaturated" && spec.mode != "table") fail("'mode' must be semisaturated or table");
  }
  const auto& gens = field(j, "generators");
  if (!gens.is_object()) fail("'generators' must be an object");
  bool any_exact = false;
  bool any_float = false;
  for (const auto& [key, rows] : gens.items()) {
    if (!rows.is_array()) fail("generator " + key + " must be a matrix");
    for (const auto& row : rows) {
      if (!row.is_array()) fail("generator " + key + " rows must be arrays");
      for (const auto& v : row) (is_exact_entry(v) ? any_exact : any_float) = true;
    }
  }
  if (any_exact && any_float) fail("exact and floating entries are mixed");
  spec.exact = !any_float;
  for (const auto& [key, rows] : gens.items()) {
    if (spec.exact) {
      spec.exact_images.emplace(key, matrix_from_json<Gaussian>(rows, spec.dim, [](const json& v) { return gaussian_from_json(v); }));
    } else {
      spec.float_images.emplace(key, matrix_from_json<Complex>(rows, spec.dim, [](const json& v) { return complex_from_json(v); }));
    }
  }
  return spec;
}

std::vector<FreeRelation> relations_from_json(int rank, const json& j) {
  const auto& rels = field(j, "relations");
  if (!rels.is_array()) fail("'relations' must be an array");
  std::vector<FreeRelation> out;
  for (const auto& r : rels) {
    FreeRelation f;
    if (r.contains("label")) f.label = r["label"].get<std::string>();
    const auto& terms = field(r, "terms");
    if (!terms.is_array()) fail("'terms' must be an array");
    for (const auto& t : terms) {
      std::vector<ReducedWord> factors;
      const auto& fj = field(t, "factors");
      if (!fj.is_array()) fail("'factors' must be an array");
      for (const auto& w : fj) factors.push_back(word_from_json(rank, w));
      f.add(gaussian_from_json(field(t, "coefficient")), std::move(factors));
    }
    out.push_back(std::move(f));
  }
  return out;
}

QLInstance ql_instance_from_json(const json& j) {
  const auto& type = field(j, "type");
  if (!type.is_string()) fail("'type' must be a string");
  QLInstance q{type.get<std::string>(), 0};
  if (q.type == "ZkNk") {
    q.param = int_field(j, "k");
  } else if (q.type == "FreeQL") {
    q.param = int_field(j, "n");
  } else {
    fail("unknown instance type '" + q.type + "'");
  }
  if (q.param < 1) fail("instance parameter must be positive");
  return q;
}

cross::FiniteSystem finite_system_from_json(const json& j) {
  const auto& states_j = field(j, "states");
  if (!states_j.is_array()) fail("'states' must be an array");
  std::vector<std::string> states;
  for (const auto& s : states_j) states.push_back(state_name(s));
  auto state_index = [&](const json& v) {
    const std::string name = state_name(v);
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) fail("unknown state '" + name + "'");
    return static_cast<int>(it - states.begin());
  };
  const auto& group_j = field(j, "group");
  const auto& type_j = field(group_j, "type");
  if (!type_j.is_string()) fail("group 'type' must be a string");
  const std::string type = type_j.get<std::string>();
  const auto& theta_j = field(j, "theta");
  if (!theta_j.is_object()) fail("'theta' must be an object");
  const std::size_t n = states.size();

  auto read_map = [&](const json& pairs) {
    if (!pairs.is_array()) fail("theta entries are arrays of [x, y] pairs");
    std::vector<int> m(n, -1);
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2) fail("theta entries are arrays of [x, y] pairs");
      const int x = state_index(p[0]);
      if (m[static_cast<std::size_t>(x)] >= 0) fail("state listed twice in one theta map");
      m[static_cast<std::size_t>(x)] = state_index(p[1]);
    }
    return m;
  };

  if (type == "free") {
    const int rank = int_field(group_j, "rank");
    const int cap = int_field(group_j, "cap");
    std::vector<std::vector<int>> gens(static_cast<std::size_t>(rank), std::vector<int>(n, -1));
    for (const auto& [key, pairs] : theta_j.items()) {
      ReducedWord w;
      try {
        w = ReducedWord::parse(rank, key);
      } catch (const Error& e) {
        fail(e.what());
      }
      if (w.length() != 1 || w.first() < 0) fail("free systems list theta for generators only, got '" + key + "'");
      gens[static_cast<std::size_t>(w.first() - 1)] = read_map(pairs);
    }
    return cross::FiniteSystem::free_generated(static_cast<int>(n), gens, cap, states);
  }

  FiniteGroup g = type == "cyclic" ? FiniteGroup::cyclic(int_field(group_j, "order"))
                  : type == "finite" ? finite_group_from_json(group_j)
                                     : (fail("group type must be finite, cyclic or free"), FiniteGroup::cyclic(1));
  std::vector<std::vector<int>> theta(static_cast<std::size_t>(g.size()), std::vector<int>(n, -1));
  std::vector<bool> given(static_cast<std::size_t>(g.size()), false);
  for (const auto& [key, pairs] : theta_j.items()) {
    const int t = g.index_of(key);
    theta[static_cast<std::size_t>(t)] = read_map(pairs);
    given[static_cast<std::size_t>(t)] = true;
  }
  for (std::size_t x = 0; x < n; ++x) theta[static_cast<std::size_t>(g.identity())][x] = static_cast<int>(x);
  for (int t = 0; t < g.size(); ++t) {
    const int ti = g.inverse(t);
    if (given[static_cast<std::size_t>(ti)] || !given[static_cast<std::size_t>(t)]) continue;
    for (std::size_t x = 0; x < n; ++x) {
      const int y = theta[static_cast<std::size_t>(t)][x];
      if (y >= 0) theta[static_cast<std::size_t>(ti)][static_cast<std::size_t>(y)] = static_cast<int>(x);
    }
  }
  return cross::FiniteSystem(std::move(states), cross::GroupIndex::finite(std::move(g)), std::move(theta));
}

cross::CrossedElement crossed_element_from_json(const cross::FiniteSystem& sys, const json& j) {
  const auto& terms = field(j, "terms");
  if (!terms.is_object()) fail("'terms' must be an object");
  cross::CrossedElement p;
  for (const auto& [key, coeffs] : terms.items()) {
    const int t = sys.group().index_of(key);
    if (!coeffs.is_object()) fail("coefficients are objects keyed by state");
    cross::Coefficients a(static_cast<std::size_t>(sys.num_states()));
    for (const auto& [x, v] : coeffs.items()) a[static_cast<std::size_t>(sys.state_index(x))] = gaussian_from_json(v);
    p.add(sys, t, a);
  }
  return p;
}

json to_json(const cross::FiniteSystem& sys, const cross::CrossedElement& p) {
  json terms = json::object();
  for (const auto& [t, a] : p.terms()) {
    json c = json::object();
    for (int x = 0; x < sys.num_states(); ++x)
      if (!a[static_cast<std::size_t>(x)].is_zero()) c[sys.states()[static_cast<std::size_t>(x)]] = to_json(a[static_cast<std::size_t>(x)]);
    terms[sys.group().name(t)] = c;
  }
  return json{{"terms", terms}};
}

}  // namespace pdsx::io
