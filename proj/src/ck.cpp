#include "pdsx/ck.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pdsx/error.hpp"

namespace pdsx::ck {

namespace {

bool shortlex_less(const PathPrefix& a, const PathPrefix& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters < b.letters;
}

void require_letters(const PathPrefix& p, const CKMatrix& a) {
  for (int l : p.letters)
    if (l < 1 || l > a.n())
      throw Error(ErrorKind::InvalidInput, "letter " + std::to_string(l) + " outside 1.." + std::to_string(a.n()));
}

bool is_prefix_of(const std::vector<int>& p, const std::vector<int>& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

// Smallest root rho with gamma = rho^p.
std::pair<PathPrefix, long> primitive_root(const PathPrefix& gamma) {
  const std::size_t n = gamma.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = gamma.letters[i] == gamma.letters[i - d];
    if (ok) return {gamma.take(d), static_cast<long>(n / d)};
  }
  return {gamma, 1};
}

// Moves trailing letters of the head into the cycle so that their last
// letters differ.
EventuallyPeriodicPath canonical(PathPrefix head, PathPrefix cycle, long power) {
  while (!head.empty() && head.letters.back() == cycle.letters.back()) {
    head.letters.pop_back();
    std::rotate(cycle.letters.rbegin(), cycle.letters.rbegin() + 1, cycle.letters.rend());
  }
  return {std::move(head), std::move(cycle), power};
}

// All admissible extensions of p to length len (p itself if already long enough).
std::vector<PathPrefix> extensions(const PathPrefix& p, const CKMatrix& a, std::size_t len) {
  std::vector<PathPrefix> frontier{p};
  while (!frontier.empty() && frontier.front().size() < len) {
    std::vector<PathPrefix> next;
    for (const auto& q : frontier) {
      for (int j = 1; j <= a.n(); ++j) {
        if (!q.empty() && !a(q.letters.back(), j)) continue;
        PathPrefix r = q;
        r.letters.push_back(j);
        next.push_back(std::move(r));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace

PathPrefix PathPrefix::take(std::size_t len) const {
  PathPrefix out;
  out.letters.assign(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(std::min(len, letters.size())));
  return out;
}

std::string PathPrefix::to_string() const {
  if (letters.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(letters[i]);
  }
  return s;
}

PathPrefix EventuallyPeriodicPath::take(std::size_t len) const {
  PathPrefix out = head.take(len);
  while (out.size() < len) out.letters.push_back(cycle.letters[(out.size() - head.size()) % cycle.size()]);
  return out;
}

std::string EventuallyPeriodicPath::to_string() const {
  std::string s = head.empty() ? "" : head.to_string() + " ";
  return s + "(" + cycle.to_string() + ")^inf";
}

bool is_admissible(const PathPrefix& p, const CKMatrix& a) {
  require_letters(p, a);
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!a(p.letters[i], p.letters[i + 1])) return false;
  return true;
}

bool is_circuit(const PathPrefix& gamma, const CKMatrix& a) {
  return !gamma.empty() && is_admissible(gamma, a) && a(gamma.letters.back(), gamma.letters.front());
}

std::vector<PathPrefix> admissible_prefixes(const CKMatrix& a, int length) {
  if (length < 0) throw Error(ErrorKind::InvalidInput, "negative prefix length");
  return extensions(PathPrefix{}, a, static_cast<std::size_t>(length));
}

std::vector<PathPrefix> simple_circuits(const CKMatrix& a) {
  std::vector<PathPrefix> out;
  const int n = a.n();
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  PathPrefix path;
  std::function<void(int)> dfs = [&](int v) {
    if (a(v, path.letters.front())) out.push_back(path);
    for (int j = 1; j <= n; ++j) {
      if (!a(v, j) || used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = true;
      path.letters.push_back(j);
      dfs(j);
      path.letters.pop_back();
      used[static_cast<std::size_t>(j)] = false;
    }
  };
  for (int v = 1; v <= n; ++v) {
    used[static_cast<std::size_t>(v)] = true;
    path.letters = {v};
    dfs(v);
    used[static_cast<std::size_t>(v)] = false;
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

bool is_terminal(const PathPrefix& gamma, const CKMatrix& a) {
  if (!is_circuit(gamma, a)) throw Error(ErrorKind::InvalidInput, gamma.to_string() + " is not a circuit");
  return std::all_of(gamma.letters.begin(), gamma.letters.end(), [&](int l) { return a.row_sum(l) == 1; });
}

ConditionI condition_I(const CKMatrix& a) {
  for (const auto& c : simple_circuits(a))
    if (is_terminal(c, a)) return {false, c};
  return {};
}

std::optional<Cylinder> theta_apply(const ReducedWord& t, const Cylinder& c, const CKMatrix& a, int depth) {
  if (t.rank() != a.n() && !t.is_identity())
    throw Error(ErrorKind::DimensionMismatch, "word rank does not match the matrix size");
  if (static_cast<int>(t.length() + c.prefix.size()) > depth)
    throw Error(ErrorKind::TruncationOverflow, "|t| + |prefix| exceeds depth " + std::to_string(depth));
  if (!is_admissible(c.prefix, a)) throw Error(ErrorKind::InvalidInput, "cylinder prefix is not admissible");
  std::vector<int> w = c.prefix.letters;
  const auto letters = t.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (w.empty()) throw Error(ErrorKind::TruncationOverflow, "prefix too short to decide the domain");
    const int l = *it;
    if (l > 0) {
      if (!a(l, w.front())) return std::nullopt;
      w.insert(w.begin(), l);
    } else {
      if (w.front() != -l) return std::nullopt;
      w.erase(w.begin());
      if (w.empty()) throw Error(ErrorKind::TruncationOverflow, "image is not a single cylinder at this depth");
    }
  }
  return Cylinder{PathPrefix{std::move(w)}};
}

std::optional<EventuallyPeriodicPath> fixed_set(const ReducedWord& t, const CKMatrix& a) {
  if (t.is_identity()) throw Error(ErrorKind::InvalidInput, "fixed_set needs t != e");
  if (t.rank() != a.n()) throw Error(ErrorKind::DimensionMismatch, "word rank does not match the matrix size");
  const auto rs = positive_negative_factor(t);
  if (!rs) return std::nullopt;
  const auto& r = rs->first.signed_letters();
  const auto& s = rs->second.signed_letters();
  PathPrefix head, gamma;
  long sign = 1;
  if (r.size() > s.size()) {
    if (!is_prefix_of(s, r)) return std::nullopt;
    head.letters = s;
    gamma.letters.assign(r.begin() + static_cast<std::ptrdiff_t>(s.size()), r.end());
  } else {
    if (!is_prefix_of(r, s)) return std::nullopt;
    head.letters = r;
    gamma.letters.assign(s.begin() + static_cast<std::ptrdiff_t>(r.size()), s.end());
    sign = -1;
  }
  PathPrefix whole = head;
  whole.letters.insert(whole.letters.end(), gamma.letters.begin(), gamma.letters.end());
  whole.letters.insert(whole.letters.end(), gamma.letters.begin(), gamma.letters.end());
  if (!is_admissible(whole, a)) return std::nullopt;
  auto [root, p] = primitive_root(gamma);
  return canonical(std::move(head), std::move(root), sign * p);
}

bool is_isolated(const EventuallyPeriodicPath& p, const CKMatrix& a) { return is_terminal(p.cycle, a); }

TopologicalFreeness is_topologically_free(const CKMatrix& a) {
  const int n = a.n();
  std::vector<int> succ(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    if (a.row_sum(v) != 1) continue;
    for (int j = 1; j <= n; ++j)
      if (a(v, j)) succ[static_cast<std::size_t>(v)] = j;
  }
  for (int start = 1; start <= n; ++start) {
    std::vector<int> seen;
    int v = start;
    while (v != 0 && std::find(seen.begin(), seen.end(), v) == seen.end()) {
      seen.push_back(v);
      v = succ[static_cast<std::size_t>(v)];
    }
    if (v == 0) continue;
    // v closes a cycle of unique successors.
    PathPrefix gamma;
    int u = v;
    do {
      gamma.letters.push_back(u);
      u = succ[static_cast<std::size_t>(u)];
    } while (u != v);
    auto lo = std::min_element(gamma.letters.begin(), gamma.letters.end());
    std::rotate(gamma.letters.begin(), lo, gamma.letters.end());
    TopologicalFreeness out;
    out.holds = false;
    out.terminal_circuit = gamma;
    out.fixing_element = gamma.as_word(n);
    out.fixed_path = EventuallyPeriodicPath{{}, gamma, 1};
    return out;
  }
  return {};
}

std::optional<EventuallyPeriodicPath> find_isolated_point(const CKMatrix& a) {
  const int n = a.n();
  // counts[L][v] = number of admissible words of length L + 1 starting at v.
  std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(n) + 1,
                                                 std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 1));
  for (int len = 1; len <= n; ++len)
    for (int v = 1; v <= n; ++v) {
      std::uint64_t c = 0;
      for (int j = 1; j <= n; ++j)
        if (a(v, j)) c += counts[static_cast<std::size_t>(len - 1)][static_cast<std::size_t>(j)];
      counts[static_cast<std::size_t>(len)][static_cast<std::size_t>(v)] = c;
    }
  auto unique_future = [&](int v) {
    for (int len = 1; len <= n; ++len)
      if (counts[static_cast<std::size_t>(len)][static_cast<std::size_t>(v)] != 1) return false;
    return true;
  };
  for (int len = 1; len <= n; ++len) {
    for (const auto& gamma : admissible_prefixes(a, len)) {
      if (!a(gamma.letters.back(), gamma.letters.front())) continue;
      if (!unique_future(gamma.letters.front())) continue;
      auto [root, p] = primitive_root(gamma);
      return EventuallyPeriodicPath{{}, root, p};
    }
  }
  return std::nullopt;
}

std::string to_string(Simplicity s) {
  switch (s) {
    case Simplicity::Simple: return "simple";
    case Simplicity::NotSimple: return "not-simple";
    case Simplicity::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::vector<std::vector<int>> strongly_connected_components(const CKMatrix& a) {
  const int n = a.n();
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n) + 1, std::vector<bool>(static_cast<std::size_t>(n) + 1));
  for (int i = 1; i <= n; ++i) {
    reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
    for (int j = 1; j <= n; ++j)
      if (a(i, j)) reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  }
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
            reach[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
          reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  std::vector<std::vector<int>> out;
  std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
  for (int i = 1; i <= n; ++i) {
    if (placed[static_cast<std::size_t>(i)]) continue;
    std::vector<int> comp;
    for (int j = i; j <= n; ++j)
      if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
          reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
        comp.push_back(j);
        placed[static_cast<std::size_t>(j)] = true;
      }
    out.push_back(std::move(comp));
  }
  return out;
}

bool invariant_cylinder_union_check(const std::vector<Cylinder>& cylinders, const CKMatrix& a, int depth) {
  const int piece_len = depth - 1;
  for (const auto& c : cylinders) {
    if (!is_admissible(c.prefix, a)) throw Error(ErrorKind::InvalidInput, "cylinder prefix is not admissible");
    if (static_cast<int>(c.prefix.size()) > piece_len)
      throw Error(ErrorKind::TruncationOverflow, "cylinder prefix longer than depth - 1");
  }
  if (piece_len < 2) throw Error(ErrorKind::TruncationOverflow, "depth must be at least 3");
  const std::size_t cover_len = static_cast<std::size_t>(depth);
  auto covered = [&](const PathPrefix& p) {
    for (const auto& q : extensions(p, a, cover_len)) {
      bool hit = std::any_of(cylinders.begin(), cylinders.end(),
                             [&](const Cylinder& c) { return is_prefix_of(c.prefix.letters, q.letters); });
      if (!hit) return false;
    }
    return true;
  };
  for (const auto& c : cylinders) {
    for (const auto& piece : extensions(c.prefix, a, static_cast<std::size_t>(piece_len))) {
      for (int g = 1; g <= a.n(); ++g) {
        for (int sign : {+1, -1}) {
          auto image = theta_apply(ReducedWord::generator(a.n(), g, sign), Cylinder{piece}, a, depth);
          if (image && !covered(image->prefix)) return false;
        }
      }
    }
  }
  return true;
}

SimplicityVerdict simplicity_verdict(const CKMatrix& a, int depth) {
  SimplicityVerdict out;
  out.components = strongly_connected_components(a);
  const bool irreducible = out.components.size() == 1;
  const bool permutation = a.is_permutation();
  if (irreducible && !permutation) {
    out.verdict = Simplicity::Simple;
    out.reasons.push_back("A is irreducible and not a permutation matrix: the action is minimal and topologically free");
    return out;
  }
  if (!irreducible) out.reasons.push_back("A is reducible (" + std::to_string(out.components.size()) + " strongly connected components)");
  if (permutation) out.reasons.push_back("A is a permutation matrix");
  if (!condition_I(a).holds) out.reasons.push_back("condition (I) fails");
  // Refuter: proper nonempty invariant unions of depth-1 cylinders.
  const int n = a.n();
  if (n <= 16) {
    for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
      std::vector<Cylinder> cyl;
      for (int i = 1; i <= n; ++i)
        if ((mask >> (i - 1)) & 1U) cyl.push_back(Cylinder{PathPrefix{{i}}});
      if (invariant_cylinder_union_check(cyl, a, std::max(depth, 3))) {
        out.verdict = Simplicity::NotSimple;
        out.invariant_union = std::move(cyl);
        out.reasons.push_back("found a proper invariant open set, which gives a proper ideal");
        return out;
      }
    }
  }
  out.verdict = Simplicity::Undetermined;
  out.reasons.push_back("not covered by the irreducible non-permutation criterion");
  return out;
}

SpecCheck spec_check_report(const BallPattern& omega, const CKMatrix& a) {
  if (omega.rank != a.n()) throw Error(ErrorKind::DimensionMismatch, "pattern rank does not match the matrix size");
  SpecCheck out;
  if (!omega.contains(ReducedWord(omega.rank))) {
    out.holds = false;
    return out;
  }
  for (const auto& t : omega.members)
    for (const auto& s : initial_segments(t))
      if (!omega.contains(s)) {
        out.holds = false;
        return out;
      }
  const int n = a.n();
  for (const auto& t : omega.members) {
    if (static_cast<int>(t.length()) >= omega.radius) {
      out.skipped.push_back(t);
      continue;
    }
    int j = 0;
    for (int g = 1; g <= n; ++g) {
      if (!omega.contains(t * ReducedWord::generator(n, g))) continue;
      if (j != 0) {
        out.holds = false;
        return out;
      }
      j = g;
    }
    if (j == 0) {
      out.holds = false;
      return out;
    }
    for (int i = 1; i <= n; ++i)
      if (omega.contains(t * ReducedWord::generator(n, i, -1)) != a(i, j)) {
        out.holds = false;
        return out;
      }
  }
  return out;
}

BallPattern omega_from_path(const PathPrefix& mu, const CKMatrix& a, int radius) {
  if (radius < 0) throw Error(ErrorKind::InvalidInput, "negative radius");
  if (static_cast<int>(mu.size()) < radius)
    throw Error(ErrorKind::InvalidInput, "path prefix shorter than the radius");
  if (!is_admissible(mu, a)) throw Error(ErrorKind::InvalidInput, "path prefix is not admissible");
  const int n = a.n();
  std::set<ReducedWord> members;
  for (int j = 0; j <= radius; ++j) {
    const ReducedWord head = mu.take(static_cast<std::size_t>(j)).as_word(n);
    for (int len = 0; len <= radius - j; ++len) {
      for (const auto& nu : admissible_prefixes(a, len)) {
        if (len > 0 && !a(nu.letters.back(), mu.letters[static_cast<std::size_t>(j)])) continue;
        ReducedWord t = head * nu.as_word(n).inverse();
        if (static_cast<int>(t.length()) <= radius) members.insert(std::move(t));
      }
    }
  }
  return BallPattern::make(n, radius, std::move(members));
}

PathPrefix path_from_omega(const BallPattern& omega, const CKMatrix& a) {
  if (!spec_check(omega, a)) throw Error(ErrorKind::InvalidInput, "pattern fails the Cuntz-Krieger spectrum conditions");
  const int n = a.n();
  PathPrefix out;
  ReducedWord t(n);
  for (int step = 0; step < omega.radius; ++step) {
    for (int g = 1; g <= n; ++g) {
      ReducedWord next = t * ReducedWord::generator(n, g);
      if (omega.contains(next)) {
        out.letters.push_back(g);
        t = std::move(next);
        break;
      }
    }
  }
  return out;
}

std::vector<FreeRelation> ck_relation_polys(const CKMatrix& a, int max_length) {
  const int n = a.n();
  std::vector<FreeRelation> out;
  FreeRelation ck1;
  ck1.label = "CK1";
  for (int j = 1; j <= n; ++j) ck1.add(1, {ReducedWord::generator(n, j)});
  ck1.add(-1, {});
  out.push_back(std::move(ck1));
  for (int i = 1; i <= n; ++i) {
    FreeRelation r;
    r.label = "CK_A[" + std::to_string(i) + "]";
    for (int j = 1; j <= n; ++j)
      if (a(i, j)) r.add(1, {ReducedWord::generator(n, j)});
    r.add(-1, {ReducedWord::generator(n, i, -1)});
    out.push_back(std::move(r));
  }
  for (const auto& w : ball(n, max_length)) {
    for (std::size_t cut = 1; cut < w.length(); ++cut) {
      ReducedWord t = w.prefix(cut);
      ReducedWord r = w.suffix_from(cut);
      FreeRelation ss;
      ss.label = "CK_ss[" + t.to_string() + "|" + r.to_string() + "]";
      ss.add(1, {w, t});
      ss.add(-1, {w});
      out.push_back(std::move(ss));
    }
  }
  return out;
}

std::string to_dot(const CKMatrix& a) {
  std::set<int> red;
  std::set<std::pair<int, int>> red_edges;
  for (const auto& c : simple_circuits(a)) {
    if (!is_terminal(c, a)) continue;
    for (std::size_t i = 0; i < c.size(); ++i) {
      red.insert(c.letters[i]);
      red_edges.insert({c.letters[i], c.letters[(i + 1) % c.size()]});
    }
  }
  std::ostringstream os;
  os << "digraph A {\n";
  for (int i = 1; i <= a.n(); ++i) {
    os << "  " << i;
    if (red.count(i)) os << " [color=red]";
    os << ";\n";
  }
  for (int i = 1; i <= a.n(); ++i)
    for (int j = 1; j <= a.n(); ++j) {
      if (!a(i, j)) continue;
      os << "  " << i << " -> " << j;
      if (red_edges.count({i, j})) os << " [color=red]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace pdsx::ck
