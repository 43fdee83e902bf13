#include "pdsx/spectrum.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <exception>
#include <iterator>
#include <mutex>
#include <numeric>
#include <thread>

#include "pdsx/error.hpp"

namespace pdsx {

BallPattern BallPattern::make(int rank, int radius, std::set<ReducedWord> members) {
  if (radius < 0) throw Error(ErrorKind::InvalidInput, "negative radius");
  if (!members.count(ReducedWord(rank))) throw Error(ErrorKind::InvalidInput, "pattern must contain e");
  for (const auto& w : members) {
    if (w.rank() != rank) throw Error(ErrorKind::InvalidInput, "pattern member of wrong rank");
    if (static_cast<int>(w.length()) > radius) {
      throw Error(ErrorKind::InvalidInput, "member " + w.to_string() + " lies outside the ball");
    }
  }
  return BallPattern{rank, radius, std::move(members)};
}

BallPattern BallPattern::restrict_to(int new_radius) const {
  BallPattern out{rank, std::min(radius, new_radius), {}};
  for (const auto& w : members) {
    if (static_cast<int>(w.length()) <= out.radius) out.members.insert(w);
  }
  return out;
}

Gaussian evaluate(const FreeRelation& f, const BallPattern& omega) {
  Gaussian total;
  for (const auto& term : f.terms) {
    bool all = true;
    for (const auto& t : term.factors) {
      if (static_cast<int>(t.length()) > omega.radius) {
        throw Error(ErrorKind::TruncationOverflow, "factor " + t.to_string() + " exceeds radius " +
                                                       std::to_string(omega.radius));
      }
      all = all && omega.contains(t);
    }
    if (all) total += term.coefficient;
  }
  return total;
}

std::optional<BallPattern> translate(const BallPattern& omega, const ReducedWord& t) {
  const int len = static_cast<int>(t.length());
  if (len > omega.radius) {
    throw Error(ErrorKind::TruncationOverflow, "cannot translate by " + t.to_string() + " at radius " +
                                                   std::to_string(omega.radius));
  }
  if (!omega.contains(t.inverse())) return std::nullopt;
  BallPattern out{omega.rank, omega.radius - len, {}};
  for (const auto& x : omega.members) {
    auto y = concat(t, x);
    if (static_cast<int>(y.length()) <= out.radius) out.members.insert(std::move(y));
  }
  return out;
}

namespace {

int max_factor_length(const FreeRelation& f) {
  int m = 0;
  for (const auto& term : f.terms)
    for (const auto& t : term.factors) m = std::max(m, static_cast<int>(t.length()));
  return m;
}

}  // namespace

LocalVerdict satisfies_relations_locally(const BallPattern& omega, std::span<const FreeRelation> relations) {
  LocalVerdict v;
  std::vector<int> need(relations.size());
  for (std::size_t k = 0; k < relations.size(); ++k) need[k] = max_factor_length(relations[k]);

  for (const auto& t : omega.members) {
    // t in omega puts omega in the domain of theta_{t^{-1}}.
    auto shifted = translate(omega, t.inverse());
    for (std::size_t k = 0; k < relations.size(); ++k) {
      if (need[k] > shifted->radius) {
        v.skipped.push_back({t, k});
        continue;
      }
      if (!evaluate(relations[k], *shifted).is_zero()) {
        v.satisfied = false;
        if (!v.failure) v.failure = SkippedCheck{t, k};
      }
    }
  }
  return v;
}

void check_spectrum_guard(int rank, int radius) {
  if (radius < 0) throw Error(ErrorKind::InvalidInput, "negative radius");
  if (radius > 62) throw Error(ErrorKind::Guard, "ball too large to enumerate subsets");
  const std::uint64_t size = ball_size(rank, radius);
  if (size > 25 && !guards_overridden()) {
    throw Error(ErrorKind::Guard, "ball of radius " + std::to_string(radius) + " has " + std::to_string(size) +
                                      " elements; enumeration is limited to 25");
  }
  if (size > 62) throw Error(ErrorKind::Guard, "ball too large to enumerate subsets");
}

std::vector<BallPattern> enumerate_spectrum_ball(std::span<const FreeRelation> relations, int rank, int radius) {
  check_spectrum_guard(rank, radius);
  const auto elems = ball(rank, radius);
  const std::uint64_t count = std::uint64_t{1} << (elems.size() - 1);
  std::vector<std::exception_ptr> errors;
  std::mutex error_mu;
  auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::vector<BallPattern>& found) {
    try {
      for (std::uint64_t bits = lo; bits < hi; ++bits) {
        BallPattern omega{rank, radius, {elems.front()}};
        for (std::size_t i = 1; i < elems.size(); ++i) {
          if ((bits >> (i - 1)) & 1U) omega.members.insert(elems[i]);
        }
        if (satisfies_relations_locally(omega, relations).satisfied) found.push_back(std::move(omega));
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      errors.push_back(std::current_exception());
    }
  };
  // Contiguous chunks keep the output in bit order.
  const std::uint64_t workers =
      count < 4096 ? 1 : std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::vector<BallPattern>> parts(workers);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back(scan, count * w / workers, count * (w + 1) / workers, std::ref(parts[w]));
    }
  }
  if (!errors.empty()) std::rethrow_exception(errors.front());
  std::vector<BallPattern> out;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

std::vector<BallPattern> fixed_patterns(const ReducedWord& t, std::span<const BallPattern> patterns) {
  std::vector<BallPattern> out;
  for (const auto& omega : patterns) {
    if (static_cast<int>(t.length()) > omega.radius) continue;
    auto moved = translate(omega, t);
    if (moved && *moved == omega.restrict_to(moved->radius)) out.push_back(omega);
  }
  return out;
}

BallPattern infinite_group_separation_witness(const BasicOpenSet& u, const ReducedWord& t) {
  if (u.rank < 1) throw Error(ErrorKind::InvalidInput, "separation witness needs a free group of rank >= 1");
  if (t.is_identity()) throw Error(ErrorKind::InvalidInput, "t must be nontrivial");
  const ReducedWord e(u.rank);
  std::set<ReducedWord> in(u.inside.begin(), u.inside.end());
  std::set<ReducedWord> out(u.outside.begin(), u.outside.end());
  for (const auto& b : out) {
    if (in.count(b)) throw Error(ErrorKind::InvalidInput, "basic open set is inconsistent at " + b.to_string());
    if (b == e) throw Error(ErrorKind::InvalidInput, "basic open set excludes e and is empty in X_G");
  }
  const ReducedWord t_inv = t.inverse();
  if (out.count(t_inv)) {
    throw Error(ErrorKind::InvalidInput, "basic open set misses the domain of theta_t");
  }
  in.insert(e);
  in.insert(t_inv);

  std::set<ReducedWord> forbidden(in.begin(), in.end());
  forbidden.insert(out.begin(), out.end());
  for (const auto& a : in) forbidden.insert(concat(t_inv, a));

  // Search shortlex ball layers until a free element appears; the
  // forbidden set is finite so this terminates.
  std::size_t longest = 0;
  for (const auto& w : forbidden) longest = std::max(longest, w.length());
  std::optional<ReducedWord> c;
  for (const auto& w : ball(u.rank, static_cast<int>(longest) + 1)) {
    if (!forbidden.count(w)) {
      c = w;
      break;
    }
  }
  in.insert(*c);

  int radius = 0;
  for (const auto& w : in) radius = std::max(radius, static_cast<int>(w.length()));
  BallPattern omega{u.rank, radius, in};

  std::set<ReducedWord> moved;
  for (const auto& x : omega.members) moved.insert(concat(t, x));
  if (moved == omega.members) throw Error(ErrorKind::NoWitness, "constructed point is fixed");
  return omega;
}

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const int n = static_cast<int>(names_.size());
  if (n == 0) throw Error(ErrorKind::InvalidInput, "empty group");
  if (static_cast<int>(table_.size()) != n) throw Error(ErrorKind::InvalidInput, "table size mismatch");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidInput, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidInput, "table entry out of range");
  }
  identity_ = -1;
  for (int a = 0; a < n && identity_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = multiply(a, b) == b && multiply(b, a) == b;
    if (ok) identity_ = a;
  }
  if (identity_ < 0) throw Error(ErrorKind::InvalidInput, "table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) {
          throw Error(ErrorKind::InvalidInput, "table is not associative");
        }
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (multiply(a, b) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
  for (int v : inverse_)
    if (v < 0) throw Error(ErrorKind::InvalidInput, "table has an element without inverse");
}

FiniteGroup FiniteGroup::cyclic(int order) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(order));
  for (int a = 0; a < order; ++a) {
    names.push_back(a == 0 ? "e" : order == 2 ? "g" : "g" + std::to_string(a));
    for (int b = 0; b < order; ++b) table[static_cast<std::size_t>(a)].push_back((a + b) % order);
  }
  return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.size();
  const int nb = b.size();
  // Index i * nb + j; reorder so the identity comes first.
  std::vector<int> order;
  order.push_back(a.identity() * nb + b.identity());
  for (int k = 0; k < na * nb; ++k)
    if (k != order.front()) order.push_back(k);
  std::vector<int> pos(static_cast<std::size_t>(na * nb));
  for (std::size_t p = 0; p < order.size(); ++p) pos[static_cast<std::size_t>(order[p])] = static_cast<int>(p);

  std::vector<std::string> names;
  std::vector<std::vector<int>> table(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    const int i = order[p] / nb;
    const int j = order[p] % nb;
    names.push_back(p == 0 ? "e" : "(" + a.name(i) + "," + b.name(j) + ")");
    for (std::size_t q = 0; q < order.size(); ++q) {
      const int k = order[q] / nb;
      const int l = order[q] % nb;
      table[p].push_back(pos[static_cast<std::size_t>(a.multiply(i, k) * nb + b.multiply(j, l))]);
    }
  }
  return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> names = {"e", "(12)", "(23)", "(13)", "(123)", "(132)"};
  std::vector<std::vector<int>> table(6);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[static_cast<std::size_t>(x)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      table[static_cast<std::size_t>(a)].push_back(static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin()));
    }
  }
  return FiniteGroup(std::move(names), std::move(table));
}

int FiniteGroup::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorKind::Parse, "unknown group element '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

Gaussian evaluate(const FiniteRelation& f, const FinitePattern& omega) {
  Gaussian total;
  for (const auto& term : f.terms) {
    if (std::all_of(term.factors.begin(), term.factors.end(), [&](int t) { return omega.contains(t); })) {
      total += term.coefficient;
    }
  }
  return total;
}

std::optional<FinitePattern> translate(const FiniteGroup& g, const FinitePattern& omega, int t) {
  if (!omega.contains(g.inverse(t))) return std::nullopt;
  FinitePattern out;
  for (int x = 0; x < g.size(); ++x)
    if (omega.contains(x)) out.mask |= 1U << g.multiply(t, x);
  return out;
}

bool satisfies_relations(const FiniteGroup& g, const FinitePattern& omega, std::span<const FiniteRelation> relations) {
  for (int t = 0; t < g.size(); ++t) {
    if (!omega.contains(t)) continue;
    auto shifted = translate(g, omega, g.inverse(t));
    for (const auto& f : relations) {
      if (!evaluate(f, *shifted).is_zero()) return false;
    }
  }
  return true;
}

std::vector<FinitePattern> finite_group_spectrum(const FiniteGroup& g, std::span<const FiniteRelation> relations) {
  if (g.size() > 16 && !guards_overridden()) {
    throw Error(ErrorKind::Guard, "finite group spectrum is limited to |G| <= 16");
  }
  if (g.size() > 31) throw Error(ErrorKind::Guard, "group too large for bitmask patterns");
  std::vector<int> others;
  for (int a = 0; a < g.size(); ++a)
    if (a != g.identity()) others.push_back(a);
  std::vector<FinitePattern> out;
  const std::uint64_t count = std::uint64_t{1} << others.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    FinitePattern omega{1U << g.identity()};
    for (std::size_t i = 0; i < others.size(); ++i)
      if ((bits >> i) & 1U) omega.mask |= 1U << others[i];
    if (satisfies_relations(g, omega, relations)) out.push_back(omega);
  }
  return out;
}

std::vector<FinitePattern> fixed_patterns(const FiniteGroup& g, int t, std::span<const FinitePattern> patterns) {
  std::vector<FinitePattern> out;
  for (const auto& omega : patterns) {
    auto moved = translate(g, omega, t);
    if (moved && moved->mask == omega.mask) out.push_back(omega);
  }
  return out;
}

std::string describe(const FiniteGroup& g, const FinitePattern& omega) {
  std::string s = "{";
  bool first = true;
  for (int a = 0; a < g.size(); ++a) {
    if (!omega.contains(a)) continue;
    if (!first) s += ",";
    s += g.name(a);
    first = false;
  }
  return s + "}";
}

}  // namespace pdsx
