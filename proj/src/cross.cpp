#include "pdsx/cross.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdsx/error.hpp"

namespace pdsx::cross {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Coefficients zeros(int n) { return Coefficients(idx(n)); }

bool all_zero(const Coefficients& a) {
  return std::all_of(a.begin(), a.end(), [](const Gaussian& z) { return z.is_zero(); });
}

std::string join(const std::vector<int>& xs, const FiniteSystem& sys) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + sys.states()[idx(xs[i])];
  return s + "}";
}

}  // namespace

// ---- GroupIndex ---------------------------------------------------------

GroupIndex GroupIndex::finite(FiniteGroup g) {
  GroupIndex out;
  out.names_ = g.names();
  out.identity_ = g.identity();
  for (int t = 0; t < g.size(); ++t) out.inverse_.push_back(g.inverse(t));
  out.finite_ = std::move(g);
  return out;
}

GroupIndex GroupIndex::free(int rank, int cap) {
  if (rank < 1) throw Error(ErrorKind::InvalidInput, "free group rank must be positive");
  if (cap < 0) throw Error(ErrorKind::InvalidInput, "word cap must be nonnegative");
  GroupIndex out;
  out.rank_ = rank;
  out.cap_ = cap;
  out.words_ = ball(rank, cap);
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    out.word_index_[out.words_[i]] = static_cast<int>(i);
    out.names_.push_back(out.words_[i].to_string());
  }
  for (const auto& w : out.words_) out.inverse_.push_back(out.word_index_.at(w.inverse()));
  out.identity_ = 0;
  return out;
}

std::optional<int> GroupIndex::product(int t, int s) const {
  if (finite_) return finite_->multiply(t, s);
  auto it = word_index_.find(words_[idx(t)] * words_[idx(s)]);
  if (it == word_index_.end()) return std::nullopt;
  return it->second;
}

int GroupIndex::index_of(const std::string& name) const {
  if (finite_) return finite_->index_of(name);
  ReducedWord w;
  try {
    w = ReducedWord::parse(rank_, name);
  } catch (const Error&) {
    throw Error(ErrorKind::Parse, "unknown group element '" + name + "'");
  }
  auto it = word_index_.find(w);
  if (it == word_index_.end()) throw Error(ErrorKind::InvalidInput, "group element " + name + " exceeds the word cap");
  return it->second;
}

// ---- FiniteSystem -------------------------------------------------------

FiniteSystem::FiniteSystem(std::vector<std::string> states, GroupIndex group, std::vector<std::vector<int>> maps)
    : states_(std::move(states)), group_(std::move(group)), theta_(std::move(maps)) {
  const int n = num_states();
  const int g = group_.size();
  if (static_cast<int>(theta_.size()) != g) throw Error(ErrorKind::DimensionMismatch, "theta table needs one row per group element");
  for (const auto& row : theta_) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::DimensionMismatch, "theta row needs one entry per state");
    for (int y : row)
      if (y < -1 || y >= n) throw Error(ErrorKind::InvalidInput, "theta image outside the state space");
  }
  for (int x = 0; x < n; ++x)
    if (theta(group_.identity(), x) != x) throw Error(ErrorKind::InvalidInput, "theta_e must be the identity");
  for (int t = 0; t < g; ++t) {
    const int ti = group_.inverse(t);
    for (int x = 0; x < n; ++x) {
      const int y = theta(t, x);
      if (y >= 0 && theta(ti, y) != x)
        throw Error(ErrorKind::InvalidInput, "theta_" + group_.name(ti) + " is not the inverse of theta_" + group_.name(t));
    }
  }
  // theta_{st} extends theta_s o theta_t.
  for (int s = 0; s < g; ++s)
    for (int t = 0; t < g; ++t) {
      auto st = group_.product(s, t);
      if (!st) continue;
      for (int x = 0; x < n; ++x) {
        const int y = theta(t, x);
        if (y < 0) continue;
        const int z = theta(s, y);
        if (z >= 0 && theta(*st, x) != z)
          throw Error(ErrorKind::InvalidInput, "theta_" + group_.name(*st) + " does not extend theta_" + group_.name(s) +
                                                   " o theta_" + group_.name(t) + " at " + states_[idx(x)]);
      }
    }
}

FiniteSystem FiniteSystem::restriction(const FiniteGroup& g, const std::vector<std::vector<int>>& action,
                                       const std::vector<int>& subset) {
  if (static_cast<int>(action.size()) != g.size()) throw Error(ErrorKind::DimensionMismatch, "action needs one row per group element");
  const std::size_t total = action.empty() ? 0 : action.front().size();
  std::vector<int> local(total, -1);
  std::vector<std::string> names;
  for (int y : subset) {
    if (y < 0 || idx(y) >= total) throw Error(ErrorKind::InvalidInput, "subset point outside the global space");
    if (local[idx(y)] >= 0) throw Error(ErrorKind::InvalidInput, "repeated subset point");
    local[idx(y)] = static_cast<int>(names.size());
    names.push_back(std::to_string(y));
  }
  std::vector<std::vector<int>> theta(idx(g.size()), std::vector<int>(subset.size(), -1));
  for (int t = 0; t < g.size(); ++t) {
    const auto& row = action[idx(t)];
    if (row.size() != total) throw Error(ErrorKind::DimensionMismatch, "ragged action table");
    for (std::size_t k = 0; k < subset.size(); ++k) {
      const int y = row[idx(subset[k])];
      if (y < 0 || idx(y) >= total) throw Error(ErrorKind::InvalidInput, "action image outside the global space");
      theta[idx(t)][k] = local[idx(y)];
    }
  }
  return FiniteSystem(std::move(names), GroupIndex::finite(g), std::move(theta));
}

FiniteSystem FiniteSystem::free_generated(int num_states, const std::vector<std::vector<int>>& gens, int cap,
                                          std::vector<std::string> names) {
  const int rank = static_cast<int>(gens.size());
  GroupIndex group = GroupIndex::free(rank, cap);
  const std::size_t n = idx(num_states);
  // Letter maps: +i -> gens[i-1], -i -> its inverse.
  std::vector<std::vector<int>> fwd(idx(rank)), bwd(idx(rank), std::vector<int>(n, -1));
  for (int i = 0; i < rank; ++i) {
    if (gens[idx(i)].size() != n) throw Error(ErrorKind::DimensionMismatch, "generator map needs one entry per state");
    fwd[idx(i)] = gens[idx(i)];
    for (std::size_t x = 0; x < n; ++x) {
      const int y = gens[idx(i)][x];
      if (y < -1 || y >= num_states) throw Error(ErrorKind::InvalidInput, "generator image outside the state space");
      if (y < 0) continue;
      if (bwd[idx(i)][idx(y)] >= 0) throw Error(ErrorKind::InvalidInput, "generator map is not injective");
      bwd[idx(i)][idx(y)] = static_cast<int>(x);
    }
  }
  std::vector<std::vector<int>> theta(idx(group.size()), std::vector<int>(n, -1));
  for (int t = 0; t < group.size(); ++t) {
    const auto letters = group.word(t).letters();
    for (std::size_t x = 0; x < n; ++x) {
      int y = static_cast<int>(x);
      for (auto it = letters.rbegin(); it != letters.rend() && y >= 0; ++it)
        y = *it > 0 ? fwd[idx(*it - 1)][idx(y)] : bwd[idx(-*it - 1)][idx(y)];
      theta[idx(t)][x] = y;
    }
  }
  if (names.empty())
    for (int x = 0; x < num_states; ++x) names.push_back(std::to_string(x));
  if (static_cast<int>(names.size()) != num_states) throw Error(ErrorKind::DimensionMismatch, "one name per state");
  return FiniteSystem(std::move(names), std::move(group), std::move(theta));
}

FiniteSystem FiniteSystem::partial_group_system(const FiniteGroup& g) {
  if (g.size() > 16 && !guards_overridden())
    throw Error(ErrorKind::Guard, "partial group system needs |G| <= 16 (set PDSX_GUARD_OVERRIDE to lift)");
  const int m = g.size();
  const std::uint32_t e_bit = 1U << g.identity();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask)
    if (mask & e_bit) masks.push_back(mask);
  std::map<std::uint32_t, int> index;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    index[masks[k]] = static_cast<int>(k);
    names.push_back(describe(g, FinitePattern{masks[k]}));
  }
  std::vector<std::vector<int>> theta(idx(m), std::vector<int>(masks.size(), -1));
  for (int t = 0; t < m; ++t)
    for (std::size_t k = 0; k < masks.size(); ++k) {
      auto moved = translate(g, FinitePattern{masks[k]}, t);
      if (moved) theta[idx(t)][k] = index.at(moved->mask);
    }
  return FiniteSystem(std::move(names), GroupIndex::finite(g), std::move(theta));
}

int FiniteSystem::state_index(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) throw Error(ErrorKind::Parse, "unknown state '" + name + "'");
  return static_cast<int>(it - states_.begin());
}

std::vector<int> FiniteSystem::domain(int t) const {
  std::vector<int> out;
  for (int x = 0; x < num_states(); ++x)
    if (in_domain(t, x)) out.push_back(x);
  return out;
}

std::vector<int> FiniteSystem::fixed_points(int t) const {
  std::vector<int> out;
  for (int x = 0; x < num_states(); ++x)
    if (theta(t, x) == x) out.push_back(x);
  return out;
}

// ---- CrossedElement -----------------------------------------------------

CrossedElement CrossedElement::term(const FiniteSystem& sys, int t, Coefficients a) {
  CrossedElement p;
  p.add(sys, t, a);
  return p;
}

CrossedElement CrossedElement::unit(const FiniteSystem& sys) {
  return term(sys, sys.group().identity(), Coefficients(idx(sys.num_states()), Gaussian(1)));
}

Coefficients CrossedElement::coefficient(const FiniteSystem& sys, int t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? zeros(sys.num_states()) : it->second;
}

std::vector<int> CrossedElement::support() const {
  std::vector<int> out;
  for (const auto& [t, a] : terms_) out.push_back(t);
  return out;
}

CrossedElement& CrossedElement::add(const FiniteSystem& sys, int t, const Coefficients& a) {
  if (t < 0 || t >= sys.group().size()) throw Error(ErrorKind::InvalidInput, "group index out of range");
  if (static_cast<int>(a.size()) != sys.num_states())
    throw Error(ErrorKind::DimensionMismatch, "coefficient needs one value per state");
  for (int x = 0; x < sys.num_states(); ++x)
    if (!a[idx(x)].is_zero() && !sys.in_domain(t, x))
      throw Error(ErrorKind::InvalidInput, "coefficient at " + sys.group().name(t) + " is not supported in U_" +
                                               sys.group().name(t) + " (state " + sys.states()[idx(x)] + ")");
  auto& slot = terms_[t];
  if (slot.empty()) slot = zeros(sys.num_states());
  for (std::size_t x = 0; x < a.size(); ++x) slot[x] += a[x];
  prune();
  return *this;
}

void CrossedElement::prune() {
  std::erase_if(terms_, [](const auto& kv) { return all_zero(kv.second); });
}

CrossedElement operator+(const CrossedElement& p, const CrossedElement& q) {
  CrossedElement r = p;
  for (const auto& [t, a] : q.terms_) {
    auto& slot = r.terms_[t];
    if (slot.empty()) slot = Coefficients(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) slot[x] += a[x];
  }
  r.prune();
  return r;
}

CrossedElement operator*(const Gaussian& lambda, const CrossedElement& p) {
  CrossedElement r = p;
  for (auto& [t, a] : r.terms_)
    for (auto& v : a) v *= lambda;
  r.prune();
  return r;
}

CrossedElement operator-(const CrossedElement& p, const CrossedElement& q) { return p + Gaussian(-1) * q; }

std::string CrossedElement::to_string(const FiniteSystem& sys) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[";
    bool inner = true;
    for (int x = 0; x < sys.num_states(); ++x) {
      if (a[idx(x)].is_zero()) continue;
      if (!inner) os << ", ";
      inner = false;
      os << sys.states()[idx(x)] << ": " << a[idx(x)].to_string();
    }
    os << "] d_" << sys.group().name(t);
  }
  return os.str();
}

CrossedElement multiply(const CrossedElement& p, const CrossedElement& q, const FiniteSystem& sys) {
  const auto& g = sys.group();
  CrossedElement out;
  for (const auto& [t, a] : p.terms()) {
    const int ti = g.inverse(t);
    for (const auto& [s, b] : q.terms()) {
      // c(x) = a(x) b(theta_{t^-1}(x)) on U_t.
      Coefficients c = zeros(sys.num_states());
      bool nonzero = false;
      for (int x = 0; x < sys.num_states(); ++x) {
        if (a[idx(x)].is_zero()) continue;
        const int y = sys.theta(ti, x);
        if (y < 0 || b[idx(y)].is_zero()) continue;
        c[idx(x)] = a[idx(x)] * b[idx(y)];
        nonzero = true;
      }
      if (!nonzero) continue;
      auto ts = g.product(t, s);
      if (!ts)
        throw Error(ErrorKind::TruncationOverflow,
                    "product " + g.name(t) + " * " + g.name(s) + " exceeds the word cap " + std::to_string(g.cap()));
      out.add(sys, *ts, c);
    }
  }
  return out;
}

CrossedElement star(const CrossedElement& p, const FiniteSystem& sys) {
  const auto& g = sys.group();
  CrossedElement out;
  for (const auto& [t, a] : p.terms()) {
    const int ti = g.inverse(t);
    Coefficients c = zeros(sys.num_states());
    for (int y = 0; y < sys.num_states(); ++y) {
      const int x = sys.theta(t, y);
      if (x >= 0) c[idx(y)] = a[idx(x)].conj();
    }
    out.add(sys, ti, c);
  }
  return out;
}

Coefficients expectation(const CrossedElement& p, const FiniteSystem& sys) {
  return p.coefficient(sys, sys.group().identity());
}

// ---- representations ----------------------------------------------------

Covariant regular_representation(const FiniteSystem& sys) {
  const std::size_t n = idx(sys.num_states());
  Covariant rep;
  for (std::size_t x = 0; x < n; ++x) {
    ExactMatrix p(n);
    p(x, x) = 1;
    rep.point_projections.push_back(std::move(p));
  }
  for (int t = 0; t < sys.group().size(); ++t) {
    ExactMatrix u(n);
    for (int x = 0; x < sys.num_states(); ++x) {
      const int y = sys.theta(t, x);
      if (y >= 0) u(idx(y), idx(x)) = 1;
    }
    rep.u.push_back(std::move(u));
  }
  return rep;
}

Covariant twisted_representation(const FiniteSystem& sys, const std::vector<std::vector<Gaussian>>& phases) {
  const auto& g = sys.group();
  if (!g.is_free()) throw Error(ErrorKind::InvalidInput, "twisted representation needs a free group system");
  if (static_cast<int>(phases.size()) != g.rank()) throw Error(ErrorKind::DimensionMismatch, "one phase row per generator");
  Covariant rep = regular_representation(sys);
  const std::size_t n = idx(sys.num_states());
  std::vector<ExactMatrix> gen;
  for (int i = 1; i <= g.rank(); ++i) {
    const auto& ph = phases[idx(i - 1)];
    if (ph.size() != n) throw Error(ErrorKind::DimensionMismatch, "one phase per state");
    const int t = g.index_of(ReducedWord::generator(g.rank(), i).to_string());
    ExactMatrix u(n);
    for (std::size_t x = 0; x < n; ++x) {
      const int y = sys.theta(t, static_cast<int>(x));
      if (y < 0) continue;
      if (!(ph[x] * ph[x].conj() == Gaussian(1))) throw Error(ErrorKind::InvalidInput, "phases must have modulus one");
      u(idx(y), x) = ph[x];
    }
    gen.push_back(std::move(u));
  }
  for (int t = 0; t < g.size(); ++t) {
    ExactMatrix u = ExactMatrix::identity(n);
    for (int l : g.word(t).letters()) u = u * (l > 0 ? gen[idx(l - 1)] : gen[idx(-l - 1)].adjoint());
    rep.u[idx(t)] = std::move(u);
  }
  return rep;
}

CheckReport check_covariance(const FiniteSystem& sys, const Covariant& rep) {
  const auto& g = sys.group();
  CheckReport report;
  const std::size_t dim = rep.dim();
  if (static_cast<int>(rep.u.size()) != g.size() || static_cast<int>(rep.point_projections.size()) != sys.num_states())
    throw Error(ErrorKind::DimensionMismatch, "covariant pair needs one projection per state and one u per group element");
  for (const auto& m : rep.u)
    if (m.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "u matrices of mixed dimension");
  for (const auto& m : rep.point_projections)
    if (m.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "projections of mixed dimension");

  ExactMatrix total(dim);
  for (int x = 0; x < sys.num_states(); ++x) {
    const auto& p = rep.point_projections[idx(x)];
    report.record("pi projection", sys.states()[idx(x)], p * p - p, 0.0);
    report.record("pi self-adjoint", sys.states()[idx(x)], p.adjoint() - p, 0.0);
    for (int y = x + 1; y < sys.num_states(); ++y)
      report.record("pi orthogonal", sys.states()[idx(x)] + "," + sys.states()[idx(y)], p * rep.point_projections[idx(y)], 0.0);
    total += p;
  }
  report.record("u_e", "e", rep.u[idx(g.identity())] - ExactMatrix::identity(dim), 0.0);
  for (int t = 0; t < g.size(); ++t) {
    const auto& u = rep.u[idx(t)];
    const int ti = g.inverse(t);
    report.record("u_{t^-1} = u_t*", g.name(t), rep.u[idx(ti)] - u.adjoint(), 0.0);
    ExactMatrix range(dim);
    for (int x : sys.domain(t)) range += rep.point_projections[idx(x)];
    report.record("u_t u_t* = pi(1_{U_t})", g.name(t), u * u.adjoint() - range, 0.0);
    for (int x = 0; x < sys.num_states(); ++x) {
      const int y = sys.theta(t, x);
      if (y < 0) continue;
      report.record("pi(alpha_t(1_x)) = u_t pi(1_x) u_t*", g.name(t) + " at " + sys.states()[idx(x)],
                    u * rep.point_projections[idx(x)] * u.adjoint() - rep.point_projections[idx(y)], 0.0);
    }
    for (int s = 0; s < g.size(); ++s) {
      auto st = g.product(s, t);
      if (!st) continue;
      report.record("u_s u_t u_t* = u_st u_t*", g.name(s) + "," + g.name(t),
                    rep.u[idx(s)] * u * u.adjoint() - rep.u[idx(*st)] * u.adjoint(), 0.0);
    }
  }
  return report;
}

ExactMatrix represent(const FiniteSystem& sys, const Covariant& rep, const CrossedElement& p) {
  const auto report = check_covariance(sys, rep);
  if (!report.passed()) {
    const auto& f = report.violations.front();
    throw Error(ErrorKind::InvalidInput, "covariance violated: " + f.relation + " at " + f.where);
  }
  ExactMatrix out(rep.dim());
  for (const auto& [t, a] : p.terms()) {
    ExactMatrix pi(rep.dim());
    for (int x = 0; x < sys.num_states(); ++x)
      if (!a[idx(x)].is_zero()) pi += rep.point_projections[idx(x)] * a[idx(x)];
    out += pi * rep.u[idx(t)];
  }
  return out;
}

double norm(const FiniteSystem& sys, const CrossedElement& p) {
  const std::size_t n = idx(sys.num_states());
  if (n == 0 || p.is_zero()) return 0.0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  // Regular representation: (a delta_t) e_x = a(theta_t x) e_{theta_t x}.
  for (const auto& [t, a] : p.terms())
    for (int x = 0; x < sys.num_states(); ++x) {
      const int y = sys.theta(t, x);
      if (y >= 0) m(y, x) += a[idx(y)].to_complex();
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double sup_norm(const Coefficients& f) {
  double best = 0.0;
  for (const auto& v : f) best = std::max(best, v.abs());
  return best;
}

// ---- invariant subsets --------------------------------------------------

bool is_invariant(const FiniteSystem& sys, const std::vector<int>& omega) {
  std::vector<bool> in(idx(sys.num_states()), false);
  for (int x : omega) {
    if (x < 0 || x >= sys.num_states()) throw Error(ErrorKind::InvalidInput, "subset point out of range");
    in[idx(x)] = true;
  }
  for (int t = 0; t < sys.group().size(); ++t)
    for (int x : omega) {
      const int y = sys.theta(t, x);
      if (y >= 0 && !in[idx(y)]) return false;
    }
  return true;
}

FiniteSystem restrict_system(const FiniteSystem& sys, const std::vector<int>& omega) {
  if (!is_invariant(sys, omega)) throw Error(ErrorKind::InvalidInput, "subset is not invariant");
  std::vector<int> sorted = omega;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> local(idx(sys.num_states()), -1);
  std::vector<std::string> names;
  for (int x : sorted) {
    local[idx(x)] = static_cast<int>(names.size());
    names.push_back(sys.states()[idx(x)]);
  }
  std::vector<std::vector<int>> theta(idx(sys.group().size()), std::vector<int>(sorted.size(), -1));
  for (int t = 0; t < sys.group().size(); ++t)
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      const int y = sys.theta(t, sorted[k]);
      theta[idx(t)][k] = y < 0 ? -1 : local[idx(y)];
    }
  return FiniteSystem(std::move(names), sys.group(), std::move(theta));
}

CrossedElement restrict_quotient(const FiniteSystem& sys, const std::vector<int>& omega, const CrossedElement& p) {
  const FiniteSystem sub = restrict_system(sys, omega);
  std::vector<int> sorted = omega;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  CrossedElement out;
  for (const auto& [t, a] : p.terms()) {
    Coefficients c;
    for (int x : sorted) c.push_back(a[idx(x)]);
    out.add(sub, t, c);
  }
  return out;
}

QuotientDimensions quotient_dimensions(const FiniteSystem& sys, const std::vector<int>& omega) {
  if (!is_invariant(sys, omega)) throw Error(ErrorKind::InvalidInput, "subset is not invariant");
  std::vector<bool> in(idx(sys.num_states()), false);
  for (int x : omega) in[idx(x)] = true;
  QuotientDimensions d;
  for (int t = 0; t < sys.group().size(); ++t)
    for (int x : sys.domain(t)) {
      ++d.domain;
      (in[idx(x)] ? d.image : d.kernel) += 1;
    }
  return d;
}

// ---- compression --------------------------------------------------------

namespace {

CrossedElement diagonal(const FiniteSystem& sys, const Coefficients& h) {
  return CrossedElement::term(sys, sys.group().identity(), h);
}

CrossedElement sandwich(const FiniteSystem& sys, const Coefficients& h, const CrossedElement& c) {
  const auto hd = diagonal(sys, h);
  return multiply(multiply(hd, c, sys), hd, sys);
}

bool between_zero_and_one(const Coefficients& h) {
  return std::all_of(h.begin(), h.end(), [](const Gaussian& v) {
    return v.imag() == 0 && v.real() >= 0 && v.real() <= 1;
  });
}

Coefficients point_mass(const FiniteSystem& sys, int x0) {
  Coefficients h = zeros(sys.num_states());
  h[idx(x0)] = 1;
  return h;
}

constexpr double kSlack = 1e-12;

}  // namespace

Coefficients hlemma_h(const FiniteSystem& sys, int t, const Coefficients& f, int x0, double eps) {
  if (t == sys.group().identity()) throw Error(ErrorKind::InvalidInput, "hlemma needs t != e");
  if (x0 < 0 || x0 >= sys.num_states()) throw Error(ErrorKind::InvalidInput, "x0 out of range");
  if (eps <= 0) throw Error(ErrorKind::InvalidInput, "eps must be positive");
  if (sys.theta(t, x0) == x0)
    throw Error(ErrorKind::InvalidInput, "x0 = " + sys.states()[idx(x0)] + " is fixed by theta_" + sys.group().name(t));
  const auto term = CrossedElement::term(sys, t, f);
  // On a finite space both cases of the construction reduce to 1_{x0}: when
  // x0 is outside U_t, f(x0) = 0; otherwise {x0} separates x0 from its
  // preimage theta_{t^-1}(x0).
  Coefficients h = point_mass(sys, x0);
  const double n = norm(sys, sandwich(sys, h, term));
  if (!(h[idx(x0)] == Gaussian(1)) || !between_zero_and_one(h) || n > eps + kSlack)
    throw Error(ErrorKind::NoWitness, "constructed h failed verification");
  return h;
}

Compression hprop_compress(const FiniteSystem& sys, const CrossedElement& c, double eps) {
  if (eps <= 0) throw Error(ErrorKind::InvalidInput, "eps must be positive");
  const auto& g = sys.group();
  const Coefficients ae = expectation(c, sys);
  const double top = sup_norm(ae);
  std::vector<int> v;
  for (int x = 0; x < sys.num_states(); ++x)
    if (ae[idx(x)].abs() > top - eps) v.push_back(x);
  // Largest |a_e| first so that the diagonal term is kept as large as possible.
  std::stable_sort(v.begin(), v.end(), [&](int x, int y) { return ae[idx(x)].abs() > ae[idx(y)].abs(); });

  std::vector<int> others;
  for (int t : c.support())
    if (t != g.identity()) others.push_back(t);

  std::optional<int> x0;
  for (int x : v) {
    if (std::none_of(others.begin(), others.end(), [&](int t) { return sys.theta(t, x) == x; })) {
      x0 = x;
      break;
    }
  }
  if (!x0) {
    std::sort(v.begin(), v.end());
    std::vector<FixedSetObstruction> obstructions;
    for (int t : others) {
      auto fixed = sys.fixed_points(t);
      std::vector<int> hit;
      std::set_intersection(fixed.begin(), fixed.end(), v.begin(), v.end(), std::back_inserter(hit));
      if (!hit.empty()) obstructions.push_back({t, fixed});
    }
    std::string what = "no point of V = " + join(v, sys) + " avoids the fixed sets:";
    for (const auto& o : obstructions) what += " Fix(theta_" + g.name(o.t) + ") = " + join(o.fixed, sys);
    throw NoCompressionPoint(v, std::move(obstructions), what);
  }

  // h = prod over t of h_t, each from the lemma at threshold eps / |T|.
  const double share = eps / static_cast<double>(std::max<std::size_t>(1, others.size() + 1));
  Coefficients h = point_mass(sys, *x0);
  for (int t : others) {
    const Coefficients ht = hlemma_h(sys, t, c.coefficient(sys, t), *x0, share);
    for (std::size_t x = 0; x < h.size(); ++x) h[x] *= ht[x];
  }

  Compression out;
  out.h = h;
  out.x0 = *x0;
  const auto hEh = sandwich(sys, h, diagonal(sys, ae));
  out.diagonal_norm = norm(sys, hEh);
  out.off_diagonal = norm(sys, hEh - sandwich(sys, h, c));
  if (!between_zero_and_one(h) || out.diagonal_norm < top - eps - kSlack || out.off_diagonal > eps + kSlack)
    throw Error(ErrorKind::NoWitness, "constructed h failed verification");
  return out;
}

long partial_group_algebra_dim(const FiniteGroup& g) {
  const auto sys = FiniteSystem::partial_group_system(g);
  long total = 0;
  for (int t = 0; t < g.size(); ++t) total += static_cast<long>(sys.domain(t).size());
  return total;
}

}  // namespace pdsx::cross
