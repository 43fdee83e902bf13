#pragma once

// Quasi-lattice ordered groups (G, P): the order x <= y iff x^{-1}y in P,
// least upper bounds x v y (possibly infinite), the factorization
// x = sigma(x) tau(x)^{-1}, hereditary/directed sets, and the partial
// representation u_x = V_sigma(x) V_tau(x)^* built from an isometric family.
//
// Two instances ship: (Z^k, N^k) with the componentwise order and
// (F_n, F_n^+) with the prefix order. Anything modelling QuasiLattice plugs in.

#include <algorithm>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdsx/error.hpp"
#include "pdsx/matrix.hpp"
#include "pdsx/words.hpp"

namespace pdsx::ql {

// A least upper bound: either a finite element of P or INFINITY.
template <class E>
class UpperBound {
 public:
  static UpperBound infinity() { return UpperBound(); }
  static UpperBound finite(E value) { return UpperBound(std::move(value)); }

  bool is_infinite() const { return !value_.has_value(); }
  const E& value() const { return *value_; }

  friend bool operator==(const UpperBound&, const UpperBound&) = default;

 private:
  UpperBound() = default;
  explicit UpperBound(E v) : value_(std::move(v)) {}
  std::optional<E> value_;
};

template <class G>
concept QuasiLattice = requires(const G& g, const typename G::Element& x, const std::string& s) {
  { g.identity() } -> std::convertible_to<typename G::Element>;
  { g.multiply(x, x) } -> std::convertible_to<typename G::Element>;
  { g.invert(x) } -> std::convertible_to<typename G::Element>;
  { g.in_positive(x) } -> std::convertible_to<bool>;
  { g.lub(x, x) } -> std::convertible_to<UpperBound<typename G::Element>>;
  { g.ball(1) } -> std::convertible_to<std::vector<typename G::Element>>;
  { g.format(x) } -> std::convertible_to<std::string>;
  { g.parse(s) } -> std::convertible_to<typename G::Element>;
};

using IntVec = std::vector<long>;

// (Z^k, N^k). Every element lies in PP^{-1}; x v y = max(x, y, 0).
class ZkNk {
 public:
  using Element = IntVec;
  explicit ZkNk(int k);

  int k() const { return k_; }
  Element identity() const { return Element(static_cast<std::size_t>(k_), 0); }
  Element multiply(const Element& x, const Element& y) const;
  Element invert(const Element& x) const;
  bool in_positive(const Element& x) const;
  UpperBound<Element> lub(const Element& x, const Element& y) const;
  // The box [-radius, radius]^k.
  std::vector<Element> ball(int radius) const;
  std::string format(const Element& x) const;
  Element parse(const std::string& text) const;

 private:
  void check(const Element& x) const;
  int k_;
};

// (F_n, F_n^+). x v y is finite iff sigma(x), sigma(y) are prefix-comparable.
class FreeQL {
 public:
  using Element = ReducedWord;
  explicit FreeQL(int n);

  int n() const { return n_; }
  Element identity() const { return ReducedWord(n_); }
  Element multiply(const Element& x, const Element& y) const { return concat(x, y); }
  Element invert(const Element& x) const { return x.inverse(); }
  bool in_positive(const Element& x) const { return x.is_positive(); }
  UpperBound<Element> lub(const Element& x, const Element& y) const;
  // Reduced words of length <= radius.
  std::vector<Element> ball(int radius) const { return pdsx::ball(n_, radius); }
  std::string format(const Element& x) const { return x.to_string(); }
  Element parse(const std::string& text) const { return ReducedWord::parse(n_, text); }

 private:
  int n_;
};

template <QuasiLattice G>
bool leq(const G& g, const typename G::Element& x, const typename G::Element& y) {
  return g.in_positive(g.multiply(g.invert(x), y));
}

template <QuasiLattice G>
typename G::Element lub_value(const G& g, const typename G::Element& x, const typename G::Element& y) {
  auto b = g.lub(x, y);
  if (b.is_infinite()) throw Error(ErrorKind::InvalidInput, "least upper bound is infinite");
  return b.value();
}

// (sigma(x), tau(x)) with sigma(x) = x v e and tau(x) = x^{-1} sigma(x);
// nullopt exactly when x is not in PP^{-1}.
template <QuasiLattice G>
std::optional<std::pair<typename G::Element, typename G::Element>> sigma_tau(const G& g,
                                                                            const typename G::Element& x) {
  auto s = g.lub(x, g.identity());
  if (s.is_infinite()) return std::nullopt;
  auto tau = g.multiply(g.invert(x), s.value());
  return std::make_pair(s.value(), std::move(tau));
}

// Result of a check that may have skipped comparisons falling outside a ball.
struct BoundedVerdict {
  bool holds = true;
  std::size_t skipped = 0;
};

// xP^{-1} within the ball is contained in omega for every x in omega.
template <QuasiLattice G>
bool is_hereditary(const G& g, const std::set<typename G::Element>& omega,
                   const std::vector<typename G::Element>& ball) {
  const std::set<typename G::Element> in_ball(ball.begin(), ball.end());
  for (const auto& x : omega) {
    for (const auto& p : ball) {
      if (!g.in_positive(p)) continue;
      auto y = g.multiply(x, g.invert(p));
      if (in_ball.count(y) && !omega.count(y)) return false;
    }
  }
  return true;
}

// Every pair in omega has a finite least upper bound lying in omega.
// Bounds that land outside the ball are counted as skipped.
template <QuasiLattice G>
BoundedVerdict is_directed(const G& g, const std::set<typename G::Element>& omega,
                           const std::vector<typename G::Element>& ball) {
  const std::set<typename G::Element> in_ball(ball.begin(), ball.end());
  BoundedVerdict v;
  for (auto i = omega.begin(); i != omega.end(); ++i) {
    for (auto j = i; j != omega.end(); ++j) {
      auto b = g.lub(*i, *j);
      if (b.is_infinite()) {
        v.holds = false;
        return v;
      }
      if (!in_ball.count(b.value())) {
        ++v.skipped;
        continue;
      }
      if (!omega.count(b.value())) {
        v.holds = false;
        return v;
      }
    }
  }
  return v;
}

// tP^{-1} intersected with the ball. Throws when t is not in P.
template <QuasiLattice G>
std::set<typename G::Element> principal_point(const G& g, const typename G::Element& t,
                                              const std::vector<typename G::Element>& ball) {
  if (!g.in_positive(t)) throw Error(ErrorKind::InvalidInput, "principal point needs t in P");
  std::set<typename G::Element> out;
  for (const auto& x : ball) {
    if (leq(g, x, t)) out.insert(x);
  }
  return out;
}

// u_x = V_sigma(x) V_tau(x)^* on PP^{-1} and 0 elsewhere. V_e defaults to the
// identity when absent; any other missing isometry is an error.
template <QuasiLattice G, class S>
Matrix<S> partial_rep_from_isometric(const G& g, const std::map<typename G::Element, Matrix<S>>& v,
                                     std::size_t dim, const typename G::Element& x) {
  auto lookup = [&](const typename G::Element& p) -> Matrix<S> {
    auto it = v.find(p);
    if (it != v.end()) return it->second;
    if (p == g.identity()) return Matrix<S>::identity(dim);
    throw Error(ErrorKind::InvalidInput, "missing isometry for " + g.format(p));
  };
  auto st = sigma_tau(g, x);
  if (!st) return Matrix<S>::zero(dim);
  return lookup(st->first) * lookup(st->second).adjoint();
}

// A finite corner of the left regular representation of P on l^2(P): basis
// {e_p : p in F} for a finite F subset of P closed under q <= p (q in P) and
// under p |-> q^{-1}p. V_x e_p = e_{xp} when xp in F and 0 otherwise.
//
// Every operator word in the V's and V^*'s acts on a basis vector either by
// moving it to another basis index or by killing it. Tracing that action in
// the untruncated representation tells which columns of a truncated product
// are affected by the boundary of F.
template <QuasiLattice G>
class IsometricCorner {
 public:
  using E = typename G::Element;

  // One factor of an operator word: u_x or u_x^*.
  struct Factor {
    E element;
    bool adjoint = false;
  };

  IsometricCorner(G g, std::vector<E> basis) : g_(std::move(g)), basis_(std::move(basis)) {
    std::sort(basis_.begin(), basis_.end());
    basis_.erase(std::unique(basis_.begin(), basis_.end()), basis_.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
    if (!index_.count(g_.identity())) throw Error(ErrorKind::InvalidInput, "corner must contain e");
    for (const auto& p : basis_) {
      if (!g_.in_positive(p)) throw Error(ErrorKind::InvalidInput, "corner element " + g_.format(p) + " not in P");
    }
    // Closure under predecessors in P and under left cancellation.
    for (const auto& p : basis_) {
      for (const auto& q : candidate_predecessors(p)) {
        if (!index_.count(q) || !index_.count(g_.multiply(g_.invert(q), p))) {
          throw Error(ErrorKind::InvalidInput, "corner not closed at " + g_.format(p));
        }
      }
    }
  }

  const G& group() const { return g_; }
  const std::vector<E>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  // Truncated V_p for p in P.
  ExactMatrix isometry(const E& p) const {
    ExactMatrix m(dim());
    for (std::size_t c = 0; c < dim(); ++c) {
      auto it = index_.find(g_.multiply(p, basis_[c]));
      if (it != index_.end()) m(it->second, c) = Gaussian(1);
    }
    return m;
  }

  std::map<E, ExactMatrix> isometries() const {
    std::map<E, ExactMatrix> v;
    for (const auto& p : basis_) v.emplace(p, isometry(p));
    return v;
  }

  // u_x = V_sigma V_tau^* from the truncated isometries.
  ExactMatrix efficient(const E& x) const {
    auto st = sigma_tau(g_, x);
    if (!st) return ExactMatrix::zero(dim());
    return isometry(st->first) * isometry(st->second).adjoint();
  }

  // Compression of the left regular representation of G: e_q -> e_{xq} when
  // xq lies in P (and in F). Independent of the sigma/tau route.
  ExactMatrix direct(const E& x) const {
    ExactMatrix m(dim());
    for (std::size_t c = 0; c < dim(); ++c) {
      auto y = g_.multiply(x, basis_[c]);
      if (!g_.in_positive(y)) continue;
      auto it = index_.find(y);
      if (it != index_.end()) m(it->second, c) = Gaussian(1);
    }
    return m;
  }

  // Columns whose untruncated trace through the word (applied right to
  // left) leaves F at some step.
  std::vector<bool> boundary_columns(const std::vector<Factor>& word) const {
    std::vector<bool> hit(dim(), false);
    for (std::size_t c = 0; c < dim(); ++c) {
      std::optional<E> cur = basis_[c];
      for (auto f = word.rbegin(); f != word.rend() && cur && !hit[c]; ++f) {
        auto st = sigma_tau(g_, f->element);
        if (!st) {
          cur.reset();
          break;
        }
        // u_x = V_sigma V_tau^*, u_x^* = V_tau V_sigma^*.
        const E& first = f->adjoint ? st->first : st->second;   // applied as V^*
        const E& second = f->adjoint ? st->second : st->first;  // applied as V
        if (!leq(g_, first, *cur)) {
          cur.reset();
          break;
        }
        E mid = g_.multiply(g_.invert(first), *cur);
        if (!index_.count(mid)) {
          hit[c] = true;
          break;
        }
        E next = g_.multiply(second, mid);
        if (!index_.count(next)) {
          hit[c] = true;
          break;
        }
        cur = next;
      }
    }
    return hit;
  }

  // Columns where the direct compression of u_x leaves F.
  std::vector<bool> direct_boundary(const E& x) const {
    std::vector<bool> hit(dim(), false);
    for (std::size_t c = 0; c < dim(); ++c) {
      auto y = g_.multiply(x, basis_[c]);
      if (g_.in_positive(y) && !index_.count(y)) hit[c] = true;
    }
    return hit;
  }

 private:
  // Elements q of P with q <= p, found inside the ball of p's size.
  std::vector<E> candidate_predecessors(const E& p) const {
    std::vector<E> out;
    for (const auto& q : g_.ball(radius_of(p))) {
      if (g_.in_positive(q) && leq(g_, q, p)) out.push_back(q);
    }
    return out;
  }
  int radius_of(const E& p) const;

  G g_;
  std::vector<E> basis_;
  std::map<E, std::size_t> index_;
};

template <>
inline int IsometricCorner<ZkNk>::radius_of(const IntVec& p) const {
  long r = 0;
  for (long v : p) r = std::max(r, v < 0 ? -v : v);
  return static_cast<int>(r);
}

template <>
inline int IsometricCorner<FreeQL>::radius_of(const ReducedWord& p) const {
  return static_cast<int>(p.length());
}

}  // namespace pdsx::ql
