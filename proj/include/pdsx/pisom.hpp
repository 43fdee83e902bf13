#pragma once

// Verification of partial isometries, partial representations of F_n,
// relation sets in the range projections e(t) = u_t u_t^*, Cuntz-Krieger
// families and the Nica relations on explicit finite-dimensional matrices.
//
// Exact matrices are compared for equality and the tolerance is ignored.
// Floating matrices are compared in the max-absolute-entry norm.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdsx/ck_matrix.hpp"
#include "pdsx/matrix.hpp"
#include "pdsx/qlattice.hpp"
#include "pdsx/relation.hpp"
#include "pdsx/words.hpp"

namespace pdsx {

// Default floating tolerance, scaled by the dimension.
inline double default_tolerance(std::size_t dim) { return 1e-9 * static_cast<double>(dim == 0 ? 1 : dim); }

struct Finding {
  std::string relation;
  std::string where;
  double residual = 0.0;
};

struct CheckReport {
  std::vector<Finding> violations;
  std::size_t checks = 0;
  std::size_t skipped = 0;
  double max_residual = 0.0;

  bool passed() const { return violations.empty(); }

  template <class S>
  void record(const std::string& relation, const std::string& where, const Matrix<S>& diff, double tol) {
    ++checks;
    const double r = diff.max_abs();
    max_residual = std::max(max_residual, r);
    if (!within(diff, tol)) violations.push_back({relation, where, r});
  }

  void merge(const CheckReport& o) {
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    checks += o.checks;
    skipped += o.skipped;
    max_residual = std::max(max_residual, o.max_residual);
  }
};

// A partial representation of F_n on C^dim, either determined by generator
// images (semisaturated) or given as an explicit word -> matrix table.
template <class S>
class PartialRep {
 public:
  enum class Mode { Semisaturated, Table };

  static PartialRep semisaturated(int rank, std::vector<Matrix<S>> generators) {
    if (generators.size() != static_cast<std::size_t>(rank)) {
      throw Error(ErrorKind::DimensionMismatch, "need one image per generator");
    }
    const std::size_t dim = generators.empty() ? 0 : generators.front().dim();
    for (const auto& g : generators) {
      if (g.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "generator images differ in dimension");
    }
    PartialRep u(rank, dim, Mode::Semisaturated);
    u.generators_ = std::move(generators);
    return u;
  }

  static PartialRep table(int rank, std::size_t dim, std::map<ReducedWord, Matrix<S>> images) {
    for (const auto& [w, m] : images) {
      if (w.rank() != rank) throw Error(ErrorKind::InvalidInput, "table word of wrong rank");
      if (m.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "table images differ in dimension");
    }
    PartialRep u(rank, dim, Mode::Table);
    u.cache_->images = std::move(images);
    return u;
  }

  int rank() const { return rank_; }
  std::size_t dim() const { return dim_; }
  Mode mode() const { return mode_; }
  const std::vector<Matrix<S>>& generators() const { return generators_; }

  bool has_image(const ReducedWord& t) const {
    if (mode_ == Mode::Semisaturated) return t.rank() == rank_;
    std::lock_guard lock(cache_->mu);
    return cache_->images.count(t) > 0;
  }

  // Semisaturated: ordered product along the reduced spelling, negative
  // letters contributing adjoints. Table: lookup.
  Matrix<S> image(const ReducedWord& t) const {
    if (t.rank() != rank_) throw Error(ErrorKind::InvalidInput, "word rank does not match representation");
    {
      std::lock_guard lock(cache_->mu);
      auto it = cache_->images.find(t);
      if (it != cache_->images.end()) return it->second;
    }
    if (mode_ == Mode::Table) throw Error(ErrorKind::InvalidInput, "no image for " + t.to_string() + " in table");
    Matrix<S> m = Matrix<S>::identity(dim_);
    for (int l : t.letters()) {
      const auto& g = generators_[static_cast<std::size_t>(std::abs(l) - 1)];
      m = l > 0 ? m * g : m * g.adjoint();
    }
    std::lock_guard lock(cache_->mu);
    cache_->images.emplace(t, m);
    return m;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<ReducedWord, Matrix<S>> images;
  };

  PartialRep(int rank, std::size_t dim, Mode mode)
      : rank_(rank), dim_(dim), mode_(mode), cache_(std::make_shared<Cache>()) {}

  int rank_;
  std::size_t dim_;
  Mode mode_;
  std::vector<Matrix<S>> generators_;
  std::shared_ptr<Cache> cache_;
};

template <class S>
Matrix<S> semisaturated_extend(const PartialRep<S>& u, const ReducedWord& t) {
  if (u.mode() != PartialRep<S>::Mode::Semisaturated) {
    throw Error(ErrorKind::InvalidInput, "semisaturated_extend needs a semisaturated representation");
  }
  return u.image(t);
}

// e(t) = u_t u_t^*.
template <class S>
Matrix<S> range_projection(const PartialRep<S>& u, const ReducedWord& t) {
  auto m = u.image(t);
  return m * m.adjoint();
}

// Checks u(e) = 1, u(t^{-1}) = u(t)^* for every word occurring in the sample
// and u(s)u(t)u(t^{-1}) = u(st)u(t^{-1}) for every sampled pair (s, t).
template <class S>
CheckReport check_partial_rep(const PartialRep<S>& u, std::span<const std::pair<ReducedWord, ReducedWord>> sample,
                              double tol) {
  CheckReport rep;
  const ReducedWord e(u.rank());
  rep.record("u(e)=1", "e", u.image(e) - Matrix<S>::identity(u.dim()), tol);

  std::set<ReducedWord> words;
  for (const auto& [s, t] : sample) {
    words.insert(s);
    words.insert(t);
  }
  for (const auto& t : words) {
    rep.record("u(t^-1)=u(t)*", t.to_string(), u.image(t.inverse()) - u.image(t).adjoint(), tol);
  }
  for (const auto& [s, t] : sample) {
    const auto ut_inv = u.image(t.inverse());
    rep.record("u(s)u(t)u(t^-1)=u(st)u(t^-1)", s.to_string() + " | " + t.to_string(),
               u.image(s) * u.image(t) * ut_inv - u.image(concat(s, t)) * ut_inv, tol);
  }
  return rep;
}

// sum_i lambda_i prod_j e(t_ij) in the given representation.
template <class S>
Matrix<S> evaluate_relation(const PartialRep<S>& u, const RelationPoly<ReducedWord>& f) {
  Matrix<S> total(u.dim());
  for (const auto& term : f.terms) {
    Matrix<S> m = Matrix<S>::identity(u.dim());
    for (const auto& t : term.factors) m = m * range_projection(u, t);
    total += m * ScalarTraits<S>::from_exact(term.coefficient);
  }
  return total;
}

template <class S>
CheckReport check_relations(const PartialRep<S>& u, std::span<const RelationPoly<ReducedWord>> relations, double tol) {
  CheckReport rep;
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto& f = relations[k];
    rep.record(f.label.empty() ? "relation " + std::to_string(k) : f.label, std::to_string(k),
               evaluate_relation(u, f), tol);
  }
  return rep;
}

// Each s_i a partial isometry, sum_j s_j s_j^* = 1 and
// sum_j a_ij s_j s_j^* = s_i^* s_i.
template <class S>
CheckReport check_ck_family(std::span<const Matrix<S>> s, const CKMatrix& a, double tol) {
  if (s.size() != static_cast<std::size_t>(a.n())) {
    throw Error(ErrorKind::DimensionMismatch, "family size " + std::to_string(s.size()) + " does not match matrix size " +
                                                  std::to_string(a.n()));
  }
  const std::size_t dim = s.front().dim();
  for (const auto& m : s) {
    if (m.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "family members differ in dimension");
  }
  CheckReport rep;
  std::vector<Matrix<S>> range;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& m = s[i];
    rep.record("partial isometry", "s" + std::to_string(i + 1), m * m.adjoint() * m - m, tol);
    range.push_back(m * m.adjoint());
  }
  Matrix<S> total(dim);
  for (const auto& p : range) total += p;
  rep.record("CK1: sum_j s_j s_j* = 1", "all", total - Matrix<S>::identity(dim), tol);
  for (int i = 1; i <= a.n(); ++i) {
    Matrix<S> lhs(dim);
    for (int j = 1; j <= a.n(); ++j) {
      if (a(i, j)) lhs += range[static_cast<std::size_t>(j - 1)];
    }
    const auto& si = s[static_cast<std::size_t>(i - 1)];
    rep.record("CK_A: sum_j a_ij s_j s_j* = s_i* s_i", "row " + std::to_string(i), lhs - si.adjoint() * si, tol);
  }
  return rep;
}

enum class NicaRelation { N1, N2 };

// Columns to leave out of a comparison (true = skip), e.g. the boundary of a
// finite corner of an infinite-dimensional representation.
template <class E>
using NicaMask = std::function<std::vector<bool>(NicaRelation, const E&, const E&)>;

namespace detail {

template <class S>
void record_masked(CheckReport& rep, const std::string& relation, const std::string& where, Matrix<S> diff,
                   const std::vector<bool>* skip, double tol) {
  if (skip) {
    bool any = false;
    for (std::size_t c = 0; c < diff.dim(); ++c) {
      if (!(*skip)[c]) continue;
      any = true;
      for (std::size_t r = 0; r < diff.dim(); ++r) diff(r, c) = ScalarTraits<S>::zero();
    }
    if (any) ++rep.skipped;
  }
  rep.record(relation, where, diff, tol);
}

}  // namespace detail

// (N1) u_t^* u_t = 1 for sampled t in P and
// (N2) u_x u_x^* u_y u_y^* = u_{x v y} u_{x v y}^* for sampled pairs, with
// u_infinity = 0.
template <class S, ql::QuasiLattice G>
CheckReport check_nica_relations(const G& g, const std::function<Matrix<S>(const typename G::Element&)>& u,
                                 std::size_t dim, std::span<const typename G::Element> positives,
                                 std::span<const std::pair<typename G::Element, typename G::Element>> pairs,
                                 double tol, const NicaMask<typename G::Element>* mask = nullptr) {
  CheckReport rep;
  for (const auto& t : positives) {
    if (!g.in_positive(t)) throw Error(ErrorKind::InvalidInput, "(N1) sample " + g.format(t) + " is not in P");
    auto ut = u(t);
    std::vector<bool> skip;
    if (mask) skip = (*mask)(NicaRelation::N1, t, t);
    detail::record_masked(rep, "N1: u_t* u_t = 1", g.format(t), ut.adjoint() * ut - Matrix<S>::identity(dim),
                          mask ? &skip : nullptr, tol);
  }
  for (const auto& [x, y] : pairs) {
    auto ux = u(x);
    auto uy = u(y);
    auto lhs = ux * ux.adjoint() * uy * uy.adjoint();
    auto b = g.lub(x, y);
    Matrix<S> rhs(dim);
    if (!b.is_infinite()) {
      auto uz = u(b.value());
      rhs = uz * uz.adjoint();
    }
    std::vector<bool> skip;
    if (mask) skip = (*mask)(NicaRelation::N2, x, y);
    detail::record_masked(rep, "N2: e(x)e(y) = e(x v y)", g.format(x) + " | " + g.format(y), lhs - rhs,
                          mask ? &skip : nullptr, tol);
  }
  return rep;
}

// True iff || prod_{t in F} (1 - e(t)) ||_max > tol, multiplying in the
// order given (callers pass F sorted).
template <class S, class E>
bool diagonal_faithfulness_witness(const std::function<Matrix<S>(const E&)>& u, std::size_t dim,
                                   std::span<const E> f, double tol) {
  Matrix<S> prod = Matrix<S>::identity(dim);
  for (const auto& t : f) {
    auto ut = u(t);
    prod = prod * (Matrix<S>::identity(dim) - ut * ut.adjoint());
  }
  if constexpr (ScalarTraits<S>::exact) {
    return !prod.is_zero();
  } else {
    return prod.max_abs() > tol;
  }
}

// Word version over a partial representation of F_n; F must consist of
// nontrivial positive words and is multiplied in shortlex order.
template <class S>
bool diagonal_faithfulness_witness(const PartialRep<S>& u, const std::set<ReducedWord>& f, double tol) {
  for (const auto& t : f) {
    if (t.is_identity() || !t.is_positive()) {
      throw Error(ErrorKind::InvalidInput, "faithfulness witness needs nontrivial positive words");
    }
  }
  std::vector<ReducedWord> ordered(f.begin(), f.end());
  std::function<Matrix<S>(const ReducedWord&)> img = [&](const ReducedWord& t) { return u.image(t); };
  return diagonal_faithfulness_witness<S, ReducedWord>(img, u.dim(), ordered, tol);
}

}  // namespace pdsx
