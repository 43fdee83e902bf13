#pragma once

// Random exact test objects: Cuntz-Krieger families and finite systems.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "pdsx/ck_matrix.hpp"
#include "pdsx/cross.hpp"
#include "pdsx/matrix.hpp"

namespace fixture {

using pdsx::ExactMatrix;
using pdsx::Gaussian;

inline pdsx::CKMatrix ckm(const std::vector<std::vector<int>>& rows) { return pdsx::CKMatrix(rows); }

// Exact m x m unitary: permutation, phases in {1, -1, i, -i}, and a few
// (3/5, 4/5) rotations.
inline ExactMatrix random_unitary(std::mt19937& rng, std::size_t m) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Gaussian phases[] = {Gaussian(1), Gaussian(-1), Gaussian::i(), -Gaussian::i()};
  std::uniform_int_distribution<int> ph(0, 3);
  ExactMatrix u(m);
  for (std::size_t c = 0; c < m; ++c) u(perm[c], c) = phases[ph(rng)];
  if (m >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (int r = 0; r < 2; ++r) {
      std::size_t a = pick(rng), b = pick(rng);
      if (a == b) continue;
      ExactMatrix rot = ExactMatrix::identity(m);
      rot(a, a) = Gaussian::ratio(3, 5);
      rot(a, b) = Gaussian::ratio(-4, 5);
      rot(b, a) = Gaussian::ratio(4, 5);
      rot(b, b) = Gaussian::ratio(3, 5);
      u = rot * u;
    }
  }
  return u;
}

// All nonnegative integer r with r = A r and 1 <= sum(r) <= max_dim.
inline std::vector<std::vector<int>> ck_dimension_vectors(const pdsx::CKMatrix& a, int max_dim) {
  const int n = a.n();
  std::vector<std::vector<int>> out;
  std::vector<int> r(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      if (left == max_dim) return;
      for (int k = 1; k <= n; ++k) {
        int s = 0;
        for (int j = 1; j <= n; ++j) s += a(k, j) ? r[static_cast<std::size_t>(j - 1)] : 0;
        if (s != r[static_cast<std::size_t>(k - 1)]) return;
      }
      out.push_back(r);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      r[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, left - v);
    }
    r[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 0, max_dim);
  return out;
}

// A Cuntz-Krieger family with range dimensions r: H = sum_i H_i, and s_i
// maps sum_{j : a_ij = 1} H_j unitarily onto H_i.
inline std::vector<ExactMatrix> ck_family(std::mt19937& rng, const pdsx::CKMatrix& a, const std::vector<int>& r) {
  const int n = a.n();
  std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + static_cast<std::size_t>(r[static_cast<std::size_t>(i)]);
  const std::size_t dim = offset.back();
  std::vector<ExactMatrix> s;
  for (int i = 1; i <= n; ++i) {
    std::vector<std::size_t> source;
    for (int j = 1; j <= n; ++j)
      if (a(i, j))
        for (std::size_t k = offset[static_cast<std::size_t>(j - 1)]; k < offset[static_cast<std::size_t>(j)]; ++k) source.push_back(k);
    const std::size_t m = static_cast<std::size_t>(r[static_cast<std::size_t>(i - 1)]);
    ExactMatrix si(dim);
    if (m > 0) {
      const ExactMatrix u = random_unitary(rng, m);
      for (std::size_t row = 0; row < m; ++row)
        for (std::size_t col = 0; col < m; ++col) si(offset[static_cast<std::size_t>(i - 1)] + row, source[col]) = u(row, col);
    }
    s.push_back(std::move(si));
  }
  return s;
}

// Partial permutation of {0..n-1}: each point kept with probability p.
inline std::vector<int> random_partial_bijection(std::mt19937& rng, int n, double p) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  std::bernoulli_distribution keep(p);
  for (auto& v : img)
    if (!keep(rng)) v = -1;
  return img;
}

inline Gaussian random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> v(-3, 3), d(1, 3);
  return Gaussian(mpq_class(v(rng), d(rng)), mpq_class(v(rng), d(rng)));
}

// Random element supported on the given group indices.
inline pdsx::cross::CrossedElement random_element(std::mt19937& rng, const pdsx::cross::FiniteSystem& sys,
                                                  const std::vector<int>& support) {
  pdsx::cross::CrossedElement p;
  std::bernoulli_distribution use(0.7);
  for (int t : support) {
    pdsx::cross::Coefficients a(static_cast<std::size_t>(sys.num_states()));
    for (int x : sys.domain(t))
      if (use(rng)) a[static_cast<std::size_t>(x)] = random_scalar(rng);
    p.add(sys, t, a);
  }
  return p;
}

// A valid finite system: either a restricted global finite-group action or
// a free group of rank 1..2 with random generator partial bijections.
inline pdsx::cross::FiniteSystem random_system(std::mt19937& rng) {
  using pdsx::FiniteGroup;
  std::uniform_int_distribution<int> kind(0, 2);
  const int k = kind(rng);
  if (k == 2) {
    std::uniform_int_distribution<int> states(2, 5), rank(1, 2);
    const int n = states(rng);
    std::vector<std::vector<int>> gens;
    for (int i = rank(rng); i > 0; --i) gens.push_back(random_partial_bijection(rng, n, 0.75));
    return pdsx::cross::FiniteSystem::free_generated(n, gens, 3);
  }
  FiniteGroup g = k == 0 ? FiniteGroup::cyclic(std::uniform_int_distribution<int>(2, 4)(rng)) : FiniteGroup::symmetric3();
  // Action on G itself by left multiplication, or on cosets-like copies.
  const int copies = std::uniform_int_distribution<int>(1, 2)(rng);
  const int total = g.size() * copies;
  std::vector<std::vector<int>> action(static_cast<std::size_t>(g.size()));
  for (int t = 0; t < g.size(); ++t)
    for (int y = 0; y < total; ++y) action[static_cast<std::size_t>(t)].push_back((y / g.size()) * g.size() + g.multiply(t, y % g.size()));
  std::vector<int> subset;
  std::bernoulli_distribution keep(0.6);
  for (int y = 0; y < total; ++y)
    if (keep(rng)) subset.push_back(y);
  if (subset.empty()) subset.push_back(0);
  return pdsx::cross::FiniteSystem::restriction(g, action, subset);
}

}  // namespace fixture
