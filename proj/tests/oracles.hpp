#pragma once

// Brute-force reference implementations shared by the unit tests. They are
// deliberately naive and never call the library routine they check.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <random>
#include <set>
#include <vector>

#include "pdsx/ck_matrix.hpp"
#include "pdsx/words.hpp"

namespace oracle {

// Free reduction with an explicit stack.
inline std::vector<int> stack_reduce(const std::vector<int>& raw) {
  std::vector<int> st;
  for (int l : raw) {
    if (!st.empty() && st.back() == -l) {
      st.pop_back();
    } else {
      st.push_back(l);
    }
  }
  return st;
}

// Every raw letter string of length <= k, reduced and deduplicated.
inline std::set<std::vector<int>> ball_by_reduction(int n, int k) {
  std::set<std::vector<int>> out;
  std::vector<std::vector<int>> layer{{}};
  out.insert(std::vector<int>{});
  for (int len = 1; len <= k; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer)
      for (int i = 1; i <= n; ++i)
        for (int s : {1, -1}) {
          auto v = w;
          v.push_back(s * i);
          out.insert(stack_reduce(v));
          next.push_back(std::move(v));
        }
    layer = std::move(next);
  }
  return out;
}

inline pdsx::ReducedWord random_word(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(1, rank), sign(0, 1);
  std::vector<int> raw;
  const int l = len(rng);
  for (int i = 0; i < l; ++i) raw.push_back(sign(rng) ? gen(rng) : -gen(rng));
  return pdsx::ReducedWord::reduce(rank, raw);
}

// Random 0/1 matrix without zero rows.
inline pdsx::CKMatrix random_matrix(std::mt19937& rng, int n) {
  std::bernoulli_distribution bit(0.5);
  std::uniform_int_distribution<int> col(0, n - 1);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& row : rows) {
    bool any = false;
    for (auto& v : row) {
      v = bit(rng) ? 1 : 0;
      any = any || v;
    }
    if (!any) row[static_cast<std::size_t>(col(rng))] = 1;
  }
  return pdsx::CKMatrix(rows);
}

// All n x n 0/1 matrices without zero rows.
inline std::vector<pdsx::CKMatrix> all_matrices(int n) {
  std::vector<pdsx::CKMatrix> out;
  const std::uint32_t cells = static_cast<std::uint32_t>(n * n);
  for (std::uint32_t bits = 0; bits < (1U << cells); ++bits) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      int sum = 0;
      for (int j = 0; j < n; ++j) {
        const int v = (bits >> (i * n + j)) & 1U;
        rows[static_cast<std::size_t>(i)].push_back(v);
        sum += v;
      }
      ok = sum > 0;
    }
    if (ok) out.emplace_back(rows);
  }
  return out;
}

// theta_t on a finite path prefix, applying the letters of t right to left.
// nullopt when the prefix leaves the domain. Throws when the prefix runs
// out before a decision.
inline std::optional<std::vector<int>> act(const pdsx::ReducedWord& t, std::vector<int> w, const pdsx::CKMatrix& a) {
  const auto& l = t.signed_letters();
  for (auto it = l.rbegin(); it != l.rend(); ++it) {
    if (w.empty()) throw std::logic_error("prefix too short");
    if (*it > 0) {
      if (!a(*it, w.front())) return std::nullopt;
      w.insert(w.begin(), *it);
    } else {
      if (w.front() != -*it) return std::nullopt;
      w.erase(w.begin());
    }
  }
  return w;
}

// Admissible words of length len, by filtering all n^len words.
inline std::vector<std::vector<int>> admissible_words(const pdsx::CKMatrix& a, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(static_cast<std::size_t>(len), 1);
  const int n = a.n();
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) ok = ok && a(w[i], w[i + 1]);
    if (ok) out.push_back(w);
    int pos = len - 1;
    while (pos >= 0 && w[static_cast<std::size_t>(pos)] == n) w[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
    ++w[static_cast<std::size_t>(pos)];
  }
  return out;
}

// {t in B_k : mu in U_t}, i.e. theta_{t^-1} defined at mu. mu needs k + 1 letters.
inline std::set<pdsx::ReducedWord> omega_by_action(const std::vector<int>& mu, const pdsx::CKMatrix& a, int k) {
  std::set<pdsx::ReducedWord> out;
  for (const auto& t : pdsx::ball(a.n(), k))
    if (act(t.inverse(), mu, a)) out.insert(t);
  return out;
}

}  // namespace oracle
