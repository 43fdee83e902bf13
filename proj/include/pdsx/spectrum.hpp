#pragma once

// Truncated points of X_G = {omega subset G : e in omega} and of the
// spectrum Omega_R of a relation set, with the partial action
// theta_t(omega) = t omega on {omega : t^{-1} in omega}.
//
// For free groups a point is known only on a word-length ball B_k. Checks
// that would need elements outside the ball are skipped and reported, so a
// truncated spectrum is an outer approximation. Finite groups are handled
// exactly.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pdsx/relation.hpp"
#include "pdsx/words.hpp"

namespace pdsx {

struct BallPattern {
  int rank = 0;
  int radius = 0;
  std::set<ReducedWord> members;

  // Validates e in members and |w| <= radius.
  static BallPattern make(int rank, int radius, std::set<ReducedWord> members);

  bool contains(const ReducedWord& w) const { return members.count(w) > 0; }
  BallPattern restrict_to(int new_radius) const;

  friend bool operator==(const BallPattern&, const BallPattern&) = default;
  friend auto operator<=>(const BallPattern& a, const BallPattern& b) {
    if (auto c = a.radius <=> b.radius; c != 0) return c;
    return a.members <=> b.members;
  }
};

using FreeRelation = RelationPoly<ReducedWord>;

// sum_i lambda_i prod_j [t_ij in omega]; throws TruncationOverflow when a
// factor is longer than the radius.
Gaussian evaluate(const FreeRelation& f, const BallPattern& omega);

// t omega restricted to B_{k-|t|} when t^{-1} in omega, nullopt otherwise.
// Throws TruncationOverflow when |t| > k.
std::optional<BallPattern> translate(const BallPattern& omega, const ReducedWord& t);

struct SkippedCheck {
  ReducedWord center;
  std::size_t relation = 0;
  friend bool operator==(const SkippedCheck&, const SkippedCheck&) = default;
};

struct LocalVerdict {
  bool satisfied = true;
  std::vector<SkippedCheck> skipped;
  // First refuting (center, relation index), if any.
  std::optional<SkippedCheck> failure;
};

// f(t^{-1} omega) = 0 for all t in omega and f in R, as far as the ball
// allows. Skipped (center, relation) pairs are listed in center order.
LocalVerdict satisfies_relations_locally(const BallPattern& omega, std::span<const FreeRelation> relations);

// Throws ErrorKind::Guard when the ball is too large to enumerate.
void check_spectrum_guard(int rank, int radius);

// Every subset of B_k containing e that passes the local check.
// Guard: |B_k| <= 25 unless PDSX_GUARD_OVERRIDE is set.
std::vector<BallPattern> enumerate_spectrum_ball(std::span<const FreeRelation> relations, int rank, int radius);

// Patterns omega with translate(omega, t) defined and equal to
// omega restricted to B_{k-|t|}. Patterns with radius < |t| are dropped.
std::vector<BallPattern> fixed_patterns(const ReducedWord& t, std::span<const BallPattern> patterns);

// Basic open set {chi : a_i in chi, b_j not in chi}.
struct BasicOpenSet {
  int rank = 0;
  std::vector<ReducedWord> inside;
  std::vector<ReducedWord> outside;
};

// A finite omega_0 in U, inside the domain of theta_t, with t omega_0 != omega_0:
// omega_0 = {e, a_1, ..., a_m, t^{-1}, c} where c is the shortlex-smallest
// element avoiding e, the a_i, the b_j and t^{-1}({e} u {a_i}).
// Throws InvalidInput when U is inconsistent or misses the domain of theta_t.
BallPattern infinite_group_separation_witness(const BasicOpenSet& u, const ReducedWord& t);

// A finite group given by its multiplication table over named elements.
class FiniteGroup {
 public:
  // Validates closure, associativity, identity and inverses.
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table);

  static FiniteGroup cyclic(int order);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup symmetric3();

  int size() const { return static_cast<int>(names_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::string& name(int a) const { return names_[static_cast<std::size_t>(a)]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  int index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

// Subset of a finite group as a bitmask over element indices (|G| <= 16).
struct FinitePattern {
  std::uint32_t mask = 0;
  bool contains(int a) const { return (mask >> a) & 1U; }
  friend auto operator<=>(const FinitePattern&, const FinitePattern&) = default;
};

using FiniteRelation = RelationPoly<int>;

Gaussian evaluate(const FiniteRelation& f, const FinitePattern& omega);
std::optional<FinitePattern> translate(const FiniteGroup& g, const FinitePattern& omega, int t);
bool satisfies_relations(const FiniteGroup& g, const FinitePattern& omega, std::span<const FiniteRelation> relations);

// Exact Omega_R. Guard: |G| <= 16 unless PDSX_GUARD_OVERRIDE is set.
std::vector<FinitePattern> finite_group_spectrum(const FiniteGroup& g, std::span<const FiniteRelation> relations);

// Patterns with t^{-1} in omega and t omega = omega.
std::vector<FinitePattern> fixed_patterns(const FiniteGroup& g, int t, std::span<const FinitePattern> patterns);

std::string describe(const FiniteGroup& g, const FinitePattern& omega);

}  // namespace pdsx
