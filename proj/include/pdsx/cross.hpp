#pragma once

// Finite-scale crossed products C(X) x G by a partial action of a group on a
// finite set. Elements are finite sums sum_t a_t delta_t with a_t supported
// in U_t, multiplied by
//   (a delta_t)(b delta_s) = alpha_t(alpha_{t^-1}(a) b) delta_{ts}
// and involuted by (a delta_t)* = alpha_{t^-1}(conj a) delta_{t^-1}, where
// alpha_t(f) = f o theta_{t^-1}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdsx/matrix.hpp"
#include "pdsx/pisom.hpp"
#include "pdsx/spectrum.hpp"
#include "pdsx/words.hpp"

namespace pdsx::cross {

// The acting group with its elements indexed 0..size()-1. A free group is
// materialized on the ball of radius cap; products leaving it are absent.
class GroupIndex {
 public:
  static GroupIndex finite(FiniteGroup g);
  static GroupIndex free(int rank, int cap);

  bool is_free() const { return !finite_.has_value(); }
  int size() const { return static_cast<int>(names_.size()); }
  int identity() const { return identity_; }
  int inverse(int t) const { return inverse_[static_cast<std::size_t>(t)]; }
  std::optional<int> product(int t, int s) const;
  const std::string& name(int t) const { return names_[static_cast<std::size_t>(t)]; }
  // Throws ErrorKind::Parse for unknown names.
  int index_of(const std::string& name) const;

  int rank() const { return rank_; }
  int cap() const { return cap_; }
  const ReducedWord& word(int t) const { return words_[static_cast<std::size_t>(t)]; }
  const FiniteGroup& finite_group() const { return *finite_; }

 private:
  std::optional<FiniteGroup> finite_;
  int rank_ = 0;
  int cap_ = 0;
  std::vector<ReducedWord> words_;
  std::map<ReducedWord, int> word_index_;
  std::vector<std::string> names_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

using Coefficients = std::vector<Gaussian>;  // a function X -> C

class FiniteSystem {
 public:
  // theta[t][x] = theta_t(x) for x in U_{t^-1}, -1 elsewhere. Validates
  // theta_e = id, theta_{t^-1} = theta_t^{-1}, and that theta_{st} extends
  // theta_s o theta_t whenever st is materialized.
  FiniteSystem(std::vector<std::string> states, GroupIndex group, std::vector<std::vector<int>> maps);

  // Restriction of a global action (action[t][y]) to a subset of the
  // states: U_t = X cap tX.
  static FiniteSystem restriction(const FiniteGroup& g, const std::vector<std::vector<int>>& action,
                                  const std::vector<int>& subset);

  // Free group of the given rank acting through partial bijections of the
  // generators (gens[i][x] = image or -1), composed along reduced words of
  // length <= cap. States are named 0..n-1 unless names are given.
  static FiniteSystem free_generated(int num_states, const std::vector<std::vector<int>>& gens, int cap,
                                     std::vector<std::string> names = {});

  // X_G = {omega subset G : e in omega} with theta_t(omega) = t omega on
  // {omega : t^{-1} in omega}. Guard: |G| <= 16.
  static FiniteSystem partial_group_system(const FiniteGroup& g);

  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const GroupIndex& group() const { return group_; }
  int state_index(const std::string& name) const;

  // theta_t(x), or -1 when x is outside U_{t^-1}.
  int theta(int t, int x) const { return theta_[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)]; }
  bool in_domain(int t, int x) const { return theta(inverse_of(t), x) >= 0; }  // x in U_t
  std::vector<int> domain(int t) const;
  std::vector<int> fixed_points(int t) const;

 private:
  int inverse_of(int t) const { return group_.inverse(t); }

  std::vector<std::string> states_;
  GroupIndex group_;
  std::vector<std::vector<int>> theta_;
};

class CrossedElement {
 public:
  CrossedElement() = default;

  // Single term a delta_t; throws InvalidInput when a is not supported in U_t.
  static CrossedElement term(const FiniteSystem& sys, int t, Coefficients a);
  static CrossedElement unit(const FiniteSystem& sys);

  const std::map<int, Coefficients>& terms() const { return terms_; }
  Coefficients coefficient(const FiniteSystem& sys, int t) const;
  bool is_zero() const { return terms_.empty(); }
  std::vector<int> support() const;

  CrossedElement& add(const FiniteSystem& sys, int t, const Coefficients& a);
  friend CrossedElement operator+(const CrossedElement& p, const CrossedElement& q);
  friend CrossedElement operator-(const CrossedElement& p, const CrossedElement& q);
  friend CrossedElement operator*(const Gaussian& lambda, const CrossedElement& p);
  friend bool operator==(const CrossedElement&, const CrossedElement&) = default;

  std::string to_string(const FiniteSystem& sys) const;

 private:
  void prune();
  std::map<int, Coefficients> terms_;
};

// Throws TruncationOverflow when a needed product leaves the word cap.
CrossedElement multiply(const CrossedElement& p, const CrossedElement& q, const FiniteSystem& sys);
CrossedElement star(const CrossedElement& p, const FiniteSystem& sys);
Coefficients expectation(const CrossedElement& p, const FiniteSystem& sys);

// A covariant pair on C^dim: pi(1_x) = point_projections[x], u[t] per group
// element.
struct Covariant {
  std::vector<ExactMatrix> point_projections;
  std::vector<ExactMatrix> u;
  std::size_t dim() const { return u.empty() ? 0 : u.front().dim(); }
};

// H = C^X, pi diagonal, u_t e_x = e_{theta_t(x)}.
Covariant regular_representation(const FiniteSystem& sys);
// Free systems only: u_{g_i} e_x = phases[i][x] e_{theta_{g_i}(x)}, extended
// along reduced words. Phases must have modulus one.
Covariant twisted_representation(const FiniteSystem& sys, const std::vector<std::vector<Gaussian>>& phases);

CheckReport check_covariance(const FiniteSystem& sys, const Covariant& rep);

// sum_t pi(a_t) u_t. Throws InvalidInput naming the first violated
// covariance relation.
ExactMatrix represent(const FiniteSystem& sys, const Covariant& rep, const CrossedElement& p);

// Operator norm through the regular representation.
double norm(const FiniteSystem& sys, const CrossedElement& p);
double sup_norm(const Coefficients& f);

bool is_invariant(const FiniteSystem& sys, const std::vector<int>& omega);
// The partial action restricted to an invariant subset. States keep their names.
FiniteSystem restrict_system(const FiniteSystem& sys, const std::vector<int>& omega);
// Restricts every coefficient to omega. Throws InvalidInput when omega is
// not invariant.
CrossedElement restrict_quotient(const FiniteSystem& sys, const std::vector<int>& omega, const CrossedElement& p);

struct QuotientDimensions {
  long domain = 0;  // sum_t |U_t|
  long kernel = 0;  // sum_t |U_t \ omega|
  long image = 0;   // sum_t |U_t cap omega|
};
QuotientDimensions quotient_dimensions(const FiniteSystem& sys, const std::vector<int>& omega);

struct FixedSetObstruction {
  int t = 0;
  std::vector<int> fixed;
};

class NoCompressionPoint : public Error {
 public:
  NoCompressionPoint(std::vector<int> v, std::vector<FixedSetObstruction> obstructions, const std::string& what)
      : Error(ErrorKind::NoWitness, what), v_(std::move(v)), obstructions_(std::move(obstructions)) {}
  const std::vector<int>& v() const { return v_; }
  const std::vector<FixedSetObstruction>& obstructions() const { return obstructions_; }

 private:
  std::vector<int> v_;
  std::vector<FixedSetObstruction> obstructions_;
};

// h with h(x0) = 1, 0 <= h <= 1 and ||h (f delta_t) h|| <= eps, verified
// before returning. Throws InvalidInput when x0 is fixed by theta_t or f is
// not supported in U_t.
Coefficients hlemma_h(const FiniteSystem& sys, int t, const Coefficients& f, int x0, double eps);

struct Compression {
  Coefficients h;
  int x0 = 0;
  double diagonal_norm = 0.0;    // ||h E(c) h||
  double off_diagonal = 0.0;     // ||h E(c) h - h c h||
};

// h with ||h E(c) h|| >= ||E(c)|| - eps and ||h E(c) h - h c h|| <= eps.
// Throws NoCompressionPoint when every point of
// V = {|E(c)| > ||E(c)|| - eps} is fixed by some theta_t, t in supp(c) \ {e}.
Compression hprop_compress(const FiniteSystem& sys, const CrossedElement& c, double eps);

// sum_t |X_t| over the partial group system, by enumeration.
long partial_group_algebra_dim(const FiniteGroup& g);

}  // namespace pdsx::cross
