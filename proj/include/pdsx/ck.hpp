#pragma once

// Cuntz-Krieger combinatorics for a {0,1} matrix A: admissible paths,
// circuits and condition (I), the semisaturated partial action of F_n on
// cylinder sets of infinite path space, fixed points, topological freeness,
// simplicity verdicts, and the dictionary between points of the spectrum of
// the Cuntz-Krieger relations and infinite admissible paths.

#include <optional>
#include <string>
#include <vector>

#include "pdsx/ck_matrix.hpp"
#include "pdsx/spectrum.hpp"
#include "pdsx/words.hpp"

namespace pdsx::ck {

struct PathPrefix {
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  ReducedWord as_word(int rank) const { return ReducedWord::reduce(rank, letters); }
  PathPrefix take(std::size_t len) const;
  std::string to_string() const;

  friend auto operator<=>(const PathPrefix&, const PathPrefix&) = default;
};

// The cylinder of infinite paths starting with the prefix.
struct Cylinder {
  PathPrefix prefix;
  friend auto operator<=>(const Cylinder&, const Cylinder&) = default;
};

// x gamma gamma gamma ... ; power records m when the path was obtained as
// the fixed point of x gamma^m x^{-1}.
struct EventuallyPeriodicPath {
  PathPrefix head;
  PathPrefix cycle;
  long power = 1;

  PathPrefix take(std::size_t len) const;
  std::string to_string() const;

  friend bool operator==(const EventuallyPeriodicPath& a, const EventuallyPeriodicPath& b) {
    return a.head == b.head && a.cycle == b.cycle;
  }
};

bool is_admissible(const PathPrefix& p, const CKMatrix& a);
// gamma nonempty and gamma gamma admissible.
bool is_circuit(const PathPrefix& gamma, const CKMatrix& a);

std::vector<PathPrefix> admissible_prefixes(const CKMatrix& a, int length);

// All circuits with no repeated letter (every rotation listed), shortlex.
std::vector<PathPrefix> simple_circuits(const CKMatrix& a);

// Every letter of gamma has row sum 1. Throws InvalidInput if gamma is not a circuit.
bool is_terminal(const PathPrefix& gamma, const CKMatrix& a);

struct ConditionI {
  bool holds = true;
  std::optional<PathPrefix> witness;  // a terminal circuit when condition (I) fails
};

// Scans simple circuits for a terminal one.
ConditionI condition_I(const CKMatrix& a);

// Applies the letters of t right to left: g prepends g when a(g, first) = 1,
// g^{-1} strips a leading g. nullopt when the cylinder leaves the domain.
// Throws TruncationOverflow when |t| + |prefix| > depth or when the prefix
// runs out before the domain can be decided.
std::optional<Cylinder> theta_apply(const ReducedWord& t, const Cylinder& c, const CKMatrix& a, int depth);

// The unique point fixed by theta_t, if any: t = x gamma^m x^{-1} with
// x gamma gamma admissible. Throws InvalidInput for t = e.
std::optional<EventuallyPeriodicPath> fixed_set(const ReducedWord& t, const CKMatrix& a);

bool is_isolated(const EventuallyPeriodicPath& p, const CKMatrix& a);

struct TopologicalFreeness {
  bool holds = true;
  std::optional<PathPrefix> terminal_circuit;
  std::optional<ReducedWord> fixing_element;
  std::optional<EventuallyPeriodicPath> fixed_path;
};

// Follows unique successors among the letters with row sum 1 looking for a
// closed orbit; on failure the witness t = gamma fixes the isolated point
// gamma^infinity.
TopologicalFreeness is_topologically_free(const CKMatrix& a);

// Counts admissible continuations of every eventually periodic path
// x gamma^infinity (|gamma| <= n, |x| <= 1) and returns one whose cylinder
// eventually contains no other path.
std::optional<EventuallyPeriodicPath> find_isolated_point(const CKMatrix& a);

enum class Simplicity { Simple, NotSimple, Undetermined };
std::string to_string(Simplicity s);

struct SimplicityVerdict {
  Simplicity verdict = Simplicity::Undetermined;
  std::vector<std::string> reasons;
  std::vector<std::vector<int>> components;  // strongly connected components
  std::vector<Cylinder> invariant_union;     // proper invariant union, when found
};

SimplicityVerdict simplicity_verdict(const CKMatrix& a, int depth = 8);

std::vector<std::vector<int>> strongly_connected_components(const CKMatrix& a);

struct SpecCheck {
  bool holds = true;
  // Centers t in omega whose generator-level conditions need elements
  // beyond the ball.
  std::vector<ReducedWord> skipped;
};

// e in omega, closure under initial segments, and at every center t with
// |t| < radius a unique generator g_j with t g_j in omega and
// t g_i^{-1} in omega iff a(i, j) = 1.
SpecCheck spec_check_report(const BallPattern& omega, const CKMatrix& a);
inline bool spec_check(const BallPattern& omega, const CKMatrix& a) { return spec_check_report(omega, a).holds; }

// omega_mu restricted to B_k, from t = (mu_1...mu_j) nu^{-1} with
// nu mu_{j+1} admissible. Needs |mu| >= k.
BallPattern omega_from_path(const PathPrefix& mu, const CKMatrix& a, int radius);

// The positive chain inside omega, of length equal to the radius.
PathPrefix path_from_omega(const BallPattern& omega, const CKMatrix& a);

// Whether the union of the cylinders is invariant under every generator and
// its inverse, testing pieces refined to depth d (prefixes must be <= d-1).
bool invariant_cylinder_union_check(const std::vector<Cylinder>& cylinders, const CKMatrix& a, int depth);

// CK1, CK_A[i] for each row, then CK_ss instances for geodesic t, r != e
// with |tr| <= max_length.
std::vector<FreeRelation> ck_relation_polys(const CKMatrix& a, int max_length);

// Graphviz digraph, edge i -> j iff a_ij = 1, terminal circuits in red.
std::string to_dot(const CKMatrix& a);

}  // namespace pdsx::ck
