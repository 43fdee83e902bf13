// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "nica_support.hpp"
#include "oracles.hpp"
#include "pdsx/ck.hpp"
#include "pdsx/cross.hpp"
#include "pdsx/pisom.hpp"
#include "pdsx/qlattice.hpp"
#include "pdsx/spectrum.hpp"

using namespace pdsx;
using fixture::ckm;

namespace {

// Failures are collected with a short description; the first few are printed.
struct Tally {
  long cases = 0;
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no runtime bound
  std::function<void(Tally&)> body;
};

bool run(const Criterion& c) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  std::string crash;
  try {
    c.body(t);
  } catch (const std::exception& e) {
    crash = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = c.limit_seconds <= 0 || secs < c.limit_seconds;
  const bool pass = crash.empty() && t.failures.empty() && in_time && t.cases > 0;

  char timing[96];
  if (c.limit_seconds > 0) {
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit_seconds);
  } else {
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
  }
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << t.cases << " checks, "
            << t.failures.size() << " failed (" << timing << ")";
  if (!t.note.empty()) std::cout << "; " << t.note;
  std::cout << "\n";
  if (!crash.empty()) std::cout << "      exception: " << crash << "\n";
  if (!in_time) std::cout << "      runtime bound exceeded\n";
  for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i) std::cout << "      " << t.failures[i] << "\n";
  return pass;
}

std::string rows_str(const CKMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 1; i <= a.n(); ++i) {
    os << (i > 1 ? "," : "") << "[";
    for (int j = 1; j <= a.n(); ++j) os << (j > 1 ? "," : "") << a(i, j);
    os << "]";
  }
  return os.str() + "]";
}

const CKMatrix kOnes = ckm({{1, 1}, {1, 1}});
const CKMatrix kSwap = ckm({{0, 1}, {1, 0}});
const CKMatrix kUpper = ckm({{1, 1}, {0, 1}});

// ---- 1 ------------------------------------------------------------------

void condition_i_equivalence(Tally& t) {
  auto agree = [&](const CKMatrix& a) {
    const bool i = ck::condition_I(a).holds;
    const bool tf = ck::is_topologically_free(a).holds;
    const bool no_isolated = !ck::find_isolated_point(a).has_value();
    t.expect(i == tf && i == no_isolated, rows_str(a) + ": I=" + std::to_string(i) + " topfree=" + std::to_string(tf) +
                                              " no-isolated=" + std::to_string(no_isolated));
  };
  long exhaustive = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& a : oracle::all_matrices(n)) {
      agree(a);
      ++exhaustive;
    }
  std::mt19937 rng(1001);
  for (int k = 0; k < 500; ++k) agree(oracle::random_matrix(rng, 4));
  t.note = std::to_string(exhaustive) + " exhaustive (n <= 3) + 500 random 4x4";
}

// ---- 2 ------------------------------------------------------------------

void spectrum_dictionary(Tally& t) {
  const int k = 2;
  for (const auto& a : {kOnes, kSwap, kUpper}) {
    const auto rels = ck::ck_relation_polys(a, k);
    const auto elems = ball(a.n(), k);
    std::set<BallPattern> by_spec, by_rel, by_path;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (elems.size() - 1)); ++bits) {
      BallPattern p{a.n(), k, {elems.front()}};
      for (std::size_t i = 1; i < elems.size(); ++i)
        if ((bits >> (i - 1)) & 1U) p.members.insert(elems[i]);
      const auto sc = ck::spec_check_report(p, a);
      const auto lv = satisfies_relations_locally(p, rels);
      if (sc.holds) by_spec.insert(p);
      if (lv.satisfied) by_rel.insert(p);
      if (sc.holds && lv.satisfied) {
        std::vector<ReducedWord> ck1_skips;
        for (const auto& s : lv.skipped)
          if (s.relation == 0) ck1_skips.push_back(s.center);
        t.expect(ck1_skips == sc.skipped, rows_str(a) + ": skip reports differ");
      }
    }
    for (const auto& mu : ck::admissible_prefixes(a, k)) by_path.insert(ck::omega_from_path(mu, a, k));
    t.expect(by_spec == by_rel, rows_str(a) + ": spec_check and relation survivors differ");
    t.expect(by_spec == by_path, rows_str(a) + ": survivors differ from omega_from_path");
    t.expect(!by_spec.empty(), rows_str(a) + ": no survivors");
  }
}

// ---- 3 ------------------------------------------------------------------

void round_trip(Tally& t) {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_matrix(rng, std::uniform_int_distribution<int>(1, 4)(rng));
    const int k = std::uniform_int_distribution<int>(1, 4)(rng);
    const int len = k + std::uniform_int_distribution<int>(0, 2)(rng);
    // Random admissible prefix of the chosen length.
    std::vector<int> mu{std::uniform_int_distribution<int>(1, a.n())(rng)};
    while (static_cast<int>(mu.size()) < len) {
      std::vector<int> next;
      for (int j = 1; j <= a.n(); ++j)
        if (a(mu.back(), j)) next.push_back(j);
      mu.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
    }
    const ck::PathPrefix p{mu};
    const auto omega = ck::omega_from_path(p, a, k);
    t.expect(ck::path_from_omega(omega, a) == p.take(static_cast<std::size_t>(k)),
             rows_str(a) + " mu=" + p.to_string() + " k=" + std::to_string(k));
  }
}

// ---- 4 ------------------------------------------------------------------

// Depth-d prefixes w with theta_t(w) and w prefix-comparable.
std::vector<std::vector<int>> fixed_cylinders(const ReducedWord& t, const CKMatrix& a, int depth) {
  std::vector<std::vector<int>> out;
  for (const auto& p : oracle::admissible_words(a, depth)) {
    const auto q = oracle::act(t, p, a);
    if (!q) continue;
    const auto& s = q->size() < p.size() ? *q : p;
    const auto& l = q->size() < p.size() ? p : *q;
    if (std::equal(s.begin(), s.end(), l.begin())) out.push_back(p);
  }
  return out;
}

void fixed_point_characterization(Tally& t) {
  constexpr int kDepth = 6;
  long nonempty = 0;
  for (const auto& a : {kOnes, kSwap, kUpper}) {
    for (const auto& w : ball(2, 4)) {
      if (w.is_identity()) continue;
      const auto predicted = ck::fixed_set(w, a);
      const auto deep = fixed_cylinders(w, a, kDepth);
      const std::string where = rows_str(a) + " t=" + w.to_string();
      if (!predicted) {
        t.expect(deep.empty(), where + ": brute force finds a fixed cylinder, fixed_set is empty");
        continue;
      }
      ++nonempty;
      const auto target = predicted->take(kDepth).letters;
      t.expect(deep == std::vector<std::vector<int>>{target}, where + ": depth-6 fixed cylinders differ from " + predicted->to_string());
      // The chain of shallower fixed cylinders converges to the prediction.
      for (int d = static_cast<int>(w.length()); d < kDepth; ++d) {
        const auto layer = fixed_cylinders(w, a, d);
        const std::vector<int> head(target.begin(), target.begin() + d);
        t.expect(std::find(layer.begin(), layer.end(), head) != layer.end(), where + ": chain broken at depth " + std::to_string(d));
      }
    }
  }
  t.note = std::to_string(nonempty) + " nonempty fixed sets, |t| <= 4, depth 6";
}

// ---- 5 ------------------------------------------------------------------

std::vector<std::pair<ReducedWord, ReducedWord>> all_pairs(int rank, int radius) {
  std::vector<std::pair<ReducedWord, ReducedWord>> out;
  for (const auto& s : ball(rank, radius))
    for (const auto& r : ball(rank, radius)) out.emplace_back(s, r);
  return out;
}

void ck_round_trip(Tally& t) {
  const std::vector<CKMatrix> mats{ckm({{1}}),
                                   kSwap,
                                   kUpper,
                                   ckm({{1, 0}, {0, 1}}),
                                   ckm({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}),
                                   ckm({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}),
                                   ckm({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})};
  std::vector<std::pair<CKMatrix, std::vector<int>>> cases;
  for (const auto& a : mats)
    for (const auto& r : fixture::ck_dimension_vectors(a, 8)) cases.emplace_back(a, r);
  std::mt19937 rng(505);
  std::shuffle(cases.begin(), cases.end(), rng);
  cases.resize(std::min<std::size_t>(cases.size(), 50));
  std::size_t max_dim = 0;
  for (const auto& [a, r] : cases) {
    const auto s = fixture::ck_family(rng, a, r);
    max_dim = std::max(max_dim, s.front().dim());
    const std::string where = rows_str(a) + " dim " + std::to_string(s.front().dim());
    const auto fam = check_ck_family<Gaussian>(s, a, 0.0);
    t.expect(fam.passed() && fam.max_residual == 0.0, where + ": CK family check");
    const auto u = PartialRep<Gaussian>::semisaturated(a.n(), s);
    const auto pairs = all_pairs(a.n(), 2);
    const auto rep = check_partial_rep(u, std::span(pairs), 0.0);
    t.expect(rep.passed() && rep.max_residual == 0.0, where + ": partial representation axioms");
    const auto polys = ck::ck_relation_polys(a, 3);
    const auto rel = check_relations(u, std::span(polys), 0.0);
    t.expect(rel.passed() && rel.max_residual == 0.0, where + ": CK_ss, CK1, CK_A relations");
  }
  t.note = std::to_string(cases.size()) + " families, max dim " + std::to_string(max_dim);
}

// ---- 6 ------------------------------------------------------------------

template <class G>
void nica_corner(Tally& t, const ql::IsometricCorner<G>& corner, long& skipped) {
  using E = typename G::Element;
  const auto& g = corner.group();
  const auto v = corner.isometries();
  const std::size_t dim = corner.dim();
  for (const auto& [p, m] : v) t.expect(is_partial_isometry(m), "V_" + g.format(p) + " is not a partial isometry");

  // Lubs may leave the corner; their truncated isometries are still defined
  // and the columns they touch are masked.
  auto family = v;
  std::function<ExactMatrix(const E&)> u = [&](const E& x) {
    if (auto st = ql::sigma_tau(g, x))
      for (const auto& p : {st->first, st->second})
        if (!family.count(p)) family.emplace(p, corner.isometry(p));
    return ql::partial_rep_from_isometric(g, family, dim, x);
  };
  std::vector<std::pair<E, E>> pairs;
  for (const auto& x : corner.basis())
    for (const auto& y : corner.basis()) pairs.emplace_back(x, y);
  const auto mask = nica::boundary_mask(corner);
  const auto report = check_nica_relations<Gaussian, G>(g, u, dim, corner.basis(), pairs, 0.0, &mask);
  t.expect(report.passed() && report.max_residual == 0.0, "Nica relations fail on a corner of dim " + std::to_string(dim));
  skipped += static_cast<long>(report.skipped);

  // Restriction to P and back: u_x on every x = p q^{-1} with p, q in the corner.
  std::set<E> xs;
  for (const auto& p : corner.basis())
    for (const auto& q : corner.basis()) xs.insert(g.multiply(p, g.invert(q)));
  for (const auto& x : xs) {
    const auto st = ql::sigma_tau(g, x);
    if (!st || !v.count(st->first) || !v.count(st->second)) continue;
    const auto rebuilt = u(x);
    const auto direct = corner.direct(x);
    auto skip = corner.direct_boundary(x);
    using F = typename ql::IsometricCorner<G>::Factor;
    const auto hit = corner.boundary_columns(std::vector<F>{{x, false}});
    for (std::size_t c = 0; c < dim; ++c) {
      if (skip[c] || hit[c]) {
        ++skipped;
        continue;
      }
      bool same = true;
      for (std::size_t r = 0; r < dim; ++r) same = same && rebuilt(r, c) == direct(r, c);
      t.expect(same, "reconstruction differs at x=" + g.format(x) + " column " + std::to_string(c));
    }
  }
}

void nica_round_trip(Tally& t) {
  std::mt19937 rng(606);
  long skipped = 0;
  int corners = 0;
  std::size_t largest = 0;

  const ql::ZkNk z2(2);
  std::vector<ql::IntVec> zpos;
  for (const auto& p : z2.ball(4))
    if (z2.in_positive(p) && !(p == z2.identity())) zpos.push_back(p);
  std::set<std::vector<ql::IntVec>> seen_z;
  for (int trial = 0; trial < 40 && corners < 8; ++trial) {
    std::vector<ql::IntVec> tops;
    for (int k = std::uniform_int_distribution<int>(1, 2)(rng); k > 0; --k)
      tops.push_back(zpos[std::uniform_int_distribution<std::size_t>(0, zpos.size() - 1)(rng)]);
    const auto basis = nica::down_closure(z2, tops, 6);
    if (basis.size() > 20 || basis.size() < 2 || !seen_z.insert(basis).second) continue;
    ql::IsometricCorner<ql::ZkNk> corner(z2, basis);
    nica_corner(t, corner, skipped);
    largest = std::max(largest, corner.dim());
    ++corners;
  }

  const ql::FreeQL f2(2);
  std::vector<ReducedWord> fpos;
  for (const auto& p : f2.ball(3))
    if (f2.in_positive(p) && !p.is_identity()) fpos.push_back(p);
  std::set<std::vector<ReducedWord>> seen_f;
  int free_corners = 0;
  for (int trial = 0; trial < 40 && free_corners < 8; ++trial) {
    std::vector<ReducedWord> tops;
    for (int k = std::uniform_int_distribution<int>(1, 3)(rng); k > 0; --k)
      tops.push_back(fpos[std::uniform_int_distribution<std::size_t>(0, fpos.size() - 1)(rng)]);
    const auto basis = nica::down_closure(f2, tops, 3);
    if (basis.size() > 20 || basis.size() < 2 || !seen_f.insert(basis).second) continue;
    ql::IsometricCorner<ql::FreeQL> corner(f2, basis);
    nica_corner(t, corner, skipped);
    largest = std::max(largest, corner.dim());
    ++free_corners;
  }
  t.expect(corners > 0 && free_corners > 0, "no corners generated");
  t.note = std::to_string(corners) + " Z^2 and " + std::to_string(free_corners) + " F2 corners, max dim " +
           std::to_string(largest) + ", " + std::to_string(skipped) + " boundary columns skipped";
}

// ---- 7 ------------------------------------------------------------------

std::vector<int> short_support(const cross::FiniteSystem& sys) {
  std::vector<int> out;
  for (int t = 0; t < sys.group().size(); ++t)
    if (!sys.group().is_free() || sys.group().word(t).length() <= 1) out.push_back(t);
  return out;
}

void crossed_product_axioms(Tally& t) {
  using namespace cross;
  std::mt19937 rng(707);
  long zero_elements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto sys = fixture::random_system(rng);
    const auto sup = short_support(sys);
    const auto p = fixture::random_element(rng, sys, sup);
    const auto q = fixture::random_element(rng, sys, sup);
    const auto r = fixture::random_element(rng, sys, sup);
    const std::string where = "trial " + std::to_string(trial);
    t.expect(multiply(multiply(p, q, sys), r, sys) == multiply(p, multiply(q, r, sys), sys), where + ": associativity");
    t.expect(star(star(p, sys), sys) == p, where + ": star is an involution");
    t.expect(star(multiply(p, q, sys), sys) == multiply(star(q, sys), star(p, sys), sys), where + ": star reverses products");

    const auto e = expectation(multiply(star(p, sys), p, sys), sys);
    bool positive = true;
    bool zero = true;
    for (const auto& v : e) {
      positive = positive && v.imag() == 0 && v.real() >= 0;
      zero = zero && v.is_zero();
    }
    t.expect(positive, where + ": E(p*p) not positive");
    t.expect(zero == p.is_zero(), where + ": E(p*p) = 0 does not match p = 0");
    zero_elements += p.is_zero() ? 1 : 0;

    const auto rep = regular_representation(sys);
    const auto rp = represent(sys, rep, p);
    const auto rq = represent(sys, rep, q);
    t.expect(residual(represent(sys, rep, multiply(p, q, sys)), rp * rq) == 0.0, where + ": represent(pq)");
    t.expect(residual(represent(sys, rep, star(p, sys)), rp.adjoint()) == 0.0, where + ": represent(p*)");
  }
  t.note = std::to_string(zero_elements) + " zero elements drawn";
}

// ---- 8 ------------------------------------------------------------------

bool verify_compression(const cross::FiniteSystem& sys, const cross::CrossedElement& c, const cross::Compression& r,
                        double eps) {
  using namespace cross;
  constexpr double kSlack = 1e-12;  // floating SVD round-off
  for (const auto& v : r.h)
    if (!(v.imag() == 0 && v.real() >= 0 && v.real() <= 1)) return false;
  if (!(r.h[static_cast<std::size_t>(r.x0)] == Gaussian(1))) return false;
  const auto hd = CrossedElement::term(sys, sys.group().identity(), r.h);
  const auto ed = CrossedElement::term(sys, sys.group().identity(), expectation(c, sys));
  const auto heh = multiply(multiply(hd, ed, sys), hd, sys);
  const auto hch = multiply(multiply(hd, c, sys), hd, sys);
  return norm(sys, heh) >= sup_norm(expectation(c, sys)) - eps - kSlack && norm(sys, heh - hch) <= eps + kSlack;
}

void constructive_compression(Tally& t) {
  using namespace cross;
  std::mt19937 rng(808);
  int systems = 0;
  while (systems < 100) {
    const auto sys = fixture::random_system(rng);
    std::vector<int> free_ts;
    for (int s : short_support(sys))
      if (s != sys.group().identity() && sys.fixed_points(s).empty()) free_ts.push_back(s);
    std::shuffle(free_ts.begin(), free_ts.end(), rng);
    free_ts.resize(std::min<std::size_t>(free_ts.size(), 4));
    std::vector<int> support{sys.group().identity()};
    support.insert(support.end(), free_ts.begin(), free_ts.end());
    auto c = fixture::random_element(rng, sys, support);
    Coefficients bump(static_cast<std::size_t>(sys.num_states()));
    bump[0] = 1;
    c.add(sys, sys.group().identity(), bump);
    ++systems;
    for (double eps : {0.1, 0.01}) {
      try {
        const auto r = hprop_compress(sys, c, eps);
        t.expect(verify_compression(sys, c, r, eps), "inequalities fail, eps " + std::to_string(eps));
      } catch (const Error& e) {
        t.expect(false, std::string("topologically free system refused: ") + e.what());
      }
    }
  }

  // Planted: Z_m acting on G plus a point * fixed by everything, with E(c) peaked at *.
  int planted = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 5;
    const auto g = FiniteGroup::cyclic(m);
    std::vector<std::string> names;
    for (int x = 0; x < m; ++x) names.push_back(std::to_string(x));
    names.push_back("*");
    std::vector<std::vector<int>> theta(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s) {
      for (int x = 0; x < m; ++x) theta[static_cast<std::size_t>(s)].push_back(g.multiply(s, x));
      theta[static_cast<std::size_t>(s)].push_back(m);
    }
    const FiniteSystem sys(names, GroupIndex::finite(g), theta);
    std::vector<int> others;
    for (int s = 1; s < m; ++s) others.push_back(s);
    std::shuffle(others.begin(), others.end(), rng);
    others.resize(std::min<std::size_t>(others.size(), 1 + trial % 4));
    Coefficients ae(static_cast<std::size_t>(m + 1));
    for (int x = 0; x < m; ++x) ae[static_cast<std::size_t>(x)] = Gaussian::ratio(std::uniform_int_distribution<int>(0, 4)(rng), 10);
    ae[static_cast<std::size_t>(m)] = 1;
    auto c = CrossedElement::term(sys, 0, ae);
    for (int s : others) c = c + fixture::random_element(rng, sys, {s});
    std::set<int> expected_t;
    for (int s : c.support())
      if (s != 0) expected_t.insert(s);
    if (expected_t.empty()) continue;
    ++planted;
    for (double eps : {0.1, 0.01}) {
      try {
        (void)hprop_compress(sys, c, eps);
        t.expect(false, "planted fixed point not detected");
      } catch (const NoCompressionPoint& e) {
        bool ok = e.v() == std::vector<int>{m};
        std::set<int> got;
        for (const auto& o : e.obstructions()) {
          got.insert(o.t);
          ok = ok && o.fixed == sys.fixed_points(o.t) && std::find(o.fixed.begin(), o.fixed.end(), m) != o.fixed.end();
        }
        t.expect(ok && got == expected_t, "wrong witness for planted fixed point");
      }
    }
  }
  t.note = std::to_string(systems) + " free systems, " + std::to_string(planted) + " planted";
}

// ---- 9 ------------------------------------------------------------------

void partial_group_dims(Tally& t) {
  const auto z2 = FiniteGroup::cyclic(2);
  const std::vector<std::pair<FiniteGroup, long>> cases{
      {z2, 3}, {FiniteGroup::cyclic(3), 8}, {FiniteGroup::direct_product(z2, z2), 20}};
  for (const auto& [g, expected] : cases) {
    // X_G = subsets containing e; X_t = those containing t.
    long brute = 0;
    for (std::uint32_t m = 0; m < (1U << g.size()); ++m) {
      if (!((m >> g.identity()) & 1U)) continue;
      for (int s = 0; s < g.size(); ++s) brute += (m >> s) & 1U;
    }
    const long got = cross::partial_group_algebra_dim(g);
    t.expect(got == expected, "|G|=" + std::to_string(g.size()) + ": got " + std::to_string(got));
    t.expect(brute == expected, "|G|=" + std::to_string(g.size()) + ": brute force " + std::to_string(brute));
  }
}

// ---- 10 -----------------------------------------------------------------

void finite_vs_infinite(Tally& t) {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto z3 = FiniteGroup::cyclic(3);
  std::vector<std::pair<std::string, FiniteGroup>> groups;
  for (int m = 1; m <= 6; ++m) groups.emplace_back("Z" + std::to_string(m), FiniteGroup::cyclic(m));
  groups.emplace_back("Z2xZ2", FiniteGroup::direct_product(z2, z2));
  groups.emplace_back("Z2xZ3", FiniteGroup::direct_product(z2, z3));
  groups.emplace_back("S3", FiniteGroup::symmetric3());
  for (const auto& [name, g] : groups) {
    const auto x = finite_group_spectrum(g, {});
    const FinitePattern full{(1U << g.size()) - 1};
    for (int s = 0; s < g.size(); ++s) {
      if (s == g.identity()) continue;
      const auto fixed = fixed_patterns(g, s, x);
      t.expect(std::find(fixed.begin(), fixed.end(), full) != fixed.end(), name + ": G not fixed by " + g.name(s));
    }
  }

  std::mt19937 rng(1010);
  for (int rank = 1; rank <= 2; ++rank) {
    for (int trial = 0; trial < 100; ++trial) {
      ReducedWord s;
      do s = oracle::random_word(rng, rank, 3);
      while (s.is_identity());
      BasicOpenSet u{rank, {}, {}};
      std::set<ReducedWord> used{ReducedWord(rank), s.inverse()};
      for (int k = std::uniform_int_distribution<int>(0, 4)(rng); k > 0; --k) {
        const auto w = oracle::random_word(rng, rank, 3);
        if (!used.insert(w).second) continue;
        (k % 2 ? u.outside : u.inside).push_back(w);
      }
      const std::string where = "F" + std::to_string(rank) + " t=" + s.to_string();
      try {
        const auto omega = infinite_group_separation_witness(u, s);
        bool ok = omega.contains(ReducedWord(rank)) && omega.contains(s.inverse());
        for (const auto& a : u.inside) ok = ok && omega.contains(a);
        for (const auto& b : u.outside) ok = ok && !omega.contains(b);
        std::set<ReducedWord> moved;
        for (const auto& x : omega.members) moved.insert(s * x);
        t.expect(ok && moved != omega.members, where + ": witness invalid");
      } catch (const Error& e) {
        t.expect(false, where + ": " + e.what());
      }
    }
  }
  t.note = std::to_string(groups.size()) + " finite groups, 200 separation witnesses";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "condition (I) triple equivalence", 30, condition_i_equivalence},
      {2, "spectrum dictionary at n = 2, k = 2", 60, spectrum_dictionary},
      {3, "path/omega round trip", 0, round_trip},
      {4, "fixed-point characterization", 0, fixed_point_characterization},
      {5, "CK to partial representation round trip", 0, ck_round_trip},
      {6, "Nica round trip on finite corners", 0, nica_round_trip},
      {7, "crossed-product algebra axioms", 0, crossed_product_axioms},
      {8, "constructive compression", 10, constructive_compression},
      {9, "partial group algebra dimensions", 0, partial_group_dims},
      {10, "finite vs infinite topological freeness", 0, finite_vs_infinite},
  };
  int failed = 0;
  for (const auto& c : criteria) failed += run(c) ? 0 : 1;
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
