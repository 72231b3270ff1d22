#pragma once

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adhesive/dpo.hpp"
#include "adhesive/lattice.hpp"
#include "adhesive/limits.hpp"

namespace adhesive {

enum class Corner { L, K, R, X, Y, Z };
inline constexpr std::array<Corner, 6> kCorners{Corner::L, Corner::K, Corner::R, Corner::X, Corner::Y, Corner::Z};

inline const char* corner_name(Corner c) {
  static const char* names[] = {"L", "K", "R", "X", "Y", "Z"};
  return names[static_cast<int>(c)];
}

/// The seven morphism families of a decomposed double square, named after
/// the per-object morphism they collect: alpha = a, beta = b, mu = m,
/// iota = j, nu = n, gamma = c, delta = d.
enum class Family { alpha, beta, mu, iota, nu, gamma, delta };
inline constexpr std::array<Family, 7> kFamilies{Family::alpha, Family::beta,  Family::mu,   Family::iota,
                                                 Family::nu,    Family::gamma, Family::delta};

inline const char* family_name(Family f) {
  static const char* names[] = {"alpha", "beta", "mu", "iota", "nu", "gamma", "delta"};
  return names[static_cast<int>(f)];
}

inline std::pair<Corner, Corner> family_ends(Family f) {
  switch (f) {
    case Family::alpha: return {Corner::K, Corner::L};
    case Family::beta: return {Corner::K, Corner::R};
    case Family::mu: return {Corner::L, Corner::X};
    case Family::iota: return {Corner::K, Corner::Y};
    case Family::nu: return {Corner::R, Corner::Z};
    case Family::gamma: return {Corner::Y, Corner::X};
    case Family::delta: return {Corner::Y, Corner::Z};
  }
  throw Error("unknown family");
}

inline const Graph& corner_of(const DoubleSquare& ds, Corner c) {
  switch (c) {
    case Corner::L: return ds.rule.L();
    case Corner::K: return ds.rule.K();
    case Corner::R: return ds.rule.R();
    case Corner::X: return ds.X();
    case Corner::Y: return ds.Y();
    case Corner::Z: return ds.Z();
  }
  throw Error("unknown corner");
}

inline const Morphism& family_of(const DoubleSquare& ds, Family f) {
  switch (f) {
    case Family::alpha: return ds.rule.a();
    case Family::beta: return ds.rule.b();
    case Family::mu: return ds.m;
    case Family::iota: return ds.j;
    case Family::nu: return ds.n;
    case Family::gamma: return ds.c;
    case Family::delta: return ds.d;
  }
  throw Error("unknown family");
}

/// The six morphisms by which one local double square maps into another
/// along a shape arrow.
struct SquareTransport {
  std::array<std::optional<Morphism>, 6> at;
  const Morphism& operator[](Corner c) const { return *at[static_cast<int>(c)]; }
  void set(Corner c, Morphism f) { at[static_cast<int>(c)] = std::move(f); }
};

/// A diagram of double squares: one local square per shape object and one
/// transport per shape arrow.
struct TransformationDecomposition {
  DiagramShape shape;
  std::vector<DoubleSquare> squares;
  std::vector<SquareTransport> transports;

  Diagram diagram(Corner c) const {
    Diagram d{shape, {}, {}};
    for (const auto& s : squares) d.objects.push_back(corner_of(s, c));
    for (const auto& t : transports) d.arrows.push_back(t[c]);
    return d;
  }

  NatTrans nat(Family f) const {
    auto [from, to] = family_ends(f);
    NatTrans t{diagram(from), diagram(to), {}};
    for (const auto& s : squares) t.components.push_back(family_of(s, f));
    return t;
  }

  /// Structural violations plus every local square that is not a DPO diagram.
  std::vector<std::string> violations() const {
    std::vector<std::string> errors;
    if (squares.size() != shape.objects.size() || transports.size() != shape.arrows.size())
      return {"decomposition does not match its shape"};
    for (std::size_t i = 0; i < squares.size(); ++i)
      for (const auto& e : dpo_violations(squares[i])) errors.push_back("object '" + shape.objects[i] + "': " + e);
    for (std::size_t e = 0; e < transports.size(); ++e)
      for (auto c : kCorners)
        if (!transports[e].at[static_cast<int>(c)])
          errors.push_back("arrow '" + shape.arrows[e].id + "' lacks its " + corner_name(c) + " transport");
    if (!errors.empty()) return errors;
    for (auto c : kCorners)
      for (const auto& v : diagram(c).violations()) errors.push_back(std::string(corner_name(c)) + " diagram: " + v);
    if (!errors.empty()) return errors;
    for (auto f : kFamilies)
      for (const auto& v : nat(f).violations()) errors.push_back(std::string(family_name(f)) + ": " + v);
    return errors;
  }
};

struct Composition {
  DoubleSquare square;
  /// Canonical colimit cocones, indexed by Corner.
  std::array<std::optional<Cocone>, 6> cocones;
};

/// Glues a decomposition back together: six canonical colimits and the
/// seven induced morphisms. The result must be a DPO diagram; failure
/// raises InvariantViolation.
inline Composition compose_global_full(const TransformationDecomposition& td) {
  auto bad = td.violations();
  if (!bad.empty()) throw Error("invalid transformation decomposition: " + join_lines(bad));
  std::array<std::optional<Cocone>, 6> col;
  for (auto c : kCorners) col[static_cast<int>(c)] = colimit(td.diagram(c));
  auto induced = [&](Family f) {
    auto [from, to] = family_ends(f);
    const auto& src = *col[static_cast<int>(from)];
    const auto& tgt = *col[static_cast<int>(to)];
    auto t = td.nat(f);
    std::vector<Morphism> legs;
    for (std::size_t i = 0; i < t.components.size(); ++i) legs.push_back(compose(t.components[i], tgt.legs[i]));
    auto u = induced_from_colimit(src, legs, tgt.apex);
    if (!u) throw InvariantViolation(std::string("compose_global: no induced morphism for ") + family_name(f));
    return *u;
  };
  DoubleSquare ds{Rule(induced(Family::alpha), induced(Family::beta)), induced(Family::mu), induced(Family::iota),
                  induced(Family::nu),  induced(Family::gamma), induced(Family::delta)};
  auto errors = dpo_violations(ds);
  if (!errors.empty()) throw InvariantViolation("compose_global: glued square is not a DPO diagram: " + join_lines(errors));
  return {std::move(ds), std::move(col)};
}

inline DoubleSquare compose_global(const TransformationDecomposition& td) { return compose_global_full(td).square; }

struct GlobalOptions {
  /// X -w-> U <-t- Z with w ∘ c = t ∘ d; defaults to the pushout of (c, d).
  std::optional<Cospan> cover;
  /// A colimit cocone with apex U; defaults to U's canonical decomposition.
  std::optional<Cocone> u_decomposition;
};

struct GlobalDecomposition {
  Cospan cover;
  Cocone u_decomposition;
  TransformationDecomposition td;
  /// Pulled-back cocones, indexed by Corner; their apexes are the corners
  /// of the original square.
  std::array<std::optional<PulledCocone>, 6> pulled;

  const Cocone& cocone(Corner c) const { return pulled[static_cast<int>(c)]->cocone; }
};

namespace detail {
// Component f_i: P_i -> Q_i of a family lifted from f: P -> Q, where P_i
// and Q_i are pullbacks of one cocone along u_P = u_Q ∘ f and u_Q.
inline std::vector<Morphism> lift_family(const Morphism& f, const PulledCocone& p, const PulledCocone& q,
                                         const char* name) {
  std::vector<Morphism> out;
  for (std::size_t i = 0; i < p.cocone.legs.size(); ++i) {
    Span span_q{q.cocone.legs[i], q.tau.components[i]};
    auto u = induced_into_pullback(span_q, compose(p.cocone.legs[i], f), p.tau.components[i]);
    if (!u) throw InvariantViolation(std::string("lifted family ") + name + " does not factor");
    out.push_back(*u);
  }
  return out;
}
}  // namespace detail

/// Pulls a colimit decomposition of the cover's apex back to every corner
/// of `ds`, giving one local DPO diagram per shape object.
inline GlobalDecomposition decompose_global(const DoubleSquare& ds, const GlobalOptions& opt = {}) {
  auto bad = dpo_violations(ds);
  if (!bad.empty()) throw Error("decompose_global: input is not a DPO diagram: " + join_lines(bad));
  Cospan cover = opt.cover ? *opt.cover : pushout({ds.c, ds.d});
  if (!(cover.left.dom() == ds.X()) || !(cover.right.dom() == ds.Z()) ||
      !(compose(ds.c, cover.left) == compose(ds.d, cover.right)))
    throw Error("decompose_global: cover does not form a commuting cospan over Y");
  const Graph& u = cover.apex();
  Cocone ud = opt.u_decomposition    ? *opt.u_decomposition
              : u.empty()            ? Cocone{Diagram{}, u, {}}
                                     : canonical_decomposition(u).cocone;
  if (!(ud.apex == u)) throw Error("decompose_global: decomposition apex is not the cover's apex");
  if (!is_colimit(ud)) throw Error("decompose_global: decomposition of U is not a colimit");

  const Morphism& w = cover.left;
  const Morphism& t = cover.right;
  GlobalDecomposition g{cover, ud, {}, {}};
  auto idx = [](Corner c) { return static_cast<int>(c); };
  g.pulled[idx(Corner::X)] = pullback_cocone(ud, w);
  g.pulled[idx(Corner::Z)] = pullback_cocone(ud, t);
  g.pulled[idx(Corner::Y)] = pullback_cocone(ud, compose(ds.c, w));
  g.pulled[idx(Corner::L)] = pullback_cocone(ud, compose(ds.m, w));
  g.pulled[idx(Corner::K)] = pullback_cocone(ud, compose(ds.j, compose(ds.c, w)));
  g.pulled[idx(Corner::R)] = pullback_cocone(ud, compose(ds.n, t));

  std::array<std::vector<Morphism>, 7> fam;
  for (auto f : kFamilies) {
    auto [from, to] = family_ends(f);
    fam[static_cast<int>(f)] =
        detail::lift_family(family_of(ds, f), *g.pulled[idx(from)], *g.pulled[idx(to)], family_name(f));
  }
  auto& td = g.td;
  td.shape = ud.diagram.shape;
  for (std::size_t i = 0; i < td.shape.objects.size(); ++i) {
    auto at = [&](Family f) { return fam[static_cast<int>(f)][i]; };
    td.squares.push_back({Rule(at(Family::alpha), at(Family::beta)), at(Family::mu), at(Family::iota),
                          at(Family::nu), at(Family::gamma), at(Family::delta)});
  }
  for (std::size_t e = 0; e < td.shape.arrows.size(); ++e) {
    SquareTransport tr;
    for (auto c : kCorners) tr.set(c, g.pulled[idx(c)]->diagram.arrows[e]);
    td.transports.push_back(std::move(tr));
  }
  auto errors = td.violations();
  if (!errors.empty()) throw InvariantViolation("decompose_global: lifted family is invalid: " + join_lines(errors));
  return g;
}

/// A host decomposition, a rule, a match, and the global step it induces.
struct DecompositionProblem {
  Cocone xi;
  Rule rule;
  Morphism m;
  DoubleSquare witness;

  const Graph& X() const { return xi.apex; }

  std::vector<std::string> violations() const {
    std::vector<std::string> errors;
    if (!is_colimit(xi)) errors.push_back("xi is not a colimit cocone");
    if (!(m.dom() == rule.L()) || !(m.cod() == xi.apex)) errors.push_back("m is not a morphism L -> X");
    if (!(witness.m == m) || !(witness.rule.a() == rule.a()) || !(witness.rule.b() == rule.b()))
      errors.push_back("witness does not use the problem's rule and match");
    for (const auto& e : dpo_violations(witness)) errors.push_back("witness: " + e);
    return errors;
  }
};

/// Builds a problem whose witness is the canonical DPO step at m.
inline DecompositionProblem make_problem(Cocone xi, const Rule& rule, const Morphism& m) {
  auto ds = apply_rule(rule, m);
  return {std::move(xi), rule, m, std::move(ds)};
}

/// A colimit decomposition rho of R together with the comparison
/// isomorphisms K'_i -> K''_i, where K' is xi pulled back along m ∘ a and
/// K'' is rho pulled back along b.
struct Accommodation {
  Cocone rho;
  std::vector<Morphism> iso;
  PulledCocone k_from_host;
  PulledCocone k_from_rhs;
};

struct AccommodationCheck {
  std::optional<Accommodation> accommodation;
  std::string rejection;
  bool ok() const { return accommodation.has_value(); }
};

inline AccommodationCheck verify_accommodation(const DecompositionProblem& p, const Cocone& rho) {
  if (!(rho.diagram.shape == p.xi.diagram.shape)) throw Error("verify_accommodation: shape mismatch");
  if (!(rho.apex == p.rule.R())) return {std::nullopt, "rho does not have apex R"};
  if (!is_colimit(rho)) return {std::nullopt, "rho is not a colimit cocone"};
  auto k1 = pullback_cocone(p.xi, compose(p.rule.a(), p.m));
  auto k2 = pullback_cocone(rho, p.rule.b());
  const auto& shape = rho.diagram.shape;
  for (std::size_t i = 0; i < shape.objects.size(); ++i) {
    IsoSystem sys;
    auto apex = sys.add_corner(p.rule.K(), p.rule.K(), Morphism::identity(p.rule.K()));
    auto obj = sys.add_corner(k1.diagram.objects[i], k2.diagram.objects[i]);
    sys.add_arrow(obj, apex, k1.cocone.legs[i], k2.cocone.legs[i]);
    if (!solve_isos(sys))
      return {std::nullopt, "object '" + shape.objects[i] + "': pullback along b is " +
                                k2.diagram.objects[i].summary() + " but pullback along m∘a is " +
                                k1.diagram.objects[i].summary()};
  }
  auto iso = find_cocone_iso(k1.cocone, k2.cocone);
  if (!iso) return {std::nullopt, "comparison isomorphisms are not natural in the shape"};
  return {Accommodation{rho, std::move(*iso), std::move(k1), std::move(k2)}, ""};
}

struct SearchBudget {
  /// Candidate families that may be examined.
  std::size_t max_candidates = 100000;
};

enum class SearchStatus { found, exhausted, budget_exceeded };

inline const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

struct AccommodationSearch {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<Accommodation> accommodation;
  std::size_t examined = 0;
};

/// Cocone of subgraph inclusions into `host`, one subgraph per shape object.
inline Cocone subgraph_cocone(const DiagramShape& shape, const Graph& host, const std::vector<Subgraph>& parts) {
  Cocone c{{shape, {}, {}}, host, {}};
  for (const auto& s : parts) {
    c.diagram.objects.push_back(extract(host, s));
    c.legs.push_back(Morphism::inclusion(c.diagram.objects.back(), host));
  }
  for (std::size_t e = 0; e < shape.arrows.size(); ++e)
    c.diagram.arrows.push_back(
        Morphism::inclusion(c.diagram.objects[shape.src(e)], c.diagram.objects[shape.tgt(e)]));
  return c;
}

/// Bounded search for an accommodation among families of subgraphs of R.
/// Object i ranges over the b-image of K'_i united with any set of R's
/// irreducible components; families are tried by increasing total size.
inline AccommodationSearch search_accommodation(const DecompositionProblem& p, SearchBudget budget = {}) {
  const Graph& r = p.rule.R();
  const auto& shape = p.xi.diagram.shape;
  const std::size_t k = shape.objects.size();
  auto k1 = pullback_cocone(p.xi, compose(p.rule.a(), p.m));
  auto comps = irreducible_components(r);
  if (comps.size() > 20) throw Error("search_accommodation: R has too many irreducible components");

  std::vector<std::vector<Subgraph>> cands(k);
  for (std::size_t i = 0; i < k; ++i) {
    Subgraph forced = image(compose(k1.cocone.legs[i], p.rule.b()));
    std::set<Subgraph> seen;
    for (std::size_t mask = 0; mask < (std::size_t{1} << comps.size()); ++mask) {
      Subgraph s = forced;
      for (std::size_t c = 0; c < comps.size(); ++c)
        if (mask >> c & 1) s = s.united(comps[c].sub);
      if (seen.insert(s).second) cands[i].push_back(s);
    }
    std::sort(cands[i].begin(), cands[i].end(), [](const Subgraph& a, const Subgraph& b) {
      auto sa = a.size(), sb = b.size();
      return sa != sb ? sa < sb : a < b;
    });
  }
  std::size_t max_total = 0;
  std::vector<std::size_t> min_rest(k + 1, 0), max_rest(k + 1, 0);
  for (std::size_t i = k; i-- > 0;) {
    min_rest[i] = min_rest[i + 1] + cands[i].front().size();
    max_rest[i] = max_rest[i + 1] + cands[i].back().size();
  }
  max_total = max_rest[0];

  AccommodationSearch result;
  std::vector<Subgraph> family(k);
  bool stop = false;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t i, std::size_t remaining) {
    if (stop) return;
    if (i == k) {
      if (remaining != 0) return;
      if (result.examined >= budget.max_candidates) {
        result.status = SearchStatus::budget_exceeded;
        stop = true;
        return;
      }
      ++result.examined;
      Subgraph all = Subgraph::none(r);
      for (const auto& s : family) all = all.united(s);
      if (all != Subgraph::all(r)) return;
      auto rho = subgraph_cocone(shape, r, family);
      if (!is_colimit(rho)) return;
      auto check = verify_accommodation(p, rho);
      if (check.ok()) {
        result.status = SearchStatus::found;
        result.accommodation = std::move(check.accommodation);
        stop = true;
      }
      return;
    }
    for (const auto& s : cands[i]) {
      if (stop) return;
      if (s.size() > remaining) break;
      if (remaining - s.size() < min_rest[i + 1] || remaining - s.size() > max_rest[i + 1]) continue;
      family[i] = s;
      // Arrows whose endpoints are both chosen must be inclusions.
      bool fits = true;
      for (std::size_t e = 0; e < shape.arrows.size() && fits; ++e) {
        auto a = shape.src(e), b = shape.tgt(e);
        if (a <= i && b <= i && !family[a].subset_of(family[b])) fits = false;
      }
      if (fits) dfs(i + 1, remaining - s.size());
    }
  };
  if (k == 0) {
    if (r.empty()) {
      auto check = verify_accommodation(p, subgraph_cocone(shape, r, {}));
      if (check.ok()) return {SearchStatus::found, std::move(check.accommodation), 1};
    }
    return {SearchStatus::exhausted, std::nullopt, 1};
  }
  for (std::size_t total = min_rest[0]; total <= max_total && !stop; ++total) dfs(0, total);
  return result;
}

/// A decomposed transformation solving a DecompositionProblem, with the
/// colimit cocones exhibiting each corner, indexed by Corner.
struct Solution {
  TransformationDecomposition full;
  std::array<std::optional<Cocone>, 6> cocones;

  const Cocone& cocone(Corner c) const { return *cocones[static_cast<int>(c)]; }
  NatTrans mu() const { return full.nat(Family::mu); }
  std::vector<Rule> local_rules() const {
    std::vector<Rule> out;
    for (const auto& s : full.squares) out.push_back(s.rule);
    return out;
  }
};

/// Local solution of an accommodated problem: the host decomposition is
/// pulled back to L and K, the accommodation supplies the decomposition of
/// R, and each object is completed by DPO lifting.
inline Solution solve_accommodated(const DecompositionProblem& p, const Accommodation& acc) {
  const auto& a = p.rule.a();
  const auto& b = p.rule.b();
  if (!is_mono(a)) throw Error("solve_accommodated: a is not mono");
  if (!is_mono(p.m) && !is_mono(b)) throw Error("solve_accommodated: neither m nor b is mono");
  auto problem_errors = p.violations();
  if (!problem_errors.empty()) throw Error("solve_accommodated: invalid problem: " + join_lines(problem_errors));
  auto check = verify_accommodation(p, acc.rho);
  if (!check.ok()) throw Error("solve_accommodated: accommodation rejected: " + check.rejection);
  const Accommodation& ac = *check.accommodation;

  const auto& shape = p.xi.diagram.shape;
  auto lpull = pullback_cocone(p.xi, p.m);
  auto kpull = pullback_cocone(lpull.cocone, a);
  const auto& rho = ac.rho;

  Solution s;
  auto& td = s.full;
  td.shape = shape;
  std::vector<Lifting> lifts;
  for (std::size_t i = 0; i < shape.objects.size(); ++i) {
    const Morphism& kappa = kpull.cocone.legs[i];
    const Morphism& alpha = kpull.tau.components[i];
    const Morphism& lambda = lpull.cocone.legs[i];
    const Morphism& mu = lpull.tau.components[i];
    Span kh{ac.k_from_host.cocone.legs[i], ac.k_from_host.tau.components[i]};
    auto to_kh = induced_into_pullback(kh, kappa, compose(alpha, mu));
    if (!to_kh) throw InvariantViolation("solve_accommodated: K_i does not map to the host comparison object");
    Morphism beta = compose(compose(*to_kh, ac.iso[i]), ac.k_from_rhs.tau.components[i]);
    lifts.push_back(dpo_lifting(p.witness, p.xi.legs[i], Rule(alpha, beta), lambda, kappa, rho.legs[i], mu));
    td.squares.push_back(lifts.back().square);
  }
  for (std::size_t e = 0; e < shape.arrows.size(); ++e) {
    auto i = shape.src(e), j = shape.tgt(e);
    SquareTransport tr;
    tr.set(Corner::L, lpull.diagram.arrows[e]);
    tr.set(Corner::K, kpull.diagram.arrows[e]);
    tr.set(Corner::R, rho.diagram.arrows[e]);
    tr.set(Corner::X, p.xi.diagram.arrows[e]);
    Span yj{td.squares[j].c, lifts[j].psiY};
    auto ye = induced_into_pullback(yj, compose(td.squares[i].c, p.xi.diagram.arrows[e]), lifts[i].psiY);
    if (!ye) throw InvariantViolation("solve_accommodated: no Y transport along '" + shape.arrows[e].id + "'");
    Cospan zi{td.squares[i].d, td.squares[i].n};
    auto ze = induced_from_pushout(zi, compose(*ye, td.squares[j].d), compose(rho.diagram.arrows[e], td.squares[j].n));
    if (!ze) throw InvariantViolation("solve_accommodated: no Z transport along '" + shape.arrows[e].id + "'");
    tr.set(Corner::Y, *ye);
    tr.set(Corner::Z, *ze);
    td.transports.push_back(std::move(tr));
  }
  auto errors = td.violations();
  if (!errors.empty()) throw InvariantViolation("solve_accommodated: assembled family is invalid: " + join_lines(errors));

  auto idx = [](Corner c) { return static_cast<int>(c); };
  s.cocones[idx(Corner::L)] = lpull.cocone;
  s.cocones[idx(Corner::K)] = kpull.cocone;
  s.cocones[idx(Corner::R)] = rho;
  s.cocones[idx(Corner::X)] = p.xi;
  Cocone yc{td.diagram(Corner::Y), p.witness.Y(), {}};
  Cocone zc{td.diagram(Corner::Z), p.witness.Z(), {}};
  for (const auto& l : lifts) {
    yc.legs.push_back(l.psiY);
    zc.legs.push_back(l.psiZ);
  }
  s.cocones[idx(Corner::Y)] = std::move(yc);
  s.cocones[idx(Corner::Z)] = std::move(zc);
  return s;
}

/// Everything that keeps `s` from solving `p`; empty means verified.
inline std::vector<std::string> verify_solution(const DecompositionProblem& p, const Solution& s) {
  std::vector<std::string> errors = s.full.violations();
  if (!errors.empty()) return errors;
  const auto& td = s.full;
  if (!(td.shape == p.xi.diagram.shape)) return {"solution shape differs from the problem's"};
  auto xd = td.diagram(Corner::X);
  if (!(xd.objects == p.xi.diagram.objects) || !(xd.arrows == p.xi.diagram.arrows))
    errors.push_back("X diagram is not the problem's decomposition");
  for (auto c : kCorners) {
    if (!s.cocones[static_cast<int>(c)]) {
      errors.push_back(std::string("missing cocone for ") + corner_name(c));
      continue;
    }
    const auto& co = s.cocone(c);
    auto d = td.diagram(c);
    if (!(co.diagram.objects == d.objects) || !(co.diagram.arrows == d.arrows))
      errors.push_back(std::string("cocone for ") + corner_name(c) + " is over a different diagram");
    else if (!is_colimit(co))
      errors.push_back(std::string("cocone for ") + corner_name(c) + " is not a colimit");
  }
  if (!errors.empty()) return errors;
  if (!(s.cocone(Corner::X).apex == p.X()) || !(s.cocone(Corner::X).legs == p.xi.legs))
    return {"cocone for X is not the problem's decomposition"};

  auto induced = [&](Family f) -> std::optional<Morphism> {
    auto [from, to] = family_ends(f);
    const auto& src = s.cocone(from);
    const auto& tgt = s.cocone(to);
    auto t = td.nat(f);
    std::vector<Morphism> legs;
    for (std::size_t i = 0; i < t.components.size(); ++i) legs.push_back(compose(t.components[i], tgt.legs[i]));
    return induced_from_colimit(src, legs, tgt.apex);
  };
  auto m1 = induced(Family::mu);
  auto a1 = induced(Family::alpha);
  auto b1 = induced(Family::beta);
  if (!m1 || !a1 || !b1) return {"a family does not induce a morphism between the colimits"};
  IsoSystem sys;
  auto X = sys.add_corner(p.X(), p.X(), Morphism::identity(p.X()));
  auto L = sys.add_corner(s.cocone(Corner::L).apex, p.rule.L());
  auto K = sys.add_corner(s.cocone(Corner::K).apex, p.rule.K());
  auto R = sys.add_corner(s.cocone(Corner::R).apex, p.rule.R());
  sys.add_arrow(L, X, *m1, p.m);
  sys.add_arrow(K, L, *a1, p.rule.a());
  sys.add_arrow(K, R, *b1, p.rule.b());
  if (!solve_isos(sys)) {
    // Narrow the report down to the first equation that fails on its own.
    IsoSystem one;
    auto x1 = one.add_corner(p.X(), p.X(), Morphism::identity(p.X()));
    auto l1 = one.add_corner(s.cocone(Corner::L).apex, p.rule.L());
    one.add_arrow(l1, x1, *m1, p.m);
    if (!solve_isos(one)) errors.push_back("colim mu differs from m");
    else errors.push_back("colim alpha or colim beta differs from a or b");
  }
  return errors;
}

/// Reads a global decomposition as a problem over the pulled-back host
/// decomposition together with its solution.
inline std::pair<DecompositionProblem, Solution> as_solution(const DoubleSquare& ds, const GlobalDecomposition& g) {
  DecompositionProblem p{g.cocone(Corner::X), ds.rule, ds.m, ds};
  Solution s{g.td, {}};
  for (auto c : kCorners) s.cocones[static_cast<int>(c)] = g.cocone(c);
  return {std::move(p), std::move(s)};
}

}  // namespace adhesive
