#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adhesive/graph.hpp"
#include "adhesive/limits.hpp"
#include "adhesive/search.hpp"

namespace adhesive {

/// A span L <-a- K -b-> R. Operations that need a pushout complement
/// require `a` to be mono and check it themselves.
class Rule {
 public:
  Rule(Morphism a, Morphism b) : a_(std::move(a)), b_(std::move(b)) {
    if (!(a_.dom() == b_.dom())) throw Error("rule: a and b do not share the interface K");
  }

  static Rule identity(const Graph& g) { return Rule(Morphism::identity(g), Morphism::identity(g)); }

  const Graph& L() const { return a_.cod(); }
  const Graph& K() const { return a_.dom(); }
  const Graph& R() const { return b_.cod(); }
  const Morphism& a() const { return a_; }
  const Morphism& b() const { return b_; }

 private:
  Morphism a_;
  Morphism b_;
};

/// Two squares sharing the arrow j:
///
///     L <--a-- K --b--> R
///     |m       |j       |n
///     v        v        v
///     X <--c-- Y --d--> Z
struct DoubleSquare {
  Rule rule;
  Morphism m;
  Morphism j;
  Morphism n;
  Morphism c;
  Morphism d;

  const Graph& X() const { return m.cod(); }
  const Graph& Y() const { return j.cod(); }
  const Graph& Z() const { return n.cod(); }

  Square left_square() const { return {rule.a(), j, m, c}; }
  Square right_square() const { return {rule.b(), j, n, d}; }

  std::vector<std::string> violations() const {
    std::vector<std::string> errors;
    if (!(m.dom() == rule.L())) errors.push_back("m does not start at L");
    if (!(j.dom() == rule.K())) errors.push_back("j does not start at K");
    if (!(n.dom() == rule.R())) errors.push_back("n does not start at R");
    if (!(c.dom() == Y()) || !(c.cod() == X())) errors.push_back("c is not a morphism Y -> X");
    if (!(d.dom() == Y()) || !(d.cod() == Z())) errors.push_back("d is not a morphism Y -> Z");
    if (!errors.empty()) return errors;
    if (!commutes(left_square())) errors.push_back("left square does not commute");
    if (!commutes(right_square())) errors.push_back("right square does not commute");
    return errors;
  }
};

/// Reasons why `ds` is not a DPO diagram; empty iff both squares are pushouts.
inline std::vector<std::string> dpo_violations(const DoubleSquare& ds) {
  auto errors = ds.violations();
  if (!errors.empty()) return errors;
  if (!is_pushout(ds.left_square())) errors.push_back("left square not a pushout");
  if (!is_pushout(ds.right_square())) errors.push_back("right square not a pushout");
  return errors;
}

inline bool is_dpo(const DoubleSquare& ds) { return dpo_violations(ds).empty(); }

struct GluingReport {
  bool dangling_ok = true;
  bool identification_ok = true;
  /// Edges of the host that would be left dangling.
  std::vector<std::string> dangling;
  /// Pairs of distinct L items identified by the match although one of
  /// them is deleted.
  std::vector<std::string> identified;

  bool ok() const { return dangling_ok && identification_ok; }
  std::string describe() const {
    std::vector<std::string> parts;
    if (!dangling_ok) parts.push_back("dangling condition violated by " + join_lines(dangling, ", "));
    if (!identification_ok) parts.push_back("identification condition violated by " + join_lines(identified, ", "));
    return parts.empty() ? "ok" : join_lines(parts);
  }
};

namespace detail {
inline void require_mono_interface(const Rule& r, const char* who) {
  if (!is_mono(r.a())) throw Error(std::string(who) + ": the rule's left leg a: K -> L is not mono");
}

// Items of L outside the image of a.
inline Subgraph deleted_part(const Rule& r) {
  auto kept = image(r.a());
  Subgraph del = Subgraph::none(r.L());
  for (std::size_t n = 0; n < del.nodes.size(); ++n) del.nodes[n] = !kept.nodes[n];
  for (std::size_t e = 0; e < del.edges.size(); ++e) del.edges[e] = !kept.edges[e];
  return del;
}
}  // namespace detail

inline GluingReport gluing_check(const Rule& rule, const Morphism& m) {
  detail::require_mono_interface(rule, "gluing_check");
  if (!(m.dom() == rule.L())) throw Error("gluing_check: match does not start at L");
  const Graph& l = rule.L();
  const Graph& x = m.cod();
  auto del = detail::deleted_part(rule);
  GluingReport r;

  std::vector<bool> deleted_image(x.node_count(), false);
  for (std::size_t n = 0; n < l.node_count(); ++n)
    if (del.nodes[n]) deleted_image[m.node(n)] = true;
  auto matched = image(m);
  for (std::size_t e = 0; e < x.edge_count(); ++e) {
    if (matched.edges[e]) continue;
    if (deleted_image[x.src(e)] || deleted_image[x.tgt(e)]) {
      r.dangling_ok = false;
      r.dangling.push_back(x.edge_id(e));
    }
  }

  for (std::size_t n = 0; n < l.node_count(); ++n) {
    if (!del.nodes[n]) continue;
    for (std::size_t o = 0; o < l.node_count(); ++o)
      if (o != n && m.node(o) == m.node(n) && (o > n || !del.nodes[o])) {
        r.identification_ok = false;
        r.identified.push_back(l.node_id(std::min(n, o)) + "=" + l.node_id(std::max(n, o)));
      }
  }
  for (std::size_t e = 0; e < l.edge_count(); ++e) {
    if (!del.edges[e]) continue;
    for (std::size_t o = 0; o < l.edge_count(); ++o)
      if (o != e && m.edge(o) == m.edge(e) && (o > e || !del.edges[o])) {
        r.identification_ok = false;
        r.identified.push_back(l.edge_id(std::min(e, o)) + "=" + l.edge_id(std::max(e, o)));
      }
  }
  return r;
}

struct Match {
  Morphism m;
  GluingReport gluing;
};

/// All morphisms L -> x in canonical order, each with its gluing report.
inline std::vector<Match> find_matches(const Rule& rule, const Graph& x, bool mono_only = false) {
  detail::require_mono_interface(rule, "find_matches");
  std::vector<Match> out;
  for (auto& m : enumerate_morphisms(rule.L(), x, mono_only)) {
    auto g = gluing_check(rule, m);
    out.push_back({std::move(m), std::move(g)});
  }
  return out;
}

struct PushoutComplement {
  Morphism j;  // K -> Y
  Morphism c;  // Y -> X
  const Graph& Y() const { return j.cod(); }
};

/// Y = X minus the image of L \ a(K), with j and c induced. nullopt when the
/// gluing condition fails.
inline std::optional<PushoutComplement> pushout_complement(const Morphism& a, const Morphism& m) {
  Rule r(a, a);
  if (!gluing_check(r, m).ok()) return std::nullopt;
  auto del = detail::deleted_part(r);
  Subgraph keep = Subgraph::all(m.cod());
  for (std::size_t n = 0; n < del.nodes.size(); ++n)
    if (del.nodes[n]) keep.nodes[m.node(n)] = false;
  for (std::size_t e = 0; e < del.edges.size(); ++e)
    if (del.edges[e]) keep.edges[m.edge(e)] = false;
  Graph y = extract(m.cod(), keep);
  auto c = Morphism::inclusion(y, m.cod());
  auto j = corestrict(compose(a, m), y);
  return PushoutComplement{std::move(j), std::move(c)};
}

/// One DPO step of `rule` at match m. Items created by R keep their R ids
/// under the prefix "rhs:".
inline DoubleSquare apply_rule(const Rule& rule, const Morphism& m) {
  detail::require_mono_interface(rule, "apply_rule");
  auto report = gluing_check(rule, m);
  if (!report.ok()) throw Error("gluing condition violated: " + report.describe());
  auto pc = pushout_complement(rule.a(), m);
  auto right = pushout({pc->j, rule.b()}, "rhs:");
  return {rule, m, pc->j, right.right, pc->c, right.left};
}

struct Lifting {
  DoubleSquare square;
  Morphism psiY;
  Morphism psiZ;
};

/// Completes a cube over `ds` whose top carries `primed` at the match
/// m_primed: L' -> X'. The given lateral faces over a, b and m must be
/// pullbacks; the remaining faces are constructed and verified.
inline Lifting dpo_lifting(const DoubleSquare& ds, const Morphism& psiX, const Rule& primed, const Morphism& psiL,
                           const Morphism& psiK, const Morphism& psiR, const Morphism& m_primed) {
  const auto& a = ds.rule.a();
  const auto& b = ds.rule.b();
  if (!is_mono(a)) throw Error("dpo_lifting: a is not mono");
  if (!is_mono(ds.m) && !is_mono(b)) throw Error("dpo_lifting: neither m nor b is mono");
  auto bad = dpo_violations(ds);
  if (!bad.empty()) throw Error("dpo_lifting: base is not a DPO diagram: " + join_lines(bad));
  if (!(m_primed.dom() == primed.L()) || !(m_primed.cod() == psiX.dom()))
    throw Error("dpo_lifting: primed match does not run from L' to X'");
  if (!is_pullback({m_primed, psiL, psiX, ds.m})) throw Error("dpo_lifting: face over m is not a pullback");
  if (!is_pullback({primed.a(), psiK, psiL, a})) throw Error("dpo_lifting: face over a is not a pullback");
  if (!is_pullback({primed.b(), psiK, psiR, b})) throw Error("dpo_lifting: face over b is not a pullback");

  auto ypb = pullback(psiX, ds.c);
  const Morphism& c1 = ypb.left;
  const Morphism& psiY = ypb.right;
  auto j1 = induced_into_pullback(ypb, compose(primed.a(), m_primed), compose(psiK, ds.j));
  if (!j1) throw InvariantViolation("dpo_lifting: K' does not factor through Y'");
  if (!is_pushout({primed.a(), *j1, m_primed, c1}))
    throw InvariantViolation("dpo_lifting: lifted left square is not a pushout");

  auto zpo = pushout({*j1, primed.b()}, "rhs:");
  auto psiZ = induced_from_pushout(zpo, compose(psiY, ds.d), compose(psiR, ds.n));
  if (!psiZ) throw InvariantViolation("dpo_lifting: no mediating morphism Z' -> Z");
  DoubleSquare top{primed, m_primed, *j1, zpo.right, c1, zpo.left};
  if (!is_pullback({*j1, psiK, psiY, ds.j})) throw InvariantViolation("dpo_lifting: face over j is not a pullback");
  if (!is_pullback({zpo.left, psiY, *psiZ, ds.d}))
    throw InvariantViolation("dpo_lifting: face over d is not a pullback");
  if (!is_pullback({zpo.right, psiR, *psiZ, ds.n}))
    throw InvariantViolation("dpo_lifting: face over n is not a pullback");
  return {std::move(top), psiY, std::move(*psiZ)};
}

/// Isomorphisms on all six corners of two double squares commuting with
/// all seven morphisms.
inline std::optional<std::vector<Morphism>> find_double_square_iso(const DoubleSquare& p, const DoubleSquare& q) {
  IsoSystem sys;
  auto X = sys.add_corner(p.X(), q.X());
  auto L = sys.add_corner(p.rule.L(), q.rule.L());
  auto Y = sys.add_corner(p.Y(), q.Y());
  auto K = sys.add_corner(p.rule.K(), q.rule.K());
  auto Z = sys.add_corner(p.Z(), q.Z());
  auto R = sys.add_corner(p.rule.R(), q.rule.R());
  sys.add_arrow(L, X, p.m, q.m);
  sys.add_arrow(Y, X, p.c, q.c);
  sys.add_arrow(K, L, p.rule.a(), q.rule.a());
  sys.add_arrow(K, Y, p.j, q.j);
  sys.add_arrow(Y, Z, p.d, q.d);
  sys.add_arrow(K, R, p.rule.b(), q.rule.b());
  sys.add_arrow(R, Z, p.n, q.n);
  return solve_isos(sys);
}

}  // namespace adhesive
