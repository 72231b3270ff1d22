#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adhesive/dpo.hpp"
#include "adhesive/graph.hpp"
#include "adhesive/limits.hpp"
#include "adhesive/search.hpp"

// Brute-force deciders for universal properties. They only enumerate
// morphisms and candidate cones/cocones and share no construction code with
// the comparison-iso verifiers, so the two can be checked against each other.
namespace adhesive::oracle {

struct SizeBudget {
  /// Largest apex (or, for pullbacks, corner) the oracles accept.
  std::size_t max_nodes = 8;
  std::size_t max_edges = 8;
  /// Competitor cones/cocones (or complement candidates) examined.
  std::size_t max_candidates = 200000;
};

enum class Verdict { yes, no, inconclusive };

inline const char* verdict_name(Verdict v) {
  return v == Verdict::yes ? "yes" : v == Verdict::no ? "no" : "inconclusive";
}

inline Verdict from_bool(bool b) { return b ? Verdict::yes : Verdict::no; }

namespace detail {

struct OverBudget {};

// Counts morphisms u: a -> b with u(x) = want(x) wherever want is set,
// stopping at 2.
inline std::size_t count_constrained(const Graph& a, const Graph& b, const std::vector<std::size_t>& want_node,
                                     const std::vector<std::size_t>& want_edge) {
  SearchOptions opt;
  opt.node_allowed = [&](std::size_t x, std::size_t y) { return want_node[x] == SIZE_MAX || want_node[x] == y; };
  opt.edge_allowed = [&](std::size_t x, std::size_t y) { return want_edge[x] == SIZE_MAX || want_edge[x] == y; };
  return count_morphisms(a, b, opt, 2);
}

// Mediators u: apex -> q.cod with u ∘ legs[i] = q[i] for all i, up to 2.
// Returns 0 when the requirements clash.
inline std::size_t count_mediators(const Graph& apex, const std::vector<Morphism>& legs,
                                   const std::vector<Morphism>& q, const Graph& target) {
  std::vector<std::size_t> wn(apex.node_count(), SIZE_MAX), we(apex.edge_count(), SIZE_MAX);
  for (std::size_t i = 0; i < legs.size(); ++i) {
    for (std::size_t x = 0; x < legs[i].node_map().size(); ++x) {
      auto& w = wn[legs[i].node(x)];
      if (w != SIZE_MAX && w != q[i].node(x)) return 0;
      w = q[i].node(x);
    }
    for (std::size_t x = 0; x < legs[i].edge_map().size(); ++x) {
      auto& w = we[legs[i].edge(x)];
      if (w != SIZE_MAX && w != q[i].edge(x)) return 0;
      w = q[i].edge(x);
    }
  }
  return count_constrained(apex, target, wn, we);
}

// Restricted-growth enumeration of the partitions of {0..n-1} in which
// `same(x, y)` pairs share a block and `may_join(x, y)` holds within blocks.
inline void for_each_partition(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& same,
                               const std::function<bool(std::size_t, std::size_t)>& may_join,
                               const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> block(n, 0);
  std::vector<std::vector<std::size_t>> required(n);
  for (auto [x, y] : same) {
    if (x < y) required[y].push_back(x);
    else if (y < x) required[x].push_back(y);
  }
  bool stop = false;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t x, std::size_t blocks) {
    if (stop) return;
    if (x == n) {
      if (!visit(block)) stop = true;
      return;
    }
    for (std::size_t b = 0; b <= blocks && !stop; ++b) {
      bool ok = true;
      for (auto y : required[x])
        if (block[y] != b) ok = false;
      for (std::size_t y = 0; y < x && ok; ++y)
        if (block[y] == b && !may_join(x, y)) ok = false;
      if (!ok) continue;
      block[x] = b;
      go(x + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  go(0, 0);
}

}  // namespace detail

/// Decides whether `c` is a colimit by testing it against competitor
/// cocones: every quotient of the coproduct of the base objects (those
/// reaching no other object, plus those that reach no sink) that carries a
/// cocone, and the candidate cocone itself. Each needs exactly one mediator.
inline Verdict brute_is_colimit(const Cocone& c, SizeBudget budget = {}) {
  if (!c.violations().empty()) return Verdict::no;
  const auto& d = c.diagram;
  const auto& shape = d.shape;
  const std::size_t k = d.objects.size();

  // Route every object to a sink along some path, if it has one.
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t e = 0; e < shape.arrows.size(); ++e) out[shape.src(e)].push_back(e);
  std::vector<std::optional<std::size_t>> via(k);
  std::vector<bool> base(k, false), reaches(k, false);
  for (std::size_t i = 0; i < k; ++i)
    if (out[i].empty()) base[i] = reaches[i] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (reaches[i]) continue;
      for (auto e : out[i])
        if (reaches[shape.tgt(e)]) {
          reaches[i] = true;
          via[i] = e;
          changed = true;
          break;
        }
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (!reaches[i]) base[i] = true;

  // The coproduct S of the base objects, and for each object i the map
  // sigma_i: D_i -> S through its route.
  std::vector<std::size_t> noff(k, 0), eoff(k, 0);
  std::size_t sn = 0, se = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (base[i]) {
      noff[i] = sn;
      eoff[i] = se;
      sn += d.objects[i].node_count();
      se += d.objects[i].edge_count();
    }
  if (c.apex.node_count() > budget.max_nodes || c.apex.edge_count() > budget.max_edges)
    return Verdict::inconclusive;
  std::vector<std::string> s_node_label(sn), s_edge_label(se);
  std::vector<std::size_t> s_src(se), s_tgt(se);
  for (std::size_t i = 0; i < k; ++i)
    if (base[i]) {
      const auto& g = d.objects[i];
      for (std::size_t n = 0; n < g.node_count(); ++n) s_node_label[noff[i] + n] = g.node_label(n);
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        s_edge_label[eoff[i] + e] = g.edge_label(e);
        s_src[eoff[i] + e] = noff[i] + g.src(e);
        s_tgt[eoff[i] + e] = noff[i] + g.tgt(e);
      }
    }
  std::vector<std::vector<std::size_t>> sig_n(k), sig_e(k);
  std::function<void(std::size_t)> route = [&](std::size_t i) {
    if (!sig_n[i].empty() || !sig_e[i].empty() || base[i]) return;
    auto e = *via[i];
    auto j = shape.tgt(e);
    if (!base[j]) route(j);
    const auto& f = d.arrows[e];
    for (std::size_t n = 0; n < f.node_map().size(); ++n)
      sig_n[i].push_back(base[j] ? noff[j] + f.node(n) : sig_n[j][f.node(n)]);
    for (std::size_t x = 0; x < f.edge_map().size(); ++x)
      sig_e[i].push_back(base[j] ? eoff[j] + f.edge(x) : sig_e[j][f.edge(x)]);
  };
  for (std::size_t i = 0; i < k; ++i) {
    if (base[i]) {
      for (std::size_t n = 0; n < d.objects[i].node_count(); ++n) sig_n[i].push_back(noff[i] + n);
      for (std::size_t x = 0; x < d.objects[i].edge_count(); ++x) sig_e[i].push_back(eoff[i] + x);
    } else {
      route(i);
    }
  }
  // A quotient of S carries a cocone iff it identifies sigma_i(z) with
  // sigma_j(D(e)(z)) for every arrow e: i -> j.
  std::vector<std::pair<std::size_t, std::size_t>> same_n, same_e;
  for (std::size_t e = 0; e < shape.arrows.size(); ++e) {
    auto i = shape.src(e), j = shape.tgt(e);
    const auto& f = d.arrows[e];
    for (std::size_t z = 0; z < f.node_map().size(); ++z) same_n.push_back({sig_n[i][z], sig_n[j][f.node(z)]});
    for (std::size_t z = 0; z < f.edge_map().size(); ++z) same_e.push_back({sig_e[i][z], sig_e[j][f.edge(z)]});
  }

  std::size_t examined = 0;
  Verdict verdict = Verdict::yes;
  try {
    // The candidate against itself: only the identity may mediate.
    ++examined;
    if (detail::count_mediators(c.apex, c.legs, c.legs, c.apex) != 1) return Verdict::no;

    detail::for_each_partition(
        sn, same_n, [&](std::size_t x, std::size_t y) { return s_node_label[x] == s_node_label[y]; },
        [&](const std::vector<std::size_t>& nb) {
          detail::for_each_partition(
              se, same_e,
              [&](std::size_t x, std::size_t y) {
                return s_edge_label[x] == s_edge_label[y] && nb[s_src[x]] == nb[s_src[y]] &&
                       nb[s_tgt[x]] == nb[s_tgt[y]];
              },
              [&](const std::vector<std::size_t>& eb) {
                if (++examined > budget.max_candidates) throw detail::OverBudget{};
                GraphData q;
                std::size_t qn = sn ? *std::max_element(nb.begin(), nb.end()) + 1 : 0;
                std::size_t qe = se ? *std::max_element(eb.begin(), eb.end()) + 1 : 0;
                q.nodes.resize(qn);
                q.edges.resize(qe);
                // Zero-padded ids keep block order equal to index order.
                auto pad = [](std::size_t v) {
                  auto s = std::to_string(v);
                  return std::string(6 - std::min<std::size_t>(6, s.size()), '0') + s;
                };
                for (std::size_t x = 0; x < sn; ++x) q.nodes[nb[x]] = {"q" + pad(nb[x]), s_node_label[x]};
                for (std::size_t x = 0; x < se; ++x)
                  q.edges[eb[x]] = {"f" + pad(eb[x]), "q" + pad(nb[s_src[x]]), "q" + pad(nb[s_tgt[x]]), s_edge_label[x]};
                Graph qg(std::move(q));
                std::vector<Morphism> legs;
                for (std::size_t i = 0; i < k; ++i) {
                  std::vector<std::size_t> ln, le;
                  for (auto x : sig_n[i]) ln.push_back(nb[x]);
                  for (auto x : sig_e[i]) le.push_back(eb[x]);
                  legs.emplace_back(Morphism::Unchecked{}, d.objects[i], qg, std::move(ln), std::move(le));
                }
                if (detail::count_mediators(c.apex, c.legs, legs, qg) != 1) {
                  verdict = Verdict::no;
                  return false;
                }
                return true;
              });
          return verdict == Verdict::yes;
        });
  } catch (const detail::OverBudget&) {
    return Verdict::inconclusive;
  }
  return verdict;
}

/// The square's (right, bottom) against all cocones over its span.
inline Verdict brute_is_pushout(const Square& s, SizeBudget budget = {}) {
  if (!commutes(s)) return Verdict::no;
  Diagram d{DiagramShape{{"A", "B", "C"}, {{"top", "A", "B"}, {"left", "A", "C"}}},
            {s.top.dom(), s.top.cod(), s.left.cod()},
            {s.top, s.left}};
  Cocone c{d, s.right.cod(), {compose(s.top, s.right), s.right, s.bottom}};
  return brute_is_colimit(c, budget);
}

namespace detail {
// Every graph with at most two nodes and two edges over the given labels.
inline std::vector<Graph> small_graphs(const std::set<std::string>& node_labels,
                                       const std::set<std::string>& edge_labels) {
  std::vector<Graph> out;
  std::vector<std::string> nl(node_labels.begin(), node_labels.end());
  std::vector<std::string> el(edge_labels.begin(), edge_labels.end());
  for (std::size_t n = 0; n <= 2; ++n) {
    std::vector<std::vector<std::string>> labelings;
    if (n == 0) labelings.push_back({});
    for (const auto& a : nl) {
      if (n == 1) labelings.push_back({a});
      if (n == 2)
        for (const auto& b : nl) labelings.push_back({a, b});
    }
    for (const auto& lab : labelings) {
      std::vector<std::array<std::size_t, 2>> ends;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) ends.push_back({x, y});
      std::vector<std::pair<std::size_t, std::size_t>> slots;  // (ends index, label index)
      for (std::size_t p = 0; p < ends.size(); ++p)
        for (std::size_t l = 0; l < el.size(); ++l) slots.push_back({p, l});
      auto build = [&](const std::vector<std::size_t>& chosen) {
        GraphData g;
        for (std::size_t x = 0; x < n; ++x) g.nodes.push_back({"n" + std::to_string(x), lab[x]});
        for (std::size_t k = 0; k < chosen.size(); ++k) {
          auto [p, l] = slots[chosen[k]];
          g.edges.push_back({"e" + std::to_string(k), "n" + std::to_string(ends[p][0]),
                             "n" + std::to_string(ends[p][1]), el[l]});
        }
        out.push_back(Graph(std::move(g)));
      };
      build({});
      for (std::size_t a = 0; a < slots.size(); ++a) {
        build({a});
        for (std::size_t b = a; b < slots.size(); ++b) build({a, b});
      }
    }
  }
  return out;
}
}  // namespace detail

/// The square's (top, left) against all cones over (right, bottom) whose
/// vertex has at most two nodes and two edges, plus the candidate itself.
/// Graphs are generated by the one-node and one-edge graphs, so these
/// competitors detect every failure of the universal property.
inline Verdict brute_is_pullback(const Square& s, SizeBudget budget = {}) {
  if (!commutes(s)) return Verdict::no;
  for (const auto* g : {&s.top.dom(), &s.top.cod(), &s.left.cod(), &s.right.cod()})
    if (g->node_count() > budget.max_nodes || g->edge_count() > budget.max_edges) return Verdict::inconclusive;
  std::set<std::string> nl, el;
  for (const auto* g : {&s.top.dom(), &s.top.cod(), &s.left.cod(), &s.right.cod()}) {
    for (std::size_t n = 0; n < g->node_count(); ++n) nl.insert(g->node_label(n));
    for (std::size_t e = 0; e < g->edge_count(); ++e) el.insert(g->edge_label(e));
  }
  auto competitors = detail::small_graphs(nl, el);
  competitors.push_back(s.top.dom());
  const Graph& a = s.top.dom();
  std::size_t examined = 0;
  for (const auto& q : competitors) {
    bool failed = false;
    bool over = false;
    for (const auto& q1 : enumerate_morphisms(q, s.top.cod())) {
      SearchOptions opt;
      opt.node_allowed = [&](std::size_t x, std::size_t y) { return s.bottom.node(y) == s.right.node(q1.node(x)); };
      opt.edge_allowed = [&](std::size_t x, std::size_t y) { return s.bottom.edge(y) == s.right.edge(q1.edge(x)); };
      for_each_morphism(q, s.left.cod(), opt, [&](const auto& nm, const auto& em) {
        if (++examined > budget.max_candidates) {
          over = true;
          return false;
        }
        // Mediators u: q -> a with top ∘ u = q1 and left ∘ u = q2.
        SearchOptions med;
        med.node_allowed = [&](std::size_t x, std::size_t y) {
          return s.top.node(y) == q1.node(x) && s.left.node(y) == nm[x];
        };
        med.edge_allowed = [&](std::size_t x, std::size_t y) {
          return s.top.edge(y) == q1.edge(x) && s.left.edge(y) == em[x];
        };
        if (count_morphisms(q, a, med, 2) != 1) {
          failed = true;
          return false;
        }
        return true;
      });
      if (failed) return Verdict::no;
      if (over) return Verdict::inconclusive;
    }
  }
  return Verdict::yes;
}

struct ComplementSearch {
  Verdict status = Verdict::yes;
  std::vector<PushoutComplement> candidates;
};

/// All subgraphs Y of X, with j the corestriction of m ∘ a and c the
/// inclusion, whose square passes brute_is_pushout. Only subgraphs that
/// contain m(a(K)) and cover X together with m(L) are tried, since the legs
/// of a pushout are jointly surjective.
inline ComplementSearch brute_pushout_complement(const Morphism& a, const Morphism& m, SizeBudget budget = {}) {
  const Graph& x = m.cod();
  auto ma = compose(a, m);
  auto must = image(ma);
  auto matched = image(m);
  for (std::size_t n = 0; n < x.node_count(); ++n)
    if (!matched.nodes[n]) must.nodes[n] = true;
  for (std::size_t e = 0; e < x.edge_count(); ++e)
    if (!matched.edges[e]) must.edges[e] = true;
  std::vector<std::pair<bool, std::size_t>> free;  // (is node, index)
  for (std::size_t n = 0; n < x.node_count(); ++n)
    if (!must.nodes[n]) free.push_back({true, n});
  for (std::size_t e = 0; e < x.edge_count(); ++e)
    if (!must.edges[e]) free.push_back({false, e});
  ComplementSearch r;
  if (free.size() > 20 || (std::size_t{1} << free.size()) > budget.max_candidates) {
    r.status = Verdict::inconclusive;
    return r;
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    Subgraph y = must;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (mask >> k & 1) (free[k].first ? y.nodes : y.edges)[free[k].second] = true;
    if (!y.closed_in(x)) continue;
    Graph gy = extract(x, y);
    auto c = Morphism::inclusion(gy, x);
    auto j = corestrict(ma, gy);
    auto v = brute_is_pushout({a, j, m, c}, budget);
    if (v == Verdict::inconclusive) {
      r.status = Verdict::inconclusive;
      r.candidates.clear();
      return r;
    }
    if (v == Verdict::yes) r.candidates.push_back({std::move(j), std::move(c)});
  }
  r.status = r.candidates.empty() ? Verdict::no : Verdict::yes;
  return r;
}

}  // namespace adhesive::oracle
