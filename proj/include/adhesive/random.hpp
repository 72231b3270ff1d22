#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adhesive/dpo.hpp"
#include "adhesive/graph.hpp"
#include "adhesive/limits.hpp"
#include "adhesive/search.hpp"

// Seeded generators for desk-scale fixtures.
namespace adhesive::random {

using Rng = std::mt19937;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Unlabeled graph with nodes n0.. and edges e0.. between random endpoints.
inline Graph random_graph(Rng& rng, std::size_t nodes, std::size_t edges, const std::string& prefix = "") {
  GraphData d;
  for (std::size_t n = 0; n < nodes; ++n) d.nodes.push_back({prefix + "n" + std::to_string(n)});
  if (nodes > 0)
    for (std::size_t e = 0; e < edges; ++e)
      d.edges.push_back({prefix + "e" + std::to_string(e), d.nodes[uniform(rng, 0, nodes - 1)].id,
                         d.nodes[uniform(rng, 0, nodes - 1)].id});
  return Graph(std::move(d));
}

/// Endpoint-closed subgraph keeping each item with probability p.
inline Subgraph random_subgraph(Rng& rng, const Graph& g, double p = 0.5) {
  Subgraph s = Subgraph::none(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) s.nodes[n] = coin(rng, p);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    s.edges[e] = s.nodes[g.src(e)] && s.nodes[g.tgt(e)] && coin(rng, p);
  return s;
}

/// A uniformly chosen morphism a -> b, if any exists.
inline std::optional<Morphism> random_morphism(Rng& rng, const Graph& a, const Graph& b, bool mono = false) {
  auto all = enumerate_morphisms(a, b, mono);
  if (all.empty()) return std::nullopt;
  return all[uniform(rng, 0, all.size() - 1)];
}

/// Quotient of g by a random node partition (edges kept), with the
/// quotient map. At most `merges` random merges are performed.
inline Morphism random_node_quotient(Rng& rng, const Graph& g, std::size_t merges,
                                     const std::vector<bool>& mergeable = {}) {
  std::vector<std::size_t> rep(g.node_count());
  for (std::size_t n = 0; n < rep.size(); ++n) rep[n] = n;
  std::vector<std::size_t> pool;
  for (std::size_t n = 0; n < g.node_count(); ++n)
    if (mergeable.empty() || mergeable[n]) pool.push_back(n);
  auto find = [&](std::size_t x) {
    while (rep[x] != x) x = rep[x];
    return x;
  };
  for (std::size_t k = 0; k < merges && pool.size() >= 2; ++k) {
    auto x = find(pool[uniform(rng, 0, pool.size() - 1)]);
    auto y = find(pool[uniform(rng, 0, pool.size() - 1)]);
    if (x != y) rep[std::max(x, y)] = std::min(x, y);
  }
  GraphData d;
  for (std::size_t n = 0; n < g.node_count(); ++n)
    if (find(n) == n) d.nodes.push_back(g.data().nodes[n]);
  for (const auto& e : g.data().edges)
    d.edges.push_back({e.id, g.node_id(find(g.node_index(e.src))), g.node_id(find(g.node_index(e.tgt))), e.label});
  Graph q(std::move(d));
  std::vector<std::size_t> nm, em;
  for (std::size_t n = 0; n < g.node_count(); ++n) nm.push_back(q.node_index(g.node_id(find(n))));
  for (std::size_t e = 0; e < g.edge_count(); ++e) em.push_back(e);
  return Morphism(g, q, std::move(nm), std::move(em));
}

/// g with extra nodes and edges; extra edges avoid the nodes flagged in
/// `avoid`. Returns the inclusion of g.
inline Morphism random_extension(Rng& rng, const Graph& g, std::size_t extra_nodes, std::size_t extra_edges,
                                 const std::vector<bool>& avoid = {}, const std::string& prefix = "x") {
  GraphData d = g.data();
  for (std::size_t n = 0; n < extra_nodes; ++n) d.nodes.push_back({prefix + "n" + std::to_string(n)});
  std::vector<std::string> ends;
  for (std::size_t n = 0; n < g.node_count(); ++n)
    if (avoid.empty() || !avoid[n]) ends.push_back(g.node_id(n));
  for (std::size_t n = 0; n < extra_nodes; ++n) ends.push_back(prefix + "n" + std::to_string(n));
  if (!ends.empty())
    for (std::size_t e = 0; e < extra_edges; ++e)
      d.edges.push_back({prefix + "e" + std::to_string(e), ends[uniform(rng, 0, ends.size() - 1)],
                         ends[uniform(rng, 0, ends.size() - 1)]});
  Graph h(std::move(d));
  return Morphism::inclusion(g, h);
}

struct DpoParams {
  std::size_t max_host_nodes = 6;
  std::size_t max_host_edges = 8;
};

/// A random DPO diagram: L, K ⊆ L, R built from a quotient of K plus new
/// items, and a match satisfying the gluing condition by construction.
inline DoubleSquare random_dpo_square(Rng& rng, DpoParams params = {}) {
  for (;;) {
    auto l = random_graph(rng, uniform(rng, 1, 3), uniform(rng, 0, 3), "l");
    auto k = extract(l, random_subgraph(rng, l, 0.6));
    auto a = Morphism::inclusion(k, l);

    auto kq = random_node_quotient(rng, k, uniform(rng, 0, 2));
    auto radd = random_extension(rng, kq.cod(), uniform(rng, 0, 1), uniform(rng, 0, 2), {}, "r");
    auto b = compose(kq, radd);
    Rule rule(a, b);

    // Host: merge some preserved nodes of L, then add context that does not
    // touch deleted nodes.
    std::vector<bool> preserved(l.node_count(), false);
    for (std::size_t n = 0; n < k.node_count(); ++n) preserved[a.node(n)] = true;
    auto lq = random_node_quotient(rng, l, coin(rng, 0.3) ? 1 : 0, preserved);
    std::vector<bool> deleted_image(lq.cod().node_count(), false);
    for (std::size_t n = 0; n < l.node_count(); ++n)
      if (!preserved[n]) deleted_image[lq.node(n)] = true;
    auto ext = random_extension(rng, lq.cod(), uniform(rng, 0, 3), uniform(rng, 0, 4), deleted_image, "x");
    auto m = compose(lq, ext);
    if (m.cod().node_count() > params.max_host_nodes || m.cod().edge_count() > params.max_host_edges) continue;
    if (!gluing_check(rule, m).ok()) continue;
    return apply_rule(rule, m);
  }
}

/// A random rule with mono left leg and a random match into a small host.
/// Hosts are built from L by arbitrary merges and extra context, so both
/// gluing violations and valid matches occur.
inline std::pair<Rule, Morphism> random_rule_and_match(Rng& rng) {
  for (;;) {
    auto l = random_graph(rng, uniform(rng, 1, 3), uniform(rng, 0, 3), "l");
    auto k = extract(l, random_subgraph(rng, l, 0.5));
    Rule rule(Morphism::inclusion(k, l), Morphism::identity(k));
    auto lq = random_node_quotient(rng, l, uniform(rng, 0, 2));
    auto ext = random_extension(rng, lq.cod(), uniform(rng, 0, 2), uniform(rng, 0, 2));
    const Graph& x = ext.cod();
    auto m = coin(rng, 0.5) ? std::optional<Morphism>(compose(lq, ext)) : random_morphism(rng, l, x);
    if (!m) continue;
    return {rule, *m};
  }
}

struct Cube {
  // Bottom: A -f-> B, A -g-> C, B -> D, C -> D.
  Square bottom;
  // Top: A' -> B', A' -> C', B' -> D', C' -> D'.
  Square top;
  Morphism a, b, c, d;  // vertical maps A' -> A, ..., D' -> D
};

inline Square back_left(const Cube& q) { return {q.top.top, q.a, q.b, q.bottom.top}; }
inline Square back_right(const Cube& q) { return {q.top.left, q.a, q.c, q.bottom.left}; }
inline Square front_left(const Cube& q) { return {q.top.right, q.b, q.d, q.bottom.right}; }
inline Square front_right(const Cube& q) { return {q.top.bottom, q.c, q.d, q.bottom.bottom}; }

/// Random h: E -> D with 0..2 copies of each node and each edge.
inline Morphism random_over(Rng& rng, const Graph& d) {
  GraphData e;
  std::vector<std::vector<std::string>> copies(d.node_count());
  std::vector<std::size_t> nm, em;
  for (std::size_t n = 0; n < d.node_count(); ++n)
    for (std::size_t k = uniform(rng, 0, 2); k > 0; --k) {
      copies[n].push_back("p" + std::to_string(e.nodes.size()));
      e.nodes.push_back({copies[n].back(), d.node_label(n)});
    }
  std::vector<std::size_t> edge_over;
  for (std::size_t x = 0; x < d.edge_count(); ++x) {
    const auto& s = copies[d.src(x)];
    const auto& t = copies[d.tgt(x)];
    if (s.empty() || t.empty()) continue;
    for (std::size_t k = uniform(rng, 0, 2); k > 0; --k) {
      e.edges.push_back({"q" + std::to_string(e.edges.size()), s[uniform(rng, 0, s.size() - 1)],
                         t[uniform(rng, 0, t.size() - 1)], d.edge_label(x)});
      edge_over.push_back(x);
    }
  }
  std::vector<std::size_t> node_over;
  for (std::size_t n = 0; n < d.node_count(); ++n)
    for (std::size_t k = 0; k < copies[n].size(); ++k) node_over.push_back(n);
  Graph g(e);
  nm.resize(g.node_count());
  em.resize(g.edge_count());
  for (std::size_t i = 0; i < e.nodes.size(); ++i) nm[g.node_index(e.nodes[i].id)] = node_over[i];
  for (std::size_t i = 0; i < e.edges.size(); ++i) em[g.edge_index(e.edges[i].id)] = edge_over[i];
  return Morphism(g, d, nm, em);
}

/// A cube over a pushout along a mono with pullback back faces. The top
/// right corner varies: the pulled-back E itself, the canonical pushout of
/// the top span, or one of those with an extra node or a merge, so that
/// both outcomes of the Van Kampen biconditional occur.
inline Cube random_vk_cube(Rng& rng) {
  for (;;) {
    auto b = random_graph(rng, uniform(rng, 1, 3), uniform(rng, 0, 3), "b");
    auto a = extract(b, random_subgraph(rng, b, 0.6));
    auto f = Morphism::inclusion(a, b);
    auto cg = random_graph(rng, uniform(rng, 0, 2), uniform(rng, 0, 2), "c");
    // C receives A by a random map when possible, else A is glued in.
    std::optional<Morphism> g = random_morphism(rng, a, cg);
    if (!g) {
      auto plus = random_extension(rng, a, cg.node_count(), cg.edge_count(), {}, "c");
      g = Morphism::inclusion(a, plus.cod());
    }
    auto po = pushout({f, *g});
    Square bottom{f, *g, po.left, po.right};
    auto h = random_over(rng, po.apex());
    auto bp = pullback(h, po.left);   // B' -> E, B' -> B
    auto cp = pullback(h, po.right);  // C' -> E, C' -> C
    auto ap = pullback(bp.right, f);  // A' -> B', A' -> A
    auto to_c = induced_into_pullback(cp, compose(ap.left, bp.left), compose(ap.right, *g));
    if (!to_c) continue;
    Morphism top_f = ap.left, top_g = *to_c;

    Morphism to_e_b = bp.left, to_e_c = cp.left, vd = h;
    switch (uniform(rng, 0, 3)) {
      case 0:
        break;
      case 1: {
        auto tp = pushout({top_f, top_g});
        auto u = induced_from_pushout(tp, compose(bp.left, h), compose(cp.left, h));
        if (!u) continue;
        to_e_b = tp.left;
        to_e_c = tp.right;
        vd = *u;
        break;
      }
      case 2: {
        if (po.apex().empty()) continue;
        auto ext = random_extension(rng, h.dom(), 1, 0, {}, "z");
        Graph ecod = ext.cod();
        std::vector<std::size_t> nm2(ecod.node_count()), em2(ecod.edge_count());
        for (std::size_t n = 0; n < h.dom().node_count(); ++n) nm2[ext.node(n)] = h.node(n);
        for (std::size_t e = 0; e < h.dom().edge_count(); ++e) em2[ext.edge(e)] = h.edge(e);
        nm2[ecod.node_index("zn0")] = uniform(rng, 0, po.apex().node_count() - 1);
        vd = Morphism(ecod, po.apex(), nm2, em2);
        to_e_b = compose(bp.left, ext);
        to_e_c = compose(cp.left, ext);
        break;
      }
      case 3: {
        // Merge two nodes of E lying over the same node of D.
        auto q = random_node_quotient(rng, h.dom(), 1);
        std::vector<std::size_t> nm(q.cod().node_count()), em(q.cod().edge_count());
        bool ok = true;
        std::vector<bool> set(q.cod().node_count(), false);
        for (std::size_t n = 0; n < h.dom().node_count(); ++n) {
          auto t = q.node(n);
          if (set[t] && nm[t] != h.node(n)) ok = false;
          nm[t] = h.node(n);
          set[t] = true;
        }
        for (std::size_t e = 0; e < h.dom().edge_count(); ++e) em[q.edge(e)] = h.edge(e);
        if (!ok || !morphism_violations(q.cod(), po.apex(), nm, em).empty()) continue;
        vd = Morphism(q.cod(), po.apex(), nm, em);
        to_e_b = compose(bp.left, q);
        to_e_c = compose(cp.left, q);
        break;
      }
    }
    Square top{top_f, top_g, to_e_b, to_e_c};
    return Cube{bottom, top, ap.right, bp.right, cp.right, vd};
  }
}

}  // namespace adhesive::random
