#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adhesive/graph.hpp"
#include "adhesive/limits.hpp"

namespace adhesive {

/// A full subcategory of labeled graphs whose subobjects are the subgraphs
/// fixed by `close`. `close` must be a union-preserving closure operator
/// (every closed subgraph is the union of the closures of its items).
struct GraphCategory {
  std::string name;
  std::function<Subgraph(const Graph&, Subgraph)> close;
  /// Subobjects are exactly the endpoint-closed subgraphs.
  bool plain = false;
};

inline Subgraph close_endpoints(const Graph& g, Subgraph s) {
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (s.edges[e]) s.nodes[g.src(e)] = s.nodes[g.tgt(e)] = true;
  return s;
}

inline const GraphCategory& plain_graphs() {
  static const GraphCategory cat{"graphs", close_endpoints, true};
  return cat;
}

struct LatticeOptions {
  /// Refuse hosts with more than this many items (nodes + edges).
  std::size_t max_items = 20;
};

/// The subobjects of a host graph ordered by inclusion.
class SubobjectLattice {
 public:
  SubobjectLattice(Graph host, const GraphCategory& cat = plain_graphs(), LatticeOptions opt = {})
      : host_(std::move(host)) {
    if (host_.node_count() + host_.edge_count() > opt.max_items)
      throw Error("lattice too large: " + std::to_string(host_.node_count() + host_.edge_count()) +
                  " items exceeds the cap of " + std::to_string(opt.max_items));
    // Closed subgraphs are unions of principal closures, so a saturation
    // from the bottom reaches all of them.
    std::vector<Subgraph> principal;
    for (std::size_t n = 0; n < host_.node_count(); ++n) {
      auto s = Subgraph::none(host_);
      s.nodes[n] = true;
      principal.push_back(cat.close(host_, s));
    }
    for (std::size_t e = 0; e < host_.edge_count(); ++e) {
      auto s = Subgraph::none(host_);
      s.edges[e] = true;
      principal.push_back(cat.close(host_, s));
    }
    std::map<Subgraph, std::size_t> seen;
    std::vector<Subgraph> queue{cat.close(host_, Subgraph::none(host_))};
    seen[queue[0]] = 0;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (const auto& p : principal) {
        auto u = queue[k].united(p);
        if (seen.emplace(u, 0).second) queue.push_back(u);
      }
    std::sort(queue.begin(), queue.end(), [](const Subgraph& a, const Subgraph& b) {
      auto sa = a.size(), sb = b.size();
      return sa != sb ? sa < sb : a < b;
    });
    elements_ = std::move(queue);
    for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = i;

    irreducible_.assign(elements_.size(), false);
    for (std::size_t i = 1; i < elements_.size(); ++i) {
      if (cat.plain) {
        // Endpoint-closed subgraphs have one lower cover per edge and per
        // isolated node; a single lower cover means join-irreducible.
        std::size_t covers = 0;
        std::vector<bool> touched(host_.node_count(), false);
        for (std::size_t e = 0; e < host_.edge_count(); ++e)
          if (elements_[i].edges[e]) {
            ++covers;
            touched[host_.src(e)] = touched[host_.tgt(e)] = true;
          }
        for (std::size_t n = 0; n < host_.node_count(); ++n)
          if (elements_[i].nodes[n] && !touched[n]) ++covers;
        irreducible_[i] = covers == 1;
      } else {
        Subgraph below = Subgraph::none(host_);
        for (std::size_t j = 0; j < i; ++j)
          if (elements_[j] != elements_[i] && elements_[j].subset_of(elements_[i])) below = below.united(elements_[j]);
        irreducible_[i] = below != elements_[i];
      }
    }
  }

  const Graph& host() const { return host_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Subgraph>& elements() const { return elements_; }
  const Subgraph& element(std::size_t i) const { return elements_.at(i); }
  bool irreducible(std::size_t i) const { return irreducible_.at(i); }
  std::size_t bottom() const { return 0; }
  std::size_t top() const { return elements_.size() - 1; }

  std::optional<std::size_t> find(const Subgraph& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool leq(std::size_t i, std::size_t j) const { return elements_.at(i).subset_of(elements_.at(j)); }
  std::size_t join(std::size_t i, std::size_t j) const { return index_.at(elements_.at(i).united(elements_.at(j))); }
  std::size_t meet(std::size_t i, std::size_t j) const {
    return index_.at(elements_.at(i).intersected(elements_.at(j)));
  }

 private:
  Graph host_;
  std::vector<Subgraph> elements_;
  std::vector<bool> irreducible_;
  std::map<Subgraph, std::size_t> index_;
};

inline SubobjectLattice subobject_lattice(const Graph& x, const GraphCategory& cat = plain_graphs(),
                                          LatticeOptions opt = {}) {
  return SubobjectLattice(x, cat, opt);
}

/// Decides irreducibility straight from the definition: y needs a proper
/// subobject, and no pushout of two proper subobjects over a common
/// subobject may be y.
inline bool is_irreducible_by_definition(const Graph& y, const GraphCategory& cat = plain_graphs()) {
  SubobjectLattice lat(y, cat);
  if (lat.size() < 2) return false;
  const auto top = lat.top();
  auto incl = [&](std::size_t i) { return Morphism::inclusion(extract(y, lat.element(i)), y); };
  std::vector<Morphism> into_y;
  for (std::size_t i = 0; i < lat.size(); ++i) into_y.push_back(incl(i));
  for (std::size_t u = 0; u < top; ++u)
    for (std::size_t v = u; v < top; ++v) {
      // A pushout of monos is jointly surjective onto its apex.
      if (lat.join(u, v) != top) continue;
      for (std::size_t w = 0; w < lat.size(); ++w) {
        if (!lat.leq(w, u) || !lat.leq(w, v)) continue;
        const Graph& gw = into_y[w].dom();
        Square sq{Morphism::inclusion(gw, into_y[u].dom()), Morphism::inclusion(gw, into_y[v].dom()), into_y[u],
                  into_y[v]};
        if (is_pushout(sq)) return false;
      }
    }
  return true;
}

/// Irreducibility. Unlabeled plain graphs take the closed form (a single
/// node, a single loop, or a single edge); everything else is decided by
/// the definition.
inline bool is_irreducible(const Graph& y, const GraphCategory& cat = plain_graphs()) {
  if (cat.plain && y.unlabeled()) {
    if (y.node_count() == 1 && y.edge_count() <= 1) return true;
    return y.node_count() == 2 && y.edge_count() == 1 && y.src(0) != y.tgt(0);
  }
  return is_irreducible_by_definition(y, cat);
}

struct Component {
  std::string name;
  Subgraph sub;
  Morphism inclusion;
};

/// The irreducible subobjects of x, nodes first and then edges, each in id
/// order. An irreducible subobject is the closure of a single item.
inline std::vector<Component> irreducible_components(const Graph& x, const GraphCategory& cat = plain_graphs()) {
  std::vector<Component> out;
  std::map<Subgraph, bool> seen;
  auto add = [&](std::string name, Subgraph s) {
    s = cat.close(x, s);
    if (!seen.emplace(s, true).second) return;
    out.push_back({std::move(name), s, Morphism::inclusion(extract(x, s), x)});
  };
  for (std::size_t n = 0; n < x.node_count(); ++n) {
    auto s = Subgraph::none(x);
    s.nodes[n] = true;
    add("node:" + x.node_id(n), s);
  }
  for (std::size_t e = 0; e < x.edge_count(); ++e) {
    auto s = Subgraph::none(x);
    s.edges[e] = true;
    add("edge:" + x.edge_id(e), s);
  }
  return out;
}

struct CanonicalDecomposition {
  std::vector<Component> components;
  /// Objects are the components, arrows every strict inclusion between them.
  Cocone cocone;
};

/// Colimit decomposition of x into its irreducible components. With
/// `include_bottom` the empty subgraph is added as an extra object.
inline CanonicalDecomposition canonical_decomposition(const Graph& x, const GraphCategory& cat = plain_graphs(),
                                                      bool include_bottom = false) {
  if (x.empty()) throw Error("no decomposition of initial object");
  auto comps = irreducible_components(x, cat);
  if (include_bottom)
    comps.insert(comps.begin(), Component{"bottom", Subgraph::none(x), Morphism::from_empty(x)});
  Diagram d;
  for (const auto& c : comps) {
    d.shape.objects.push_back(c.name);
    d.objects.push_back(c.inclusion.dom());
  }
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < comps.size(); ++j)
      if (i != j && comps[i].sub.subset_of(comps[j].sub) && comps[i].sub != comps[j].sub) {
        d.shape.arrows.push_back({comps[i].name + "<" + comps[j].name, comps[i].name, comps[j].name});
        d.arrows.push_back(Morphism::inclusion(d.objects[i], d.objects[j]));
      }
  CanonicalDecomposition r{comps, {d, x, {}}};
  for (const auto& c : comps) r.cocone.legs.push_back(c.inclusion);
  return r;
}

}  // namespace adhesive
