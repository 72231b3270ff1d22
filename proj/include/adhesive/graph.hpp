#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adhesive/error.hpp"

namespace adhesive {

/// Label carried by items that have no label of their own.
inline const std::string kUnlabeled = "∅";

struct NodeDecl {
  std::string id;
  std::string label = kUnlabeled;
  friend bool operator==(const NodeDecl&, const NodeDecl&) = default;
};

struct EdgeDecl {
  std::string id;
  std::string src;
  std::string tgt;
  std::string label = kUnlabeled;
  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

/// Unvalidated graph description, as read from a file or assembled by hand.
struct GraphData {
  std::vector<NodeDecl> nodes;
  std::vector<EdgeDecl> edges;
  friend bool operator==(const GraphData&, const GraphData&) = default;
};

struct LabelAlphabet {
  std::set<std::string> node_labels{kUnlabeled};
  std::set<std::string> edge_labels{kUnlabeled};
};

/// Every invariant violation of `g`; empty means the data describes a graph.
/// With an alphabet, labels outside it are reported as well.
inline std::vector<std::string> validate(const GraphData& g,
                                         const LabelAlphabet* alphabet = nullptr) {
  std::vector<std::string> errors;
  std::set<std::string> node_ids;
  for (const auto& n : g.nodes) {
    if (!node_ids.insert(n.id).second) errors.push_back("duplicate node id '" + n.id + "'");
    if (alphabet && !alphabet->node_labels.contains(n.label))
      errors.push_back("node '" + n.id + "' has unknown label '" + n.label + "'");
  }
  std::set<std::string> edge_ids;
  for (const auto& e : g.edges) {
    if (!edge_ids.insert(e.id).second) errors.push_back("duplicate edge id '" + e.id + "'");
    if (!node_ids.contains(e.src))
      errors.push_back("edge '" + e.id + "' has dangling endpoint '" + e.src + "'");
    if (!node_ids.contains(e.tgt))
      errors.push_back("edge '" + e.id + "' has dangling endpoint '" + e.tgt + "'");
    if (alphabet && !alphabet->edge_labels.contains(e.label))
      errors.push_back("edge '" + e.id + "' has unknown label '" + e.label + "'");
  }
  return errors;
}

/// A finite labeled directed multigraph.
///
/// Immutable once built. Nodes and edges are stored sorted by id, so item
/// indices are stable and every construction that iterates over them is
/// deterministic. Copies share the underlying storage.
class Graph {
 public:
  Graph() : impl_(empty_impl()) {}

  explicit Graph(GraphData data) {
    auto impl = std::make_shared<Impl>();
    auto by_id = [](const auto& x, const auto& y) { return x.id < y.id; };
    auto same_id = [](const auto& x, const auto& y) { return x.id == y.id; };
    std::sort(data.nodes.begin(), data.nodes.end(), by_id);
    std::sort(data.edges.begin(), data.edges.end(), by_id);
    bool ok = std::adjacent_find(data.nodes.begin(), data.nodes.end(), same_id) == data.nodes.end() &&
              std::adjacent_find(data.edges.begin(), data.edges.end(), same_id) == data.edges.end();
    impl->out.resize(data.nodes.size());
    impl->in.resize(data.nodes.size());
    impl->src.reserve(data.edges.size());
    impl->tgt.reserve(data.edges.size());
    for (std::size_t e = 0; e < data.edges.size() && ok; ++e) {
      auto s = index_in(data.nodes, data.edges[e].src);
      auto t = index_in(data.nodes, data.edges[e].tgt);
      if (!s || !t) {
        ok = false;
        break;
      }
      impl->src.push_back(*s);
      impl->tgt.push_back(*t);
      impl->out[*s].push_back(e);
      impl->in[*t].push_back(e);
    }
    if (!ok) throw Error("invalid graph: " + join_lines(validate(data)));
    impl->data = std::move(data);
    impl_ = std::move(impl);
  }

  std::size_t node_count() const noexcept { return impl_->data.nodes.size(); }
  std::size_t edge_count() const noexcept { return impl_->data.edges.size(); }
  bool empty() const noexcept { return node_count() == 0; }

  const std::string& node_id(std::size_t n) const { return impl_->data.nodes.at(n).id; }
  const std::string& node_label(std::size_t n) const { return impl_->data.nodes.at(n).label; }
  const std::string& edge_id(std::size_t e) const { return impl_->data.edges.at(e).id; }
  const std::string& edge_label(std::size_t e) const { return impl_->data.edges.at(e).label; }
  std::size_t src(std::size_t e) const { return impl_->src.at(e); }
  std::size_t tgt(std::size_t e) const { return impl_->tgt.at(e); }
  std::span<const std::size_t> out_edges(std::size_t n) const { return impl_->out.at(n); }
  std::span<const std::size_t> in_edges(std::size_t n) const { return impl_->in.at(n); }

  std::optional<std::size_t> find_node(std::string_view id) const {
    return index_in(impl_->data.nodes, id);
  }
  std::optional<std::size_t> find_edge(std::string_view id) const {
    return index_in(impl_->data.edges, id);
  }
  std::size_t node_index(std::string_view id) const {
    if (auto n = find_node(id)) return *n;
    throw Error("unknown node '" + std::string(id) + "'");
  }
  std::size_t edge_index(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw Error("unknown edge '" + std::string(id) + "'");
  }

  const GraphData& data() const noexcept { return impl_->data; }

  bool unlabeled() const {
    for (const auto& n : impl_->data.nodes)
      if (n.label != kUnlabeled) return false;
    for (const auto& e : impl_->data.edges)
      if (e.label != kUnlabeled) return false;
    return true;
  }

  /// Compact human-readable form, e.g. `{u,w | e:u->w}`.
  std::string summary() const {
    std::string s = "{";
    for (std::size_t n = 0; n < node_count(); ++n) {
      if (n) s += ",";
      s += node_id(n);
      if (node_label(n) != kUnlabeled) s += "[" + node_label(n) + "]";
    }
    s += " |";
    for (std::size_t e = 0; e < edge_count(); ++e) {
      s += (e ? ", " : " ") + edge_id(e) + ":" + node_id(src(e)) + "->" + node_id(tgt(e));
      if (edge_label(e) != kUnlabeled) s += "[" + edge_label(e) + "]";
    }
    return s + "}";
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.impl_ == b.impl_ || a.impl_->data == b.impl_->data;
  }

 private:
  struct Impl {
    GraphData data;
    std::vector<std::size_t> src, tgt;
    std::vector<std::vector<std::size_t>> out, in;
  };

  template <class Decl>
  static std::optional<std::size_t> index_in(const std::vector<Decl>& items, std::string_view id) {
    auto it = std::lower_bound(items.begin(), items.end(), id,
                               [](const Decl& d, std::string_view v) { return d.id < v; });
    if (it == items.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - items.begin());
  }

  static std::shared_ptr<const Impl> empty_impl() {
    static const auto empty = std::make_shared<const Impl>();
    return empty;
  }

  std::shared_ptr<const Impl> impl_;
};

/// Unlabeled graph from node ids and (edge id, src, tgt) triples.
inline Graph graph_of(const std::vector<std::string>& nodes,
                      const std::vector<std::array<std::string, 3>>& edges = {}) {
  GraphData d;
  for (const auto& n : nodes) d.nodes.push_back({n, kUnlabeled});
  for (const auto& e : edges) d.edges.push_back({e[0], e[1], e[2], kUnlabeled});
  return Graph(std::move(d));
}

/// A set of nodes and edges of some host graph, indexed like the host.
struct Subgraph {
  std::vector<bool> nodes;
  std::vector<bool> edges;

  static Subgraph none(const Graph& g) {
    return {std::vector<bool>(g.node_count(), false), std::vector<bool>(g.edge_count(), false)};
  }
  static Subgraph all(const Graph& g) {
    return {std::vector<bool>(g.node_count(), true), std::vector<bool>(g.edge_count(), true)};
  }

  /// Edge endpoints lie inside the node set.
  bool closed_in(const Graph& g) const {
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e] && (!nodes[g.src(e)] || !nodes[g.tgt(e)])) return false;
    return true;
  }

  std::size_t size() const {
    return static_cast<std::size_t>(std::count(nodes.begin(), nodes.end(), true) +
                                    std::count(edges.begin(), edges.end(), true));
  }

  bool subset_of(const Subgraph& o) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] && !o.nodes[i]) return false;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i] && !o.edges[i]) return false;
    return true;
  }

  Subgraph united(const Subgraph& o) const {
    Subgraph r = *this;
    for (std::size_t i = 0; i < nodes.size(); ++i) r.nodes[i] = nodes[i] || o.nodes[i];
    for (std::size_t i = 0; i < edges.size(); ++i) r.edges[i] = edges[i] || o.edges[i];
    return r;
  }

  Subgraph intersected(const Subgraph& o) const {
    Subgraph r = *this;
    for (std::size_t i = 0; i < nodes.size(); ++i) r.nodes[i] = nodes[i] && o.nodes[i];
    for (std::size_t i = 0; i < edges.size(); ++i) r.edges[i] = edges[i] && o.edges[i];
    return r;
  }

  friend bool operator==(const Subgraph&, const Subgraph&) = default;
  friend bool operator<(const Subgraph& a, const Subgraph& b) {
    if (a.nodes != b.nodes) return a.nodes < b.nodes;
    return a.edges < b.edges;
  }
};

/// The subgraph as a graph in its own right; ids and labels are kept.
inline Graph extract(const Graph& host, const Subgraph& s) {
  if (!s.closed_in(host)) throw Error("subgraph is not closed under edge endpoints");
  GraphData d;
  for (std::size_t n = 0; n < host.node_count(); ++n)
    if (s.nodes[n]) d.nodes.push_back(host.data().nodes[n]);
  for (std::size_t e = 0; e < host.edge_count(); ++e)
    if (s.edges[e]) d.edges.push_back(host.data().edges[e]);
  return Graph(std::move(d));
}

/// Reasons why the given maps do not form a graph morphism dom -> cod.
inline std::vector<std::string> morphism_violations(const Graph& dom, const Graph& cod,
                                                    const std::vector<std::size_t>& nodes,
                                                    const std::vector<std::size_t>& edges) {
  std::vector<std::string> errors;
  if (nodes.size() != dom.node_count() || edges.size() != dom.edge_count()) {
    errors.push_back("node/edge map is not total on the domain");
    return errors;
  }
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (nodes[n] >= cod.node_count()) {
      errors.push_back("node '" + dom.node_id(n) + "' maps outside the codomain");
      continue;
    }
    if (dom.node_label(n) != cod.node_label(nodes[n]))
      errors.push_back("node '" + dom.node_id(n) + "' changes label");
  }
  if (!errors.empty()) return errors;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e] >= cod.edge_count()) {
      errors.push_back("edge '" + dom.edge_id(e) + "' maps outside the codomain");
      continue;
    }
    if (dom.edge_label(e) != cod.edge_label(edges[e]))
      errors.push_back("edge '" + dom.edge_id(e) + "' changes label");
    if (nodes[dom.src(e)] != cod.src(edges[e]))
      errors.push_back("edge '" + dom.edge_id(e) + "' breaks source preservation");
    if (nodes[dom.tgt(e)] != cod.tgt(edges[e]))
      errors.push_back("edge '" + dom.edge_id(e) + "' breaks target preservation");
  }
  return errors;
}

/// A structure- and label-preserving map between graphs.
class Morphism {
 public:
  /// Tag for internal constructions that are correct by construction.
  struct Unchecked {};

  Morphism(Graph dom, Graph cod, std::vector<std::size_t> nodes, std::vector<std::size_t> edges)
      : dom_(std::move(dom)), cod_(std::move(cod)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    auto errors = morphism_violations(dom_, cod_, nodes_, edges_);
    if (!errors.empty()) throw Error("invalid morphism: " + join_lines(errors));
  }

  Morphism(Unchecked, Graph dom, Graph cod, std::vector<std::size_t> nodes,
           std::vector<std::size_t> edges)
      : dom_(std::move(dom)), cod_(std::move(cod)), nodes_(std::move(nodes)), edges_(std::move(edges)) {}

  static Morphism from_ids(Graph dom, Graph cod, const std::map<std::string, std::string>& nodes,
                           const std::map<std::string, std::string>& edges) {
    std::vector<std::size_t> nm(dom.node_count()), em(dom.edge_count());
    for (std::size_t n = 0; n < dom.node_count(); ++n) {
      auto it = nodes.find(dom.node_id(n));
      if (it == nodes.end()) throw Error("morphism misses node '" + dom.node_id(n) + "'");
      nm[n] = cod.node_index(it->second);
    }
    for (std::size_t e = 0; e < dom.edge_count(); ++e) {
      auto it = edges.find(dom.edge_id(e));
      if (it == edges.end()) throw Error("morphism misses edge '" + dom.edge_id(e) + "'");
      em[e] = cod.edge_index(it->second);
    }
    return Morphism(std::move(dom), std::move(cod), std::move(nm), std::move(em));
  }

  static Morphism identity(const Graph& g) {
    std::vector<std::size_t> nm(g.node_count()), em(g.edge_count());
    for (std::size_t i = 0; i < nm.size(); ++i) nm[i] = i;
    for (std::size_t i = 0; i < em.size(); ++i) em[i] = i;
    return Morphism(Unchecked{}, g, g, std::move(nm), std::move(em));
  }

  /// The unique morphism out of the empty graph.
  static Morphism from_empty(const Graph& cod) { return Morphism(Unchecked{}, Graph(), cod, {}, {}); }

  /// Inclusion of `sub` into `host`, matching items by id.
  static Morphism inclusion(const Graph& sub, const Graph& host) {
    std::vector<std::size_t> nm(sub.node_count()), em(sub.edge_count());
    for (std::size_t n = 0; n < nm.size(); ++n) nm[n] = host.node_index(sub.node_id(n));
    for (std::size_t e = 0; e < em.size(); ++e) em[e] = host.edge_index(sub.edge_id(e));
    return Morphism(sub, host, std::move(nm), std::move(em));
  }

  const Graph& dom() const noexcept { return dom_; }
  const Graph& cod() const noexcept { return cod_; }
  std::size_t node(std::size_t n) const { return nodes_.at(n); }
  std::size_t edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<std::size_t>& node_map() const noexcept { return nodes_; }
  const std::vector<std::size_t>& edge_map() const noexcept { return edges_; }

  std::string summary() const {
    std::string s = "[";
    for (std::size_t n = 0; n < nodes_.size(); ++n)
      s += (n ? "," : "") + dom_.node_id(n) + "->" + cod_.node_id(nodes_[n]);
    s += " |";
    for (std::size_t e = 0; e < edges_.size(); ++e)
      s += (e ? "," : "") + std::string(" ") + dom_.edge_id(e) + "->" + cod_.edge_id(edges_[e]);
    return s + "]";
  }

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  Graph dom_;
  Graph cod_;
  std::vector<std::size_t> nodes_;
  std::vector<std::size_t> edges_;
};

/// `f` followed by `g`, i.e. g ∘ f.
inline Morphism compose(const Morphism& f, const Morphism& g) {
  if (!(f.cod() == g.dom())) throw Error("compose: codomain of the first morphism is not the domain of the second");
  std::vector<std::size_t> nm(f.dom().node_count()), em(f.dom().edge_count());
  for (std::size_t n = 0; n < nm.size(); ++n) nm[n] = g.node(f.node(n));
  for (std::size_t e = 0; e < em.size(); ++e) em[e] = g.edge(f.edge(e));
  return Morphism(Morphism::Unchecked{}, f.dom(), g.cod(), std::move(nm), std::move(em));
}

namespace detail {
inline bool injective(const std::vector<std::size_t>& map, std::size_t range) {
  std::vector<bool> seen(range, false);
  for (auto x : map) {
    if (seen[x]) return false;
    seen[x] = true;
  }
  return true;
}
}  // namespace detail

/// Monos in graphs are exactly the componentwise injective morphisms.
inline bool is_mono(const Morphism& f) {
  return detail::injective(f.node_map(), f.cod().node_count()) &&
         detail::injective(f.edge_map(), f.cod().edge_count());
}

inline bool is_iso(const Morphism& f) {
  return f.dom().node_count() == f.cod().node_count() &&
         f.dom().edge_count() == f.cod().edge_count() && is_mono(f);
}

inline Morphism inverse(const Morphism& iso) {
  if (!is_iso(iso)) throw Error("inverse: morphism is not an isomorphism");
  std::vector<std::size_t> nm(iso.cod().node_count()), em(iso.cod().edge_count());
  for (std::size_t n = 0; n < iso.dom().node_count(); ++n) nm[iso.node(n)] = n;
  for (std::size_t e = 0; e < iso.dom().edge_count(); ++e) em[iso.edge(e)] = e;
  return Morphism(Morphism::Unchecked{}, iso.cod(), iso.dom(), std::move(nm), std::move(em));
}

inline Subgraph image(const Morphism& f) {
  Subgraph s = Subgraph::none(f.cod());
  for (auto n : f.node_map()) s.nodes[n] = true;
  for (auto e : f.edge_map()) s.edges[e] = true;
  return s;
}

/// `f` with its codomain narrowed to `sub`, a graph whose items are items of
/// f's codomain (matched by id).
inline Morphism corestrict(const Morphism& f, const Graph& sub) {
  std::vector<std::size_t> nm(f.dom().node_count()), em(f.dom().edge_count());
  for (std::size_t n = 0; n < nm.size(); ++n) nm[n] = sub.node_index(f.cod().node_id(f.node(n)));
  for (std::size_t e = 0; e < em.size(); ++e) em[e] = sub.edge_index(f.cod().edge_id(f.edge(e)));
  return Morphism(f.dom(), sub, std::move(nm), std::move(em));
}

}  // namespace adhesive
