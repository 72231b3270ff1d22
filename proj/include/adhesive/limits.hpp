#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adhesive/graph.hpp"
#include "adhesive/search.hpp"

namespace adhesive {

/// Two morphisms out of a common apex.
struct Span {
  Morphism left;
  Morphism right;
  const Graph& apex() const { return left.dom(); }
};

/// Two morphisms into a common apex.
struct Cospan {
  Morphism left;
  Morphism right;
  const Graph& apex() const { return left.cod(); }
};

/// A commuting-square candidate
///
///     A --top--> B
///     |          |
///   left       right
///     v          v
///     C -bottom> D
struct Square {
  Morphism top;
  Morphism left;
  Morphism right;
  Morphism bottom;
};

struct ShapeArrow {
  std::string id;
  std::string src;
  std::string tgt;
  friend bool operator==(const ShapeArrow&, const ShapeArrow&) = default;
};

/// The generating graph of an index category. Composites are not stored;
/// they never change a colimit.
struct DiagramShape {
  std::vector<std::string> objects;
  std::vector<ShapeArrow> arrows;

  std::size_t object_index(const std::string& id) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == id) return i;
    throw Error("unknown shape object '" + id + "'");
  }
  std::size_t src(std::size_t e) const { return object_index(arrows.at(e).src); }
  std::size_t tgt(std::size_t e) const { return object_index(arrows.at(e).tgt); }

  std::vector<std::string> violations() const {
    std::vector<std::string> errors;
    std::set<std::string> seen;
    for (const auto& o : objects)
      if (!seen.insert(o).second) errors.push_back("duplicate shape object '" + o + "'");
    std::set<std::string> arrow_ids;
    for (const auto& a : arrows) {
      if (!arrow_ids.insert(a.id).second) errors.push_back("duplicate shape arrow '" + a.id + "'");
      if (!seen.contains(a.src) || !seen.contains(a.tgt))
        errors.push_back("shape arrow '" + a.id + "' has an unknown endpoint");
    }
    return errors;
  }

  static DiagramShape single(const std::string& id = "0") { return {{id}, {}}; }

  friend bool operator==(const DiagramShape&, const DiagramShape&) = default;
};

/// A functor from a shape into graphs, stored positionally: `objects[i]`
/// sits over `shape.objects[i]` and `arrows[e]` over `shape.arrows[e]`.
struct Diagram {
  DiagramShape shape;
  std::vector<Graph> objects;
  std::vector<Morphism> arrows;

  std::vector<std::string> violations() const {
    auto errors = shape.violations();
    if (!errors.empty()) return errors;
    if (objects.size() != shape.objects.size()) errors.push_back("diagram object count does not match its shape");
    if (arrows.size() != shape.arrows.size()) errors.push_back("diagram arrow count does not match its shape");
    if (!errors.empty()) return errors;
    for (std::size_t e = 0; e < arrows.size(); ++e) {
      if (!(arrows[e].dom() == objects[shape.src(e)]) || !(arrows[e].cod() == objects[shape.tgt(e)]))
        errors.push_back("arrow '" + shape.arrows[e].id + "' does not connect its shape endpoints");
    }
    return errors;
  }
};

struct Cocone {
  Diagram diagram;
  Graph apex;
  std::vector<Morphism> legs;

  /// Leg targets and the naturality condition leg_j ∘ D(e) = leg_i.
  std::vector<std::string> violations() const {
    auto errors = diagram.violations();
    if (!errors.empty()) return errors;
    if (legs.size() != diagram.objects.size()) return {"cocone leg count does not match its diagram"};
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (!(legs[i].dom() == diagram.objects[i]) || !(legs[i].cod() == apex))
        errors.push_back("leg at '" + diagram.shape.objects[i] + "' has the wrong domain or codomain");
    if (!errors.empty()) return errors;
    for (std::size_t e = 0; e < diagram.arrows.size(); ++e) {
      const auto& s = diagram.shape;
      if (!(compose(diagram.arrows[e], legs[s.tgt(e)]) == legs[s.src(e)]))
        errors.push_back("cocone is not natural at arrow '" + s.arrows[e].id + "'");
    }
    return errors;
  }
};

struct NatTrans {
  Diagram dom;
  Diagram cod;
  std::vector<Morphism> components;

  std::vector<std::string> violations() const {
    std::vector<std::string> errors;
    if (!(dom.shape == cod.shape)) return {"natural transformation between diagrams of different shapes"};
    if (components.size() != dom.objects.size()) return {"component count does not match the shape"};
    for (std::size_t i = 0; i < components.size(); ++i)
      if (!(components[i].dom() == dom.objects[i]) || !(components[i].cod() == cod.objects[i]))
        errors.push_back("component at '" + dom.shape.objects[i] + "' has the wrong domain or codomain");
    if (!errors.empty()) return errors;
    for (std::size_t e = 0; e < dom.arrows.size(); ++e) {
      const auto& s = dom.shape;
      if (!(compose(components[s.src(e)], cod.arrows[e]) == compose(dom.arrows[e], components[s.tgt(e)])))
        errors.push_back("naturality fails at arrow '" + s.arrows[e].id + "'");
    }
    return errors;
  }
};

inline bool commutes(const Square& s) {
  return s.top.dom() == s.left.dom() && s.top.cod() == s.right.dom() && s.left.cod() == s.bottom.dom() &&
         s.right.cod() == s.bottom.cod() && compose(s.top, s.right) == compose(s.left, s.bottom);
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // The smaller index always becomes the root.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct GluePart {
  std::string name;
  Graph graph;
};

struct GlueLink {
  std::size_t from;
  std::size_t to;
  const Morphism* map;
};

enum class Naming {
  // Representative ids, qualified by part name only where they clash.
  colimit,
  // Part 0 keeps its ids; classes without a part-0 element keep theirs,
  // prefixed by `prefix` when given, or qualified when they clash.
  pushout,
};

struct GlueResult {
  Graph apex;
  std::vector<std::vector<std::size_t>> node_leg;
  std::vector<std::vector<std::size_t>> edge_leg;
};

inline std::string fresh(const std::string& base, std::set<std::string>& used) {
  std::string name = base;
  for (std::size_t k = 1; used.contains(name); ++k) name = base + "#" + std::to_string(k);
  used.insert(name);
  return name;
}

// Disjoint union of `parts` quotiented by x ~ map(x) for each link.
// Each class is represented by its least (part, element) member.
inline GlueResult glue(const std::vector<GluePart>& parts, const std::vector<GlueLink>& links, Naming naming,
                       const std::string& prefix = "") {
  std::vector<std::size_t> noff{0}, eoff{0};
  for (const auto& p : parts) {
    noff.push_back(noff.back() + p.graph.node_count());
    eoff.push_back(eoff.back() + p.graph.edge_count());
  }
  UnionFind nodes(noff.back()), edges(eoff.back());
  for (const auto& l : links) {
    for (std::size_t n = 0; n < l.map->node_map().size(); ++n)
      nodes.unite(noff[l.from] + n, noff[l.to] + l.map->node(n));
    for (std::size_t e = 0; e < l.map->edge_map().size(); ++e)
      edges.unite(eoff[l.from] + e, eoff[l.to] + l.map->edge(e));
  }
  auto locate = [](const std::vector<std::size_t>& off, std::size_t g) {
    std::size_t p = static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), g) - off.begin()) - 1;
    return std::pair{p, g - off[p]};
  };

  struct Sort {
    std::vector<std::size_t> roots;
    std::map<std::size_t, std::size_t> class_of_root;
    std::vector<std::string> names;
  };
  auto collect = [&](UnionFind& uf, const std::vector<std::size_t>& off, bool is_node) {
    Sort s;
    for (std::size_t g = 0; g < off.back(); ++g)
      if (uf.find(g) == g) {
        s.class_of_root[g] = s.roots.size();
        s.roots.push_back(g);
      }
    for (std::size_t g = 0; g < off.back(); ++g) {
      auto [p, x] = locate(off, g);
      auto [rp, rx] = locate(off, uf.find(g));
      const auto& mine = is_node ? parts[p].graph.node_label(x) : parts[p].graph.edge_label(x);
      const auto& theirs = is_node ? parts[rp].graph.node_label(rx) : parts[rp].graph.edge_label(rx);
      if (mine != theirs) {
        const auto& id = is_node ? parts[p].graph.node_id(x) : parts[p].graph.edge_id(x);
        throw Error(std::string("label conflict: ") + (is_node ? "node '" : "edge '") + id + "' of '" +
                    parts[p].name + "' is glued to an item labeled '" + theirs + "'");
      }
    }
    auto id_of = [&](std::size_t g) {
      auto [p, x] = locate(off, g);
      return is_node ? parts[p].graph.node_id(x) : parts[p].graph.edge_id(x);
    };
    std::set<std::string> used;
    if (naming == Naming::colimit) {
      std::map<std::string, int> count;
      for (auto r : s.roots) ++count[id_of(r)];
      for (auto r : s.roots) {
        auto id = id_of(r);
        s.names.push_back(fresh(count[id] == 1 ? id : parts[locate(off, r).first].name + ":" + id, used));
      }
    } else {
      s.names.resize(s.roots.size());
      for (std::size_t c = 0; c < s.roots.size(); ++c)
        if (locate(off, s.roots[c]).first == 0) s.names[c] = fresh(id_of(s.roots[c]), used);
      for (std::size_t c = 0; c < s.roots.size(); ++c) {
        auto [p, x] = locate(off, s.roots[c]);
        if (p == 0) continue;
        auto id = id_of(s.roots[c]);
        std::string base = prefix.empty() ? (used.contains(id) ? parts[p].name + ":" + id : id) : prefix + id;
        s.names[c] = fresh(base, used);
      }
    }
    return s;
  };
  Sort ns = collect(nodes, noff, true);
  Sort es = collect(edges, eoff, false);

  GraphData data;
  for (std::size_t c = 0; c < ns.roots.size(); ++c) {
    auto [p, x] = locate(noff, ns.roots[c]);
    data.nodes.push_back({ns.names[c], parts[p].graph.node_label(x)});
  }
  for (std::size_t c = 0; c < es.roots.size(); ++c) {
    auto [p, x] = locate(eoff, es.roots[c]);
    const auto& g = parts[p].graph;
    auto s = ns.class_of_root.at(nodes.find(noff[p] + g.src(x)));
    auto t = ns.class_of_root.at(nodes.find(noff[p] + g.tgt(x)));
    data.edges.push_back({es.names[c], ns.names[s], ns.names[t], g.edge_label(x)});
  }
  GlueResult r{Graph(std::move(data)), {}, {}};
  std::vector<std::size_t> node_pos(ns.roots.size()), edge_pos(es.roots.size());
  for (std::size_t c = 0; c < ns.roots.size(); ++c) node_pos[c] = r.apex.node_index(ns.names[c]);
  for (std::size_t c = 0; c < es.roots.size(); ++c) edge_pos[c] = r.apex.edge_index(es.names[c]);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    std::vector<std::size_t> nl, el;
    for (std::size_t x = 0; x < parts[p].graph.node_count(); ++x)
      nl.push_back(node_pos[ns.class_of_root.at(nodes.find(noff[p] + x))]);
    for (std::size_t x = 0; x < parts[p].graph.edge_count(); ++x)
      el.push_back(edge_pos[es.class_of_root.at(edges.find(eoff[p] + x))]);
    r.node_leg.push_back(std::move(nl));
    r.edge_leg.push_back(std::move(el));
  }
  return r;
}

}  // namespace detail

/// Canonical colimit: the disjoint union of all objects quotiented by the
/// arrows. Throws on label conflicts.
inline Cocone colimit(const Diagram& d) {
  auto errors = d.violations();
  if (!errors.empty()) throw Error("invalid diagram: " + join_lines(errors));
  std::vector<detail::GluePart> parts;
  for (std::size_t i = 0; i < d.objects.size(); ++i) parts.push_back({d.shape.objects[i], d.objects[i]});
  std::vector<detail::GlueLink> links;
  for (std::size_t e = 0; e < d.arrows.size(); ++e) links.push_back({d.shape.src(e), d.shape.tgt(e), &d.arrows[e]});
  auto g = detail::glue(parts, links, detail::Naming::colimit);
  Cocone c{d, g.apex, {}};
  for (std::size_t i = 0; i < d.objects.size(); ++i)
    c.legs.emplace_back(Morphism::Unchecked{}, d.objects[i], g.apex, g.node_leg[i], g.edge_leg[i]);
  return c;
}

/// Canonical pushout of a span B <-f- A -g-> C. Items of B keep their ids;
/// items only reached from C keep theirs, prefixed by `prefix` if non-empty
/// and otherwise qualified with "right:" on clashes.
inline Cospan pushout(const Span& s, const std::string& prefix = "") {
  if (!(s.left.dom() == s.right.dom())) throw Error("pushout: span legs do not share a domain");
  std::vector<detail::GluePart> parts{{"left", s.left.cod()}, {"right", s.right.cod()}, {"apex", s.apex()}};
  std::vector<detail::GlueLink> links{{2, 0, &s.left}, {2, 1, &s.right}};
  auto g = detail::glue(parts, links, detail::Naming::pushout, prefix);
  return {Morphism(Morphism::Unchecked{}, s.left.cod(), g.apex, g.node_leg[0], g.edge_leg[0]),
          Morphism(Morphism::Unchecked{}, s.right.cod(), g.apex, g.node_leg[1], g.edge_leg[1])};
}

/// Canonical pullback of f: B -> D and g: C -> D, the componentwise fiber
/// product. Ids come from B when g is mono, else from C when f is mono,
/// else are pairs "b×c".
inline Span pullback(const Morphism& f, const Morphism& g) {
  if (!(f.cod() == g.cod())) throw Error("pullback: morphisms do not share a codomain");
  const Graph& b = f.dom();
  const Graph& c = g.dom();
  bool use_b = is_mono(g);
  bool use_c = !use_b && is_mono(f);
  auto name = [&](const std::string& x, const std::string& y) {
    return use_b ? x : use_c ? y : x + "×" + y;
  };
  GraphData data;
  std::vector<std::pair<std::size_t, std::size_t>> np, ep;
  std::map<std::pair<std::size_t, std::size_t>, std::string> node_name;
  for (std::size_t x = 0; x < b.node_count(); ++x)
    for (std::size_t y = 0; y < c.node_count(); ++y)
      if (f.node(x) == g.node(y)) {
        auto id = name(b.node_id(x), c.node_id(y));
        node_name[{x, y}] = id;
        data.nodes.push_back({id, b.node_label(x)});
        np.push_back({x, y});
      }
  for (std::size_t x = 0; x < b.edge_count(); ++x)
    for (std::size_t y = 0; y < c.edge_count(); ++y)
      if (f.edge(x) == g.edge(y)) {
        data.edges.push_back({name(b.edge_id(x), c.edge_id(y)), node_name.at({b.src(x), c.src(y)}),
                              node_name.at({b.tgt(x), c.tgt(y)}), b.edge_label(x)});
        ep.push_back({x, y});
      }
  Graph p(std::move(data));
  std::vector<std::size_t> l1(p.node_count()), r1(p.node_count()), l2(p.edge_count()), r2(p.edge_count());
  for (std::size_t k = 0; k < np.size(); ++k) {
    auto n = p.node_index(name(b.node_id(np[k].first), c.node_id(np[k].second)));
    l1[n] = np[k].first;
    r1[n] = np[k].second;
  }
  for (std::size_t k = 0; k < ep.size(); ++k) {
    auto e = p.edge_index(name(b.edge_id(ep[k].first), c.edge_id(ep[k].second)));
    l2[e] = ep[k].first;
    r2[e] = ep[k].second;
  }
  return {Morphism(Morphism::Unchecked{}, p, b, l1, l2), Morphism(Morphism::Unchecked{}, p, c, r1, r2)};
}

/// The morphism u: apex(colim) -> target with u ∘ colim.legs[i] = legs[i],
/// or nullopt if the given legs do not factor through `colim`.
inline std::optional<Morphism> induced_from_colimit(const Cocone& colim, const std::vector<Morphism>& legs,
                                                    const Graph& target) {
  if (legs.size() != colim.legs.size()) return std::nullopt;
  constexpr std::size_t unset = SIZE_MAX;
  std::vector<std::size_t> nm(colim.apex.node_count(), unset), em(colim.apex.edge_count(), unset);
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (!(legs[i].cod() == target) || !(legs[i].dom() == colim.legs[i].dom())) return std::nullopt;
    for (std::size_t x = 0; x < legs[i].node_map().size(); ++x) {
      auto& slot = nm[colim.legs[i].node(x)];
      if (slot != unset && slot != legs[i].node(x)) return std::nullopt;
      slot = legs[i].node(x);
    }
    for (std::size_t x = 0; x < legs[i].edge_map().size(); ++x) {
      auto& slot = em[colim.legs[i].edge(x)];
      if (slot != unset && slot != legs[i].edge(x)) return std::nullopt;
      slot = legs[i].edge(x);
    }
  }
  for (auto v : nm)
    if (v == unset) return std::nullopt;
  for (auto v : em)
    if (v == unset) return std::nullopt;
  if (!morphism_violations(colim.apex, target, nm, em).empty()) return std::nullopt;
  return Morphism(Morphism::Unchecked{}, colim.apex, target, std::move(nm), std::move(em));
}

/// Mediator from a pushout cospan (in1: B -> D, in2: C -> D) to another
/// cocone (q1: B -> Q, q2: C -> Q).
inline std::optional<Morphism> induced_from_pushout(const Cospan& po, const Morphism& q1, const Morphism& q2) {
  Cocone c{{DiagramShape{{"left", "right"}, {}}, {po.left.dom(), po.right.dom()}, {}}, po.apex(), {po.left, po.right}};
  return induced_from_colimit(c, {q1, q2}, q1.cod());
}

/// The morphism u: Q -> apex(pb) with pb.left ∘ u = q1 and pb.right ∘ u = q2,
/// or nullopt if (q1, q2) does not commute over the pullback's base.
inline std::optional<Morphism> induced_into_pullback(const Span& pb, const Morphism& q1, const Morphism& q2) {
  if (!(q1.dom() == q2.dom()) || !(q1.cod() == pb.left.cod()) || !(q2.cod() == pb.right.cod()))
    return std::nullopt;
  const Graph& p = pb.apex();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> nodes, edges;
  for (std::size_t n = 0; n < p.node_count(); ++n) nodes[{pb.left.node(n), pb.right.node(n)}] = n;
  for (std::size_t e = 0; e < p.edge_count(); ++e) edges[{pb.left.edge(e), pb.right.edge(e)}] = e;
  std::vector<std::size_t> nm, em;
  for (std::size_t x = 0; x < q1.node_map().size(); ++x) {
    auto it = nodes.find({q1.node(x), q2.node(x)});
    if (it == nodes.end()) return std::nullopt;
    nm.push_back(it->second);
  }
  for (std::size_t x = 0; x < q1.edge_map().size(); ++x) {
    auto it = edges.find({q1.edge(x), q2.edge(x)});
    if (it == edges.end()) return std::nullopt;
    em.push_back(it->second);
  }
  return Morphism(Morphism::Unchecked{}, q1.dom(), p, std::move(nm), std::move(em));
}

/// (right, bottom) is a pushout of (top, left).
inline bool is_pushout(const Square& s) {
  if (!commutes(s)) return false;
  auto po = pushout({s.top, s.left});
  auto u = induced_from_pushout(po, s.right, s.bottom);
  return u && is_iso(*u);
}

/// (top, left) is a pullback of (right, bottom).
inline bool is_pullback(const Square& s) {
  if (!commutes(s)) return false;
  auto pb = pullback(s.right, s.bottom);
  auto u = induced_into_pullback(pb, s.top, s.left);
  return u && is_iso(*u);
}

inline bool is_colimit(const Cocone& c) {
  if (!c.violations().empty()) return false;
  auto canon = colimit(c.diagram);
  auto u = induced_from_colimit(canon, c.legs, c.apex);
  return u && is_iso(*u);
}

/// The naturality square of `t` at shape arrow `e`.
inline Square naturality_square(const NatTrans& t, std::size_t e) {
  const auto& s = t.dom.shape;
  return {t.dom.arrows[e], t.components[s.src(e)], t.components[s.tgt(e)], t.cod.arrows[e]};
}

inline bool is_cartesian(const NatTrans& t) {
  if (!t.violations().empty()) return false;
  for (std::size_t e = 0; e < t.dom.arrows.size(); ++e)
    if (!is_pullback(naturality_square(t, e))) return false;
  return true;
}

inline NatTrans identity_nat(const Diagram& d) {
  NatTrans t{d, d, {}};
  for (const auto& g : d.objects) t.components.push_back(Morphism::identity(g));
  return t;
}

struct PulledCocone {
  Diagram diagram;
  /// Cartesian transformation from `diagram` to the original diagram.
  NatTrans tau;
  /// Cocone over `diagram` with apex dom(t).
  Cocone cocone;
};

/// Pulls every leg of `c` back along t: T -> apex(c).
inline PulledCocone pullback_cocone(const Cocone& c, const Morphism& t) {
  if (!(t.cod() == c.apex)) throw Error("pullback_cocone: morphism does not target the cocone apex");
  const auto& shape = c.diagram.shape;
  std::vector<Span> pbs;
  for (const auto& leg : c.legs) pbs.push_back(pullback(t, leg));
  Diagram h{shape, {}, {}};
  for (const auto& pb : pbs) h.objects.push_back(pb.apex());
  for (std::size_t e = 0; e < shape.arrows.size(); ++e) {
    auto i = shape.src(e), j = shape.tgt(e);
    auto u = induced_into_pullback(pbs[j], pbs[i].left, compose(pbs[i].right, c.diagram.arrows[e]));
    if (!u) throw InvariantViolation("pullback_cocone: cocone is not natural at '" + shape.arrows[e].id + "'");
    h.arrows.push_back(*u);
  }
  PulledCocone r{h, {h, c.diagram, {}}, {h, t.dom(), {}}};
  for (const auto& pb : pbs) {
    r.tau.components.push_back(pb.right);
    r.cocone.legs.push_back(pb.left);
  }
  return r;
}

/// A system of unknown isomorphisms phi_c: first_c -> second_c, one per
/// corner, subject to second ∘ phi_src = phi_tgt ∘ first for every arrow.
struct IsoSystem {
  struct Arrow {
    std::size_t src;
    std::size_t tgt;
    Morphism first;   // first_src -> first_tgt
    Morphism second;  // second_src -> second_tgt
  };
  std::vector<std::pair<Graph, Graph>> corners;
  std::vector<Arrow> arrows;
  std::vector<std::optional<Morphism>> fixed;

  std::size_t add_corner(Graph first, Graph second, std::optional<Morphism> fix = std::nullopt) {
    corners.emplace_back(std::move(first), std::move(second));
    fixed.push_back(std::move(fix));
    return corners.size() - 1;
  }
  void add_arrow(std::size_t src, std::size_t tgt, Morphism first, Morphism second) {
    arrows.push_back({src, tgt, std::move(first), std::move(second)});
  }
};

namespace detail {

inline bool arrow_holds(const IsoSystem::Arrow& a, const Morphism& ps, const Morphism& pt) {
  for (std::size_t x = 0; x < a.first.node_map().size(); ++x)
    if (a.second.node(ps.node(x)) != pt.node(a.first.node(x))) return false;
  for (std::size_t x = 0; x < a.first.edge_map().size(); ++x)
    if (a.second.edge(ps.edge(x)) != pt.edge(a.first.edge(x))) return false;
  return true;
}

inline bool solve_corner(const IsoSystem& sys, std::vector<std::optional<Morphism>>& phi, std::size_t next) {
  while (next < phi.size() && phi[next]) ++next;
  if (next == phi.size()) return true;
  const std::size_t c = next;
  const Graph& g1 = sys.corners[c].first;
  const Graph& g2 = sys.corners[c].second;
  constexpr std::size_t free = SIZE_MAX;
  std::vector<std::size_t> forced_node(g1.node_count(), free), forced_edge(g1.edge_count(), free);
  bool impossible = false;
  auto force = [&](std::vector<std::size_t>& slot, std::size_t x, std::size_t v) {
    if (slot[x] != free && slot[x] != v) impossible = true;
    slot[x] = v;
  };
  std::vector<const IsoSystem::Arrow*> out_fixed;
  for (const auto& a : sys.arrows) {
    if (a.tgt == c && a.src != c && phi[a.src]) {
      for (std::size_t x = 0; x < a.first.node_map().size(); ++x)
        force(forced_node, a.first.node(x), a.second.node(phi[a.src]->node(x)));
      for (std::size_t x = 0; x < a.first.edge_map().size(); ++x)
        force(forced_edge, a.first.edge(x), a.second.edge(phi[a.src]->edge(x)));
    }
    if (a.src == c && a.tgt != c && phi[a.tgt]) out_fixed.push_back(&a);
  }
  if (impossible) return false;
  SearchOptions opt;
  opt.node_allowed = [&](std::size_t x, std::size_t y) {
    if (forced_node[x] != free && forced_node[x] != y) return false;
    for (const auto* a : out_fixed)
      if (a->second.node(y) != phi[a->tgt]->node(a->first.node(x))) return false;
    return true;
  };
  opt.edge_allowed = [&](std::size_t x, std::size_t y) {
    if (forced_edge[x] != free && forced_edge[x] != y) return false;
    for (const auto* a : out_fixed)
      if (a->second.edge(y) != phi[a->tgt]->edge(a->first.edge(x))) return false;
    return true;
  };
  opt.iso = true;
  bool solved = false;
  for_each_morphism(g1, g2, opt, [&](const auto& nm, const auto& em) {
    phi[c].emplace(Morphism::Unchecked{}, g1, g2, nm, em);
    for (const auto& a : sys.arrows)
      if (a.src == c && a.tgt == c && !arrow_holds(a, *phi[c], *phi[c])) return true;
    if (solve_corner(sys, phi, c + 1)) {
      solved = true;
      return false;
    }
    return true;
  });
  if (!solved) phi[c].reset();
  return solved;
}

}  // namespace detail

/// Solves an IsoSystem by backtracking over corners in index order, so
/// corners adjacent to fixed ones should come first. Returns one iso per
/// corner, or nullopt if the system has no solution.
inline std::optional<std::vector<Morphism>> solve_isos(const IsoSystem& sys) {
  std::vector<std::optional<Morphism>> phi = sys.fixed;
  phi.resize(sys.corners.size());
  for (const auto& a : sys.arrows)
    if (phi[a.src] && phi[a.tgt] && !detail::arrow_holds(a, *phi[a.src], *phi[a.tgt])) return std::nullopt;
  if (!detail::solve_corner(sys, phi, 0)) return std::nullopt;
  std::vector<Morphism> out;
  for (auto& p : phi) out.push_back(std::move(*p));
  return out;
}

/// Per-object isomorphisms between two cocones with the same apex that are
/// natural in the shape and commute with the legs.
inline std::optional<std::vector<Morphism>> find_cocone_iso(const Cocone& a, const Cocone& b) {
  if (!(a.diagram.shape == b.diagram.shape) || !(a.apex == b.apex)) return std::nullopt;
  IsoSystem sys;
  std::size_t apex = sys.add_corner(a.apex, b.apex, Morphism::identity(a.apex));
  for (std::size_t i = 0; i < a.diagram.objects.size(); ++i) sys.add_corner(a.diagram.objects[i], b.diagram.objects[i]);
  for (std::size_t i = 0; i < a.legs.size(); ++i) sys.add_arrow(i + 1, apex, a.legs[i], b.legs[i]);
  const auto& s = a.diagram.shape;
  for (std::size_t e = 0; e < s.arrows.size(); ++e)
    sys.add_arrow(s.src(e) + 1, s.tgt(e) + 1, a.diagram.arrows[e], b.diagram.arrows[e]);
  auto phi = solve_isos(sys);
  if (!phi) return std::nullopt;
  phi->erase(phi->begin());
  return phi;
}

}  // namespace adhesive
