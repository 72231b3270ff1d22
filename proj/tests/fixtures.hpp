#pragma once

#include "adhesive/adhesive.hpp"

// Graphs shared by the test programs.
namespace fixtures {

using namespace adhesive;

// Nodes u, w, x; edges u->w, u->x, w->x and a loop at w.
inline Graph looped_triangle() {
  return graph_of({"u", "w", "x"}, {{"uw", "u", "w"}, {"ux", "u", "x"}, {"wx", "w", "x"}, {"ww", "w", "w"}});
}

inline Graph edge(const std::string& id, const std::string& s, const std::string& t) {
  return graph_of(s == t ? std::vector<std::string>{s} : std::vector<std::string>{s, t}, {{id, s, t}});
}

// The span e1 <- v -> e2 whose pushout is the path u -> v -> w.
inline Span edge_span() {
  auto v = graph_of({"v"});
  return {Morphism::inclusion(v, edge("e", "u", "v")), Morphism::inclusion(v, edge("f", "v", "w"))};
}

inline Graph path3() { return graph_of({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}}); }

// The rule deleting x->u and fusing x, z into v while x->z becomes a loop.
struct Worked {
  Graph L = graph_of({"u", "x", "z"}, {{"xu", "x", "u"}, {"xz", "x", "z"}});
  Graph K = graph_of({"u", "x", "z"}, {{"xz", "x", "z"}});
  Graph R = graph_of({"u", "v"}, {{"loop", "v", "v"}});
  Graph X = graph_of({"u", "x", "y", "z"}, {{"xu", "x", "u"}, {"xz", "x", "z"}, {"uy", "u", "y"}});
  Rule rule{Morphism::inclusion(K, L),
            Morphism::from_ids(K, R, {{"u", "u"}, {"x", "v"}, {"z", "v"}}, {{"xz", "loop"}})};
  Morphism m = Morphism::inclusion(L, X);

  // The host split left / interface / right of the interface {x, z}.
  Cocone span_decomposition() const {
    auto left = graph_of({"u", "x", "y", "z"}, {{"xu", "x", "u"}, {"uy", "u", "y"}});
    auto iface = graph_of({"x", "z"});
    auto right = graph_of({"x", "z"}, {{"xz", "x", "z"}});
    DiagramShape shape{{"left", "iface", "right"}, {{"l", "iface", "left"}, {"r", "iface", "right"}}};
    Diagram d{shape, {left, iface, right}, {Morphism::inclusion(iface, left), Morphism::inclusion(iface, right)}};
    return {d, X, {Morphism::inclusion(left, X), Morphism::inclusion(iface, X), Morphism::inclusion(right, X)}};
  }

  // R split into parts by subgraph; the loop goes where `loop_at` says.
  Cocone rhs_split(const std::string& loop_at) const {
    auto uv = graph_of({"u", "v"});
    auto v = graph_of({"v"});
    auto vl = graph_of({"v"}, {{"loop", "v", "v"}});
    auto uvl = graph_of({"u", "v"}, {{"loop", "v", "v"}});
    Graph left = loop_at == "left" ? uvl : uv;
    Graph right = loop_at == "left" ? v : vl;
    DiagramShape shape{{"left", "iface", "right"}, {{"l", "iface", "left"}, {"r", "iface", "right"}}};
    Diagram d{shape, {left, v, right}, {Morphism::inclusion(v, left), Morphism::inclusion(v, right)}};
    return {d, R, {Morphism::inclusion(left, R), Morphism::inclusion(v, R), Morphism::inclusion(right, R)}};
  }
};

}  // namespace fixtures
