#include <gtest/gtest.h>

#include "adhesive/random.hpp"
#include "fixtures.hpp"

using namespace adhesive;

namespace {

// Disjoint union of two graphs with tagged ids, as the expected coproduct.
Graph tagged_union(const Graph& a, const Graph& b) {
  GraphData d;
  for (const auto* g : {&a, &b}) {
    std::string tag = g == &a ? "A." : "B.";
    for (const auto& n : g->data().nodes) d.nodes.push_back({tag + n.id, n.label});
    for (const auto& e : g->data().edges) d.edges.push_back({tag + e.id, tag + e.src, tag + e.tgt, e.label});
  }
  return Graph(d);
}

Square with_extra_node(const Square& s) {
  auto ext = random::random_extension(*std::make_unique<random::Rng>(1), s.right.cod(), 1, 0);
  return {s.top, s.left, compose(s.right, ext), compose(s.bottom, ext)};
}

}  // namespace

TEST(Pullback, DisjointImagesGiveEmpty) {
  auto e = fixtures::edge("e", "s", "t");
  auto n = graph_of({"n"});
  auto pb = pullback(Morphism::from_ids(n, e, {{"n", "s"}}, {}), Morphism::from_ids(n, e, {{"n", "t"}}, {}));
  EXPECT_TRUE(pb.apex().empty());
  EXPECT_EQ(pb.apex().edge_count(), 0u);
}

TEST(Pullback, AlongIdentityIsDomain) {
  fixtures::Worked w;
  auto pb = pullback(Morphism::identity(w.X), w.m);
  EXPECT_TRUE(find_isomorphism(pb.apex(), w.L));
  EXPECT_TRUE(is_pullback({pb.left, pb.right, Morphism::identity(w.X), w.m}));
}

TEST(Pullback, KernelPairOfWorkedB) {
  fixtures::Worked w;
  const auto& b = w.rule.b();
  // Expected size: pairs of K-items with equal image under b.
  std::size_t nodes = 0, edges = 0;
  for (std::size_t x = 0; x < w.K.node_count(); ++x)
    for (std::size_t y = 0; y < w.K.node_count(); ++y) nodes += b.node(x) == b.node(y);
  for (std::size_t x = 0; x < w.K.edge_count(); ++x)
    for (std::size_t y = 0; y < w.K.edge_count(); ++y) edges += b.edge(x) == b.edge(y);
  auto pb = pullback(b, b);
  EXPECT_EQ(pb.apex().node_count(), nodes);
  EXPECT_EQ(pb.apex().edge_count(), edges);
  EXPECT_EQ(nodes, 5u);
  EXPECT_EQ(edges, 1u);
}

TEST(Pushout, EdgesOverNodeGivePath) {
  auto po = pushout(fixtures::edge_span());
  EXPECT_EQ(po.apex().node_count(), 3u);
  EXPECT_EQ(po.apex().edge_count(), 2u);
  EXPECT_TRUE(find_isomorphism(po.apex(), fixtures::path3()));
}

TEST(Pushout, OverEmptyIsDisjointUnion) {
  auto a = fixtures::edge("e", "s", "t");
  auto b = fixtures::looped_triangle();
  auto po = pushout({Morphism::from_empty(a), Morphism::from_empty(b)});
  EXPECT_TRUE(find_isomorphism(po.apex(), tagged_union(a, b)));
}

TEST(Pushout, AlongIdentityLeg) {
  fixtures::Worked w;
  auto po = pushout({Morphism::identity(w.K), w.rule.b()});
  EXPECT_TRUE(find_isomorphism(po.apex(), w.R));
}

TEST(Pushout, LabelConflictIsAnError) {
  auto n = graph_of({"n"});
  auto red = Graph(GraphData{{{"n", "red"}}, {}});
  auto blue = Graph(GraphData{{{"n", "blue"}}, {}});
  // n is unlabeled, so no morphism n -> red exists; glue through a labeled apex.
  auto apex = Graph(GraphData{{{"p", "red"}}, {}});
  auto f = Morphism::from_ids(apex, red, {{"p", "n"}}, {});
  EXPECT_THROW(Morphism::from_ids(apex, blue, {{"p", "n"}}, {}), Error);
  EXPECT_NO_THROW(pushout({f, f}));
}

TEST(Colimit, DecompositionRecoversGraph) {
  auto d = canonical_decomposition(fixtures::looped_triangle());
  auto c = colimit(d.cocone.diagram);
  EXPECT_TRUE(find_isomorphism(c.apex, fixtures::looped_triangle()));
}

TEST(Colimit, SingleObjectHasIdentityLeg) {
  auto g = fixtures::looped_triangle();
  auto c = colimit(Diagram{DiagramShape::single(), {g}, {}});
  EXPECT_EQ(c.apex, g);
  EXPECT_EQ(c.legs[0], Morphism::identity(g));
}

TEST(Colimit, SpanShapeAgreesWithPushout) {
  auto s = fixtures::edge_span();
  DiagramShape shape{{"l", "v", "r"}, {{"a", "v", "l"}, {"b", "v", "r"}}};
  auto c = colimit(Diagram{shape, {s.left.cod(), s.apex(), s.right.cod()}, {s.left, s.right}});
  EXPECT_TRUE(find_isomorphism(c.apex, pushout(s).apex()));
  EXPECT_TRUE(is_colimit(c));
}

TEST(Colimit, DiscreteShapeIsCoproduct) {
  auto a = fixtures::path3();
  auto b = fixtures::edge("l", "v", "v");
  auto c = colimit(Diagram{{{"a", "b"}, {}}, {a, b}, {}});
  EXPECT_TRUE(find_isomorphism(c.apex, tagged_union(a, b)));
}

TEST(Colimit, CoequalizerOfParallelPair) {
  auto n = graph_of({"n"});
  auto e = fixtures::edge("e", "s", "t");
  DiagramShape shape{{"0", "1"}, {{"f", "0", "1"}, {"g", "0", "1"}}};
  Diagram d{shape, {n, e}, {Morphism::from_ids(n, e, {{"n", "s"}}, {}), Morphism::from_ids(n, e, {{"n", "t"}}, {})}};
  auto c = colimit(d);
  EXPECT_TRUE(find_isomorphism(c.apex, fixtures::edge("l", "v", "v")));
}

TEST(Verifiers, CanonicalConstructionsPass) {
  auto s = fixtures::edge_span();
  auto po = pushout(s);
  Square sq{s.left, s.right, po.left, po.right};
  EXPECT_TRUE(is_pushout(sq));
  EXPECT_FALSE(is_pushout(with_extra_node(sq)));
  auto pb = pullback(po.left, po.right);
  EXPECT_TRUE(is_pullback({pb.left, pb.right, po.left, po.right}));
}

TEST(Verifiers, NonCommutingSquareFails) {
  auto n = graph_of({"n"});
  auto e = fixtures::edge("e", "s", "t");
  auto to_s = Morphism::from_ids(n, e, {{"n", "s"}}, {});
  auto to_t = Morphism::from_ids(n, e, {{"n", "t"}}, {});
  auto id = Morphism::identity(n);
  EXPECT_FALSE(is_pushout({id, id, to_s, to_t}));
  EXPECT_FALSE(is_pullback({id, id, to_s, to_t}));
}

TEST(Verifiers, WorkedDpoSquares) {
  fixtures::Worked w;
  auto ds = apply_rule(w.rule, w.m);
  EXPECT_TRUE(is_pushout(ds.left_square()));
  EXPECT_TRUE(is_pushout(ds.right_square()));
}

TEST(Verifiers, ColimitWithExtraNodeFails) {
  auto d = canonical_decomposition(fixtures::looped_triangle());
  EXPECT_TRUE(is_colimit(d.cocone));
  auto ext = random::random_extension(*std::make_unique<random::Rng>(1), d.cocone.apex, 1, 0);
  Cocone bigger = d.cocone;
  bigger.apex = ext.cod();
  for (auto& leg : bigger.legs) leg = compose(leg, ext);
  EXPECT_FALSE(is_colimit(bigger));
}

TEST(Cartesian, IdentityIsCartesian) {
  auto d = canonical_decomposition(fixtures::looped_triangle()).cocone.diagram;
  EXPECT_TRUE(is_cartesian(identity_nat(d)));
}

TEST(Cartesian, PulledBackCoconeIsCartesianAndColimit) {
  fixtures::Worked w;
  auto xi = w.span_decomposition();
  auto p = pullback_cocone(xi, w.m);
  EXPECT_TRUE(is_cartesian(p.tau));
  EXPECT_TRUE(is_colimit(p.cocone));
}

TEST(Cartesian, NodeIntoEdgeSourceIsNotCartesian) {
  auto node = graph_of({"n"});
  auto p = graph_of({"p"});
  auto e = fixtures::edge("e", "s", "t");
  DiagramShape shape{{"0", "1"}, {{"f", "0", "1"}}};
  Diagram dom{shape, {Graph(), node}, {Morphism::from_empty(node)}};
  Diagram cod{shape, {p, e}, {Morphism::from_ids(p, e, {{"p", "s"}}, {})}};
  NatTrans t{dom, cod, {Morphism::from_empty(p), Morphism::from_ids(node, e, {{"n", "s"}}, {})}};
  EXPECT_TRUE(t.violations().empty());
  EXPECT_FALSE(is_cartesian(t));
}

TEST(PullbackCocone, AlongIdentityIsSameCocone) {
  auto c = canonical_decomposition(fixtures::looped_triangle()).cocone;
  auto p = pullback_cocone(c, Morphism::identity(c.apex));
  EXPECT_TRUE(find_cocone_iso(p.cocone, c));
}

TEST(PullbackCocone, AlongEmptyMorphismIsEmpty) {
  auto c = canonical_decomposition(fixtures::looped_triangle()).cocone;
  auto p = pullback_cocone(c, Morphism::from_empty(c.apex));
  EXPECT_TRUE(p.cocone.apex.empty());
  for (const auto& g : p.diagram.objects) EXPECT_TRUE(g.empty());
  EXPECT_TRUE(is_colimit(p.cocone));
}

TEST(PullbackCocone, RejectsForeignMorphism) {
  auto c = canonical_decomposition(fixtures::looped_triangle()).cocone;
  EXPECT_THROW(pullback_cocone(c, Morphism::identity(fixtures::path3())), Error);
}

TEST(Properties, RandomConstructionsPassTheirVerifiers) {
  random::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = random::random_graph(rng, random::uniform(rng, 0, 3), random::uniform(rng, 0, 3));
    auto b = random::random_graph(rng, random::uniform(rng, 1, 3), random::uniform(rng, 0, 3));
    auto c = random::random_graph(rng, random::uniform(rng, 1, 3), random::uniform(rng, 0, 3));
    auto f = random::random_morphism(rng, a, b);
    auto g = random::random_morphism(rng, a, c);
    if (!f || !g) continue;
    auto po = pushout({*f, *g});
    ASSERT_TRUE(is_pushout({*f, *g, po.left, po.right}));
    auto pb = pullback(po.left, po.right);
    ASSERT_TRUE(is_pullback({pb.left, pb.right, po.left, po.right}));
    // Pullback stability of the canonical decomposition.
    if (!po.apex().empty()) {
      auto dec = canonical_decomposition(po.apex());
      auto pulled = pullback_cocone(dec.cocone, po.left);
      ASSERT_TRUE(is_colimit(pulled.cocone));
      ASSERT_TRUE(is_cartesian(pulled.tau));
    }
  }
}

TEST(IsoSystem, FixedCornerConstrainsOthers) {
  auto p = fixtures::path3();
  auto ab = fixtures::edge("ab", "a", "b");
  IsoSystem sys;
  auto top = sys.add_corner(p, p, Morphism::identity(p));
  auto sub = sys.add_corner(ab, ab);
  sys.add_arrow(sub, top, Morphism::inclusion(ab, p), Morphism::inclusion(ab, p));
  auto sol = solve_isos(sys);
  ASSERT_TRUE(sol);
  EXPECT_EQ((*sol)[1], Morphism::identity(ab));
}
