#include <gtest/gtest.h>

#include <functional>

#include "adhesive/random.hpp"
#include "fixtures.hpp"

using namespace adhesive;

namespace {

// Counts homomorphisms by trying every node map and every edge map.
std::size_t naive_count(const Graph& a, const Graph& b, bool mono) {
  std::size_t count = 0;
  std::vector<std::size_t> nm(a.node_count()), em(a.edge_count());
  std::function<void(std::size_t)> edges = [&](std::size_t e) {
    if (e == a.edge_count()) {
      if (morphism_violations(a, b, nm, em).empty() &&
          (!mono || (detail::injective(nm, b.node_count()) && detail::injective(em, b.edge_count()))))
        ++count;
      return;
    }
    for (std::size_t x = 0; x < b.edge_count(); ++x) {
      em[e] = x;
      edges(e + 1);
    }
  };
  std::function<void(std::size_t)> nodes = [&](std::size_t n) {
    if (n == a.node_count()) return edges(0);
    for (std::size_t x = 0; x < b.node_count(); ++x) {
      nm[n] = x;
      nodes(n + 1);
    }
  };
  nodes(0);
  return count;
}

}  // namespace

TEST(Search, WorkedMatchCount) {
  fixtures::Worked w;
  EXPECT_EQ(enumerate_morphisms(w.L, w.X).size(), naive_count(w.L, w.X, false));
  EXPECT_EQ(enumerate_morphisms(w.L, w.X).size(), 5u);
}

TEST(Search, NoMorphismIntoEdgelessTarget) {
  fixtures::Worked w;
  EXPECT_TRUE(enumerate_morphisms(w.L, graph_of({"n"})).empty());
}

TEST(Search, EmptyDomainHasOneMorphism) {
  EXPECT_EQ(enumerate_morphisms(Graph(), fixtures::looped_triangle()).size(), 1u);
  EXPECT_EQ(enumerate_morphisms(Graph(), Graph()).size(), 1u);
  EXPECT_TRUE(enumerate_morphisms(graph_of({"n"}), Graph()).empty());
}

TEST(Search, EndomorphismsIncludeIdentity) {
  auto g = fixtures::looped_triangle();
  auto all = enumerate_morphisms(g, g);
  EXPECT_NE(std::find(all.begin(), all.end(), Morphism::identity(g)), all.end());
}

TEST(Search, ParallelEdgesAreDistinguished) {
  auto two = graph_of({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
  auto one = fixtures::edge("e", "s", "t");
  EXPECT_EQ(enumerate_morphisms(one, two).size(), 2u);
  EXPECT_EQ(enumerate_morphisms(two, two, true).size(), 2u);
}

TEST(Search, LabelsArePreserved) {
  auto a = Graph(GraphData{{{"n", "red"}}, {}});
  auto b = Graph(GraphData{{{"p", "red"}, {"q", "blue"}}, {}});
  EXPECT_EQ(enumerate_morphisms(a, b).size(), 1u);
}

TEST(Search, AgreesWithNaiveEnumerationOnRandomGraphs) {
  random::Rng rng(7);
  for (int i = 0; i < 150; ++i) {
    auto a = random::random_graph(rng, random::uniform(rng, 0, 3), random::uniform(rng, 0, 3));
    auto b = random::random_graph(rng, random::uniform(rng, 1, 3), random::uniform(rng, 0, 4));
    for (bool mono : {false, true}) {
      auto all = enumerate_morphisms(a, b, mono);
      ASSERT_EQ(all.size(), naive_count(a, b, mono)) << a.summary() << " -> " << b.summary();
      for (std::size_t k = 1; k < all.size(); ++k) EXPECT_FALSE(all[k] == all[k - 1]);
    }
  }
}

TEST(Search, IsomorphismFinder) {
  auto p = fixtures::path3();
  auto q = graph_of({"x", "y", "z"}, {{"1", "y", "z"}, {"2", "x", "y"}});
  auto iso = find_isomorphism(p, q);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(is_iso(*iso));
  EXPECT_FALSE(find_isomorphism(p, fixtures::looped_triangle()));
  EXPECT_FALSE(find_isomorphism(graph_of({"a", "b"}, {{"e", "a", "b"}}), graph_of({"a", "b"}, {{"e", "a", "a"}})));
}

TEST(Search, CountRespectsLimit) {
  auto g = graph_of({"a", "b", "c"});
  EXPECT_EQ(count_morphisms(g, g, {}, 5), 5u);
  EXPECT_EQ(count_morphisms(g, g, {}), 27u);
}
