// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "adhesive/random.hpp"
#include "fixtures.hpp"

using namespace adhesive;
using oracle::Verdict;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    r.pass = false;
    r.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  if (!r.pass) ++failures;
  std::printf("%s  %2d %-28s %8.2fs  %s\n", r.pass ? "PASS" : "FAIL", id, name, secs, r.detail.c_str());
  std::fflush(stdout);
}

std::string count(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

// ---------------------------------------------------------------- 4

// Every unlabeled graph with at most `max_nodes` nodes and `max_edges` edges,
// one per isomorphism class.
std::vector<Graph> small_unlabeled(std::size_t max_nodes, std::size_t max_edges) {
  std::vector<Graph> reps;
  for (std::size_t n = 0; n <= max_nodes; ++n) {
    std::vector<std::array<std::size_t, 2>> slots;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) slots.push_back({s, t});
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> go = [&](std::size_t from) {
      GraphData d;
      for (std::size_t k = 0; k < n; ++k) d.nodes.push_back({"n" + std::to_string(k), kUnlabeled});
      for (std::size_t k = 0; k < chosen.size(); ++k)
        d.edges.push_back({"e" + std::to_string(k), "n" + std::to_string(slots[chosen[k]][0]),
                           "n" + std::to_string(slots[chosen[k]][1]), kUnlabeled});
      Graph g(std::move(d));
      bool seen = false;
      for (const auto& h : reps) seen = seen || find_isomorphism(g, h).has_value();
      if (!seen) reps.push_back(g);
      if (chosen.size() == max_edges) return;
      for (std::size_t s = from; s < slots.size(); ++s) {
        chosen.push_back(s);
        go(s);
        chosen.pop_back();
      }
    };
    go(0);
  }
  return reps;
}

// Irreducible straight from the definition, with the brute-force pushout
// oracle: non-empty, and not the pushout of two proper subgraphs over a
// common subgraph.
bool irreducible_oracle(const Graph& y) {
  if (y.empty()) return false;
  const std::size_t items = y.node_count() + y.edge_count();
  std::vector<Subgraph> subs;
  for (std::size_t mask = 0; mask < (std::size_t{1} << items); ++mask) {
    Subgraph s = Subgraph::none(y);
    for (std::size_t k = 0; k < items; ++k)
      if (mask >> k & 1) (k < y.node_count() ? s.nodes[k] : s.edges[k - y.node_count()]) = true;
    if (s.closed_in(y)) subs.push_back(s);
  }
  auto leq = [](const Subgraph& a, const Subgraph& b) {
    for (std::size_t k = 0; k < a.nodes.size(); ++k)
      if (a.nodes[k] && !b.nodes[k]) return false;
    for (std::size_t k = 0; k < a.edges.size(); ++k)
      if (a.edges[k] && !b.edges[k]) return false;
    return true;
  };
  const Subgraph all = Subgraph::all(y);
  for (const auto& u : subs)
    for (const auto& v : subs) {
      if (u == all || v == all) continue;
      Graph gu = extract(y, u), gv = extract(y, v);
      for (const auto& w : subs) {
        if (!leq(w, u) || !leq(w, v)) continue;
        Graph gw = extract(y, w);
        Square sq{Morphism::inclusion(gw, gu), Morphism::inclusion(gw, gv), Morphism::inclusion(gu, y),
                  Morphism::inclusion(gv, y)};
        if (oracle::brute_is_pushout(sq) == Verdict::yes) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------- 7

struct Agreement {
  std::size_t agree = 0, disagree = 0, inconclusive = 0, yes = 0;
  void add(Verdict v, bool verifier) {
    if (v == Verdict::inconclusive) {
      ++inconclusive;
      return;
    }
    ((v == Verdict::yes) == verifier ? agree : disagree)++;
    yes += v == Verdict::yes;
  }
};

Graph small_graph(random::Rng& rng, const std::string& prefix) {
  return random::random_graph(rng, random::uniform(rng, 1, 3), random::uniform(rng, 0, 3), prefix);
}

// ---------------------------------------------------------------- 10

// A solo as (polarity, channel, arg1, arg2) over names numbered 0..5.
using Code = std::array<int, 4>;

// Least relabeled form over all orders of the solos, names renumbered by
// first occurrence. Returns false if `seq` is not already that form.
bool is_canonical(const std::vector<Code>& seq) {
  std::vector<std::size_t> perm(seq.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::array<int, 16> map;
    map.fill(-1);
    int next = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const Code& s = seq[perm[i]];
      Code t{s[0], 0, 0, 0};
      for (int j = 1; j < 4; ++j) {
        if (map[s[j]] < 0) map[s[j]] = next++;
        t[j] = map[s[j]];
      }
      if (t < seq[i]) return false;
      if (seq[i] < t) break;
    }
  }
  return true;
}

// Canonical key of a term up to renaming: the least relabeled solo
// sequence plus the number of names.
std::vector<int> term_key(const solos::Process& p) {
  std::vector<Code> seq;
  std::map<std::string, int> idx;
  for (const auto& n : p.names) idx.emplace(n, static_cast<int>(idx.size()));
  for (const auto& s : p.solos)
    seq.push_back({s.polarity == solos::Polarity::out ? 0 : 1, idx.at(s.chan), idx.at(s.arg1), idx.at(s.arg2)});
  std::sort(seq.begin(), seq.end());
  std::vector<int> best;
  do {
    std::map<int, int> map;
    std::vector<int> key{static_cast<int>(p.names.size())};
    for (const auto& s : seq) {
      key.push_back(s[0]);
      for (int j = 1; j < 4; ++j) key.push_back(map.emplace(s[j], static_cast<int>(map.size())).first->second);
    }
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return best;
}

// Reaction by substitution on terms: an output and an input on the same
// channel vanish, and their arguments are identified pairwise everywhere.
std::vector<std::vector<int>> term_successors(const solos::Process& p) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < p.solos.size(); ++i)
    for (std::size_t j = 0; j < p.solos.size(); ++j) {
      const auto& o = p.solos[i];
      const auto& q = p.solos[j];
      if (o.polarity != solos::Polarity::out || q.polarity != solos::Polarity::in || o.chan != q.chan) continue;
      std::map<std::string, std::string> sub;
      for (const auto& n : p.names) sub[n] = n;
      auto rename = [&](std::string from, std::string to) {
        for (auto& [k, v] : sub)
          if (v == from) v = to;
      };
      rename(sub[q.arg1], sub[o.arg1]);
      rename(sub[q.arg2], sub[o.arg2]);
      solos::Process r;
      for (const auto& [k, v] : sub) r.names.insert(v);
      for (std::size_t k = 0; k < p.solos.size(); ++k)
        if (k != i && k != j) {
          auto s = p.solos[k];
          s.chan = sub[s.chan];
          s.arg1 = sub[s.arg1];
          s.arg2 = sub[s.arg2];
          r.solos.push_back(s);
        }
      out.push_back(term_key(r));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main() {
  std::printf("adhesive acceptance\n");

  criterion(1, "object-decomposition", 1, [] {
    auto d = canonical_decomposition(fixtures::looped_triangle());
    std::size_t nodes = 0, edges = 0;
    for (const auto& g : d.cocone.diagram.objects) (g.edge_count() == 0 ? nodes : edges)++;
    bool ok = d.components.size() == 7 && nodes == 3 && edges == 4 && d.cocone.diagram.arrows.size() == 7 &&
              is_colimit(d.cocone) && oracle::brute_is_colimit(d.cocone) == Verdict::yes;
    return Outcome{ok, count(nodes, "node + ") + count(edges, "edge components, ") +
                           count(d.cocone.diagram.arrows.size(), "arrows")};
  });

  criterion(2, "edge-pushout", 1, [] {
    auto s = fixtures::edge_span();
    auto po = pushout(s);
    bool iso = find_isomorphism(po.apex(), fixtures::path3()).has_value();
    auto v = oracle::brute_is_pushout({s.left, s.right, po.left, po.right});
    return Outcome{iso && v == Verdict::yes, std::string("apex ") + po.apex().summary() + ", oracle " +
                                                 oracle::verdict_name(v)};
  });

  criterion(3, "worked-dpo-step", 1, [] {
    fixtures::Worked w;
    auto ds = apply_rule(w.rule, w.m);
    auto expected = graph_of({"u", "v", "y"}, {{"loop", "v", "v"}, {"uy", "u", "y"}});
    bool iso = find_isomorphism(ds.Z(), expected).has_value();
    bool ok = iso;
    for (const auto& sq : {ds.left_square(), ds.right_square()})
      ok = ok && is_pushout(sq) && oracle::brute_is_pushout(sq) == Verdict::yes;
    return Outcome{ok, "Z = " + ds.Z().summary()};
  });

  criterion(4, "irreducibles-small-graphs", 120, [] {
    auto graphs = small_unlabeled(3, 3);
    std::vector<Graph> accepted;
    std::size_t agree = 0;
    for (const auto& g : graphs) {
      bool fast = is_irreducible(g);
      if (fast) accepted.push_back(g);
      agree += fast == irreducible_oracle(g) && fast == is_irreducible_by_definition(g);
    }
    std::vector<Graph> want{graph_of({"a"}), fixtures::edge("l", "a", "a"), fixtures::edge("e", "a", "b")};
    bool exact = accepted.size() == want.size();
    for (const auto& g : want) {
      bool found = false;
      for (const auto& h : accepted) found = found || find_isomorphism(g, h).has_value();
      exact = exact && found;
    }
    return Outcome{exact && agree == graphs.size(), count(graphs.size(), "classes, ") +
                                                        count(accepted.size(), "accepted, ") +
                                                        count(agree, "agree with the definition")};
  });

  criterion(5, "dpo-round-trip", 300, [] {
    random::Rng rng(5);
    std::size_t ok = 0, total = 150;
    for (std::size_t i = 0; i < total; ++i) {
      auto ds = random::random_dpo_square(rng);
      auto g = decompose_global(ds);
      bool good = find_double_square_iso(compose_global(g.td), ds).has_value();
      for (const auto& sq : g.td.squares) good = good && is_dpo(sq);
      ok += good;
    }
    return Outcome{ok == total, count(ok, "of ") + count(total, "squares round trip")};
  });

  criterion(6, "worked-local-solution", 10, [] {
    fixtures::Worked w;
    auto p = make_problem(w.span_decomposition(), w.rule, w.m);
    auto s = search_accommodation(p);
    if (!s.accommodation) return Outcome{false, std::string("search ") + status_name(s.status)};
    const auto& rho = s.accommodation->rho;
    auto want = w.rhs_split("right");
    bool split = rho.diagram.objects.size() == 3;
    for (std::size_t i = 0; split && i < 3; ++i)
      split = find_isomorphism(rho.diagram.objects[i], want.diagram.objects[i]).has_value();
    auto sol = solve_accommodated(p, *s.accommodation);
    bool verified = verify_solution(p, sol).empty();
    bool recomposed = find_double_square_iso(compose_global(sol.full), p.witness).has_value();
    std::string parts;
    for (const auto& g : rho.diagram.objects) parts += g.summary() + " ";
    return Outcome{split && verified && recomposed, "split " + parts};
  });

  criterion(7, "oracle-agreement", 600, [] {
    random::Rng rng(7);
    Agreement po, pb, colim;
    for (int i = 0; i < 320; ++i) {
      // Pushouts, sometimes with a perturbed corner.
      auto a = random::random_graph(rng, random::uniform(rng, 0, 2), random::uniform(rng, 0, 2), "a");
      auto b = small_graph(rng, "b"), c = small_graph(rng, "c");
      auto f = random::random_morphism(rng, a, b), g = random::random_morphism(rng, a, c);
      if (!f || !g) continue;
      auto out = pushout({*f, *g});
      Square sq{*f, *g, out.left, out.right};
      switch (random::uniform(rng, 0, 2)) {
        case 1: {
          auto ext = random::random_extension(rng, out.apex(), 1, random::uniform(rng, 0, 1));
          sq = {*f, *g, compose(out.left, ext), compose(out.right, ext)};
          break;
        }
        case 2: {
          auto q = random::random_node_quotient(rng, out.apex(), 1);
          sq = {*f, *g, compose(out.left, q), compose(out.right, q)};
          break;
        }
        default: break;
      }
      po.add(oracle::brute_is_pushout(sq), is_pushout(sq));
    }
    for (int i = 0; i < 320; ++i) {
      // Pullbacks, sometimes restricted to a random subgraph of the corner.
      auto d = small_graph(rng, "d");
      auto b = small_graph(rng, "b"), c = small_graph(rng, "c");
      auto f = random::random_morphism(rng, b, d), g = random::random_morphism(rng, c, d);
      if (!f || !g) continue;
      auto pl = pullback(*f, *g);
      Square sq{pl.left, pl.right, *f, *g};
      if (random::coin(rng)) {
        auto incl = Morphism::inclusion(extract(pl.apex(), random::random_subgraph(rng, pl.apex(), 0.7)), pl.apex());
        sq = {compose(incl, pl.left), compose(incl, pl.right), *f, *g};
      }
      pb.add(oracle::brute_is_pullback(sq), is_pullback(sq));
    }
    for (int i = 0; i < 240; ++i) {
      // Canonical decompositions, sometimes with the legs pushed on.
      auto x = random::random_graph(rng, random::uniform(rng, 1, 3), random::uniform(rng, 0, 3));
      auto c = canonical_decomposition(x).cocone;
      switch (random::uniform(rng, 0, 2)) {
        case 1: {
          auto ext = random::random_extension(rng, c.apex, random::uniform(rng, 0, 1), 1);
          for (auto& leg : c.legs) leg = compose(leg, ext);
          c.apex = ext.cod();
          break;
        }
        case 2: {
          auto q = random::random_node_quotient(rng, c.apex, 1);
          for (auto& leg : c.legs) leg = compose(leg, q);
          c.apex = q.cod();
          break;
        }
        default: break;
      }
      colim.add(oracle::brute_is_colimit(c), is_colimit(c));
    }
    std::size_t agree = po.agree + pb.agree + colim.agree;
    std::size_t disagree = po.disagree + pb.disagree + colim.disagree;
    std::size_t inconclusive = po.inconclusive + pb.inconclusive + colim.inconclusive;
    std::size_t yes = po.yes + pb.yes + colim.yes;
    return Outcome{disagree == 0 && agree >= 500,
                   count(agree, "agree, ") + count(disagree, "disagree, ") + count(inconclusive, "inconclusive, ") +
                       count(yes, "positive")};
  });

  criterion(8, "van-kampen-cubes", 300, [] {
    random::Rng rng(8);
    std::size_t ok = 0, top_pushouts = 0, total = 150;
    for (std::size_t i = 0; i < total; ++i) {
      auto q = random::random_vk_cube(rng);
      bool pre = is_pushout(q.bottom) && is_mono(q.bottom.top) && is_pullback(random::back_left(q)) &&
                 is_pullback(random::back_right(q)) && commutes(random::front_left(q)) &&
                 commutes(random::front_right(q));
      bool top = is_pushout(q.top);
      bool fronts = is_pullback(random::front_left(q)) && is_pullback(random::front_right(q));
      ok += pre && top == fronts;
      top_pushouts += top;
    }
    return Outcome{ok == total && top_pushouts > 0 && top_pushouts < total,
                   count(ok, "of ") + count(total, "cubes satisfy the biconditional, ") +
                       count(top_pushouts, "with a pushout top")};
  });

  criterion(9, "gluing-vs-complements", 300, [] {
    random::Rng rng(9);
    std::size_t agree = 0, disagree = 0, inconclusive = 0, valid = 0;
    while (agree + disagree < 250) {
      auto [rule, m] = random::random_rule_and_match(rng);
      auto brute = oracle::brute_pushout_complement(rule.a(), m);
      if (brute.status == Verdict::inconclusive) {
        if (++inconclusive > 1000) break;
        continue;
      }
      bool glue = gluing_check(rule, m).ok();
      ((glue == !brute.candidates.empty()) ? agree : disagree)++;
      valid += glue;
    }
    return Outcome{disagree == 0 && agree >= 200 && valid > 0 && valid < agree,
                   count(agree, "agree, ") + count(disagree, "disagree, ") + count(valid, "gluing ok, ") +
                       count(inconclusive, "inconclusive")};
  });

  criterion(10, "solos-exhaustive", 120, [] {
    const int max_names = 6, max_solos = 4;
    const char* letters = "abcdef";
    std::size_t checked = 0, mismatched = 0, reactive = 0;
    std::string first_bad;
    std::vector<Code> seq;
    std::function<void(int)> go = [&](int names) {
      solos::Process p;
      for (int k = 0; k < names; ++k) p.names.insert(std::string(1, letters[k]));
      for (const auto& c : seq)
        p.solos.push_back({c[0] ? solos::Polarity::in : solos::Polarity::out, std::string(1, letters[c[1]]),
                           std::string(1, letters[c[2]]), std::string(1, letters[c[3]])});
      p.normalize();
      std::vector<std::vector<int>> engine;
      for (const auto& s : solos::step(p)) engine.push_back(term_key(s));
      std::sort(engine.begin(), engine.end());
      auto terms = term_successors(p);
      ++checked;
      reactive += !terms.empty();
      if (engine != terms && mismatched++ == 0) first_bad = p.to_string();
      if (static_cast<int>(seq.size()) == max_solos) return;
      for (int pol = 0; pol < 2; ++pol)
        for (int c = 0; c <= std::min(names, max_names - 1); ++c) {
          int n1 = std::max(names, c + 1);
          for (int x = 0; x <= std::min(n1, max_names - 1); ++x) {
            int n2 = std::max(n1, x + 1);
            for (int y = 0; y <= std::min(n2, max_names - 1); ++y) {
              seq.push_back({pol, c, x, y});
              if (is_canonical(seq)) go(std::max(n2, y + 1));
              seq.pop_back();
            }
          }
        }
    };
    go(0);
    return Outcome{mismatched == 0, count(checked, "terms up to renaming, ") + count(reactive, "reactive, ") +
                                        count(mismatched, "mismatched") +
                                        (first_bad.empty() ? "" : ", first: " + first_bad)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
