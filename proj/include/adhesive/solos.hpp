#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "adhesive/dpo.hpp"
#include "adhesive/graph.hpp"
#include "adhesive/lattice.hpp"
#include "adhesive/search.hpp"

// Mini solos calculus: P ::= a!uv | a?xy | P|P | 0, with all names free.
namespace adhesive::solos {

enum class Polarity { out, in };

struct Solo {
  Polarity polarity;
  std::string chan;
  std::string arg1;
  std::string arg2;

  std::string to_string() const {
    return chan + (polarity == Polarity::out ? "!" : "?") + arg1 + arg2;
  }
  friend auto operator<=>(const Solo&, const Solo&) = default;
};

/// A multiset of solos (kept sorted) over a set of names.
struct Process {
  std::vector<Solo> solos;
  std::set<std::string> names;

  void normalize() {
    std::sort(solos.begin(), solos.end());
    for (const auto& s : solos) names.insert({s.chan, s.arg1, s.arg2});
  }

  std::string to_string() const {
    if (solos.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < solos.size(); ++i) s += (i ? " | " : "") + solos[i].to_string();
    return s;
  }

  friend bool operator==(const Process&, const Process&) = default;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& what)
      : Error("syntax error at position " + std::to_string(pos) + ": " + what), position(pos) {}
  std::size_t position;
};

/// Names are a letter followed by digits, so "a!uv" has three names.
inline Process parse_process(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto name = [&] {
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
      throw SyntaxError(pos, "expected a name");
    std::size_t start = pos++;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };
  Process p;
  for (;;) {
    skip();
    if (pos < text.size() && text[pos] == '0') {
      ++pos;
    } else {
      Solo s;
      s.chan = name();
      skip();
      if (pos >= text.size() || (text[pos] != '!' && text[pos] != '?')) throw SyntaxError(pos, "expected '!' or '?'");
      s.polarity = text[pos++] == '!' ? Polarity::out : Polarity::in;
      skip();
      s.arg1 = name();
      skip();
      s.arg2 = name();
      p.solos.push_back(std::move(s));
    }
    skip();
    if (pos == text.size()) break;
    if (text[pos] != '|') throw SyntaxError(pos, "expected '|'");
    ++pos;
  }
  p.normalize();
  return p;
}

inline const LabelAlphabet& alphabet() {
  static const LabelAlphabet a{{"name", "out", "in"}, {"chan", "arg1", "arg2"}};
  return a;
}

inline const std::array<std::string, 3>& ports() {
  static const std::array<std::string, 3> p{"chan", "arg1", "arg2"};
  return p;
}

inline std::string solo_id(std::size_t k) { return "s" + std::to_string(k); }

/// Name nodes carry their name as id; the k-th solo is node "s<k>" with
/// edges "s<k>.chan", "s<k>.arg1", "s<k>.arg2" to its names.
inline Graph encode(const Process& p) {
  GraphData d;
  for (const auto& n : p.names) d.nodes.push_back({n, "name"});
  for (std::size_t k = 0; k < p.solos.size(); ++k) {
    const auto& s = p.solos[k];
    auto id = solo_id(k);
    d.nodes.push_back({id, s.polarity == Polarity::out ? "out" : "in"});
    d.edges.push_back({id + ".chan", id, s.chan, "chan"});
    d.edges.push_back({id + ".arg1", id, s.arg1, "arg1"});
    d.edges.push_back({id + ".arg2", id, s.arg2, "arg2"});
  }
  return Graph(std::move(d));
}

/// Violations of the encoding invariant: every solo node has exactly one
/// edge per port, every edge leaves a solo and ends at a name.
inline std::vector<std::string> encoding_violations(const Graph& g) {
  auto errors = validate(g.data(), &alphabet());
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (g.node_label(n) == "name") {
      if (!g.out_edges(n).empty()) errors.push_back("name '" + g.node_id(n) + "' has outgoing edges");
      continue;
    }
    std::map<std::string, int> seen;
    for (auto e : g.out_edges(n)) {
      ++seen[g.edge_label(e)];
      if (g.node_label(g.tgt(e)) != "name") errors.push_back("port edge '" + g.edge_id(e) + "' does not end at a name");
    }
    for (const auto& port : ports())
      if (seen[port] != 1) errors.push_back("solo '" + g.node_id(n) + "' lacks a unique " + port + " edge");
    if (!g.in_edges(n).empty()) errors.push_back("solo '" + g.node_id(n) + "' has incoming edges");
  }
  return errors;
}

inline Process decode(const Graph& g) {
  auto errors = encoding_violations(g);
  if (!errors.empty()) throw Error("not a solos encoding: " + join_lines(errors));
  Process p;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    if (g.node_label(n) == "name") {
      p.names.insert(g.node_id(n));
      continue;
    }
    Solo s{g.node_label(n) == "out" ? Polarity::out : Polarity::in, "", "", ""};
    for (auto e : g.out_edges(n)) {
      const auto& target = g.node_id(g.tgt(e));
      if (g.edge_label(e) == "chan") s.chan = target;
      else if (g.edge_label(e) == "arg1") s.arg1 = target;
      else s.arg2 = target;
    }
    p.solos.push_back(std::move(s));
  }
  p.normalize();
  return p;
}

/// Equal up to a bijective renaming of names.
inline bool equivalent(const Process& p, const Process& q) {
  return find_isomorphism(encode(p), encode(q)).has_value();
}

/// The reaction rule: one output and one input on a shared channel are
/// deleted, and x, y are fused into u, v.
inline Rule fuse_rule() {
  GraphData l;
  for (const auto* n : {"a", "u", "v", "x", "y"}) l.nodes.push_back({n, "name"});
  l.nodes.push_back({"o", "out"});
  l.nodes.push_back({"i", "in"});
  l.edges = {{"o.chan", "o", "a", "chan"}, {"o.arg1", "o", "u", "arg1"}, {"o.arg2", "o", "v", "arg2"},
             {"i.chan", "i", "a", "chan"}, {"i.arg1", "i", "x", "arg1"}, {"i.arg2", "i", "y", "arg2"}};
  GraphData k;
  for (const auto* n : {"a", "u", "v", "x", "y"}) k.nodes.push_back({n, "name"});
  GraphData r;
  for (const auto* n : {"a", "u", "v"}) r.nodes.push_back({n, "name"});
  Graph gl(l), gk(k), gr(r);
  return Rule(Morphism::inclusion(gk, gl),
              Morphism::from_ids(gk, gr, {{"a", "a"}, {"u", "u"}, {"v", "v"}, {"x", "u"}, {"y", "v"}}, {}));
}

/// Every successor of p, one per redex, in match order.
inline std::vector<Process> step(const Process& p) {
  static const Rule rule = fuse_rule();
  auto g = encode(p);
  std::vector<Process> out;
  for (const auto& match : find_matches(rule, g)) {
    if (!match.gluing.ok()) continue;
    out.push_back(decode(apply_rule(rule, match.m).Z()));
  }
  return out;
}

/// The subcategory of well-formed encodings: a solo always comes with its
/// three port edges and their names.
inline const GraphCategory& encodings() {
  static const GraphCategory cat{
      "solos",
      [](const Graph& g, Subgraph s) {
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t e = 0; e < g.edge_count(); ++e)
            if (s.edges[e] && (!s.nodes[g.src(e)] || !s.nodes[g.tgt(e)])) {
              s.nodes[g.src(e)] = s.nodes[g.tgt(e)] = true;
              changed = true;
            }
          for (std::size_t n = 0; n < g.node_count(); ++n)
            if (s.nodes[n] && g.node_label(n) != "name")
              for (auto e : g.out_edges(n))
                if (!s.edges[e]) {
                  s.edges[e] = true;
                  changed = true;
                }
        }
        return s;
      },
      false};
  return cat;
}

/// The irreducible objects of the encoding: a bare name, and for each
/// polarity a solo with each of the five ways its ports can share names.
inline std::vector<Graph> irreducibles() {
  std::vector<Graph> out;
  out.push_back(Graph(GraphData{{{"n0", "name"}}, {}}));
  // Restricted growth strings of length 3: the partitions of the ports.
  const std::vector<std::array<int, 3>> sharing{{0, 1, 2}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 0, 0}};
  for (const auto* pol : {"out", "in"})
    for (const auto& share : sharing) {
      GraphData d;
      int blocks = *std::max_element(share.begin(), share.end()) + 1;
      for (int b = 0; b < blocks; ++b) d.nodes.push_back({"n" + std::to_string(b), "name"});
      d.nodes.push_back({"s", pol});
      for (std::size_t k = 0; k < 3; ++k)
        d.edges.push_back({"s." + ports()[k], "s", "n" + std::to_string(share[k]), ports()[k]});
      out.push_back(Graph(std::move(d)));
    }
  return out;
}

/// Term-level semantics, independent of graphs: each output/input pair on
/// a common channel reacts, and the remaining process is rewritten by the
/// fusion that identifies u with x and v with y.
inline std::vector<Process> reference_step(const Process& p) {
  std::vector<Process> out;
  for (std::size_t i = 0; i < p.solos.size(); ++i)
    for (std::size_t j = 0; j < p.solos.size(); ++j) {
      const auto& o = p.solos[i];
      const auto& q = p.solos[j];
      if (o.polarity != Polarity::out || q.polarity != Polarity::in || o.chan != q.chan) continue;
      std::map<std::string, std::string> rep;
      for (const auto& n : p.names) rep[n] = n;
      std::function<std::string(const std::string&)> find = [&](const std::string& n) {
        return rep[n] == n ? n : rep[n] = find(rep[n]);
      };
      auto fuse = [&](const std::string& a, const std::string& b) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) rep[std::max(ra, rb)] = std::min(ra, rb);
      };
      fuse(o.arg1, q.arg1);
      fuse(o.arg2, q.arg2);
      Process r;
      for (const auto& n : p.names) r.names.insert(find(n));
      for (std::size_t k = 0; k < p.solos.size(); ++k) {
        if (k == i || k == j) continue;
        auto s = p.solos[k];
        s.chan = find(s.chan);
        s.arg1 = find(s.arg1);
        s.arg2 = find(s.arg2);
        r.solos.push_back(std::move(s));
      }
      r.normalize();
      out.push_back(std::move(r));
    }
  return out;
}

/// Same successors up to renaming, counted with multiplicity.
inline bool same_successors(const std::vector<Process>& a, const std::vector<Process>& b) {
  if (a.size() != b.size()) return false;
  std::vector<Graph> gb;
  for (const auto& q : b) gb.push_back(encode(q));
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a) {
    auto g = encode(p);
    bool matched = false;
    for (std::size_t k = 0; k < b.size() && !matched; ++k)
      if (!used[k] && find_isomorphism(g, gb[k])) used[k] = matched = true;
    if (!matched) return false;
  }
  return true;
}

}  // namespace adhesive::solos
