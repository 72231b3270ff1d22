#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "adhesive/decomposition.hpp"
#include "adhesive/dpo.hpp"
#include "adhesive/graph.hpp"
#include "adhesive/limits.hpp"

// JSON forms of every value, and the {"kind", "payload"} envelope.
// Morphisms carry "dom"/"cod" names for readers; on input they are resolved
// by position in the enclosing structure, not by name.
namespace adhesive::io {

using json = nlohmann::json;

class FormatError : public Error {
 public:
  using Error::Error;
};

namespace detail {
inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}
inline std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}
}  // namespace detail

inline json to_json(const Graph& g) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.data().nodes) nodes.push_back({{"id", n.id}, {"label", n.label}});
  for (const auto& e : g.data().edges)
    edges.push_back({{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}, {"label", e.label}});
  return {{"nodes", nodes}, {"edges", edges}};
}

inline GraphData graph_data_from_json(const json& j) {
  GraphData d;
  if (!j.is_object()) throw FormatError("graph must be an object");
  if (j.contains("nodes"))
    for (const auto& n : j.at("nodes"))
      d.nodes.push_back({detail::str(detail::field(n, "id"), "node id"),
                         n.contains("label") ? detail::str(n.at("label"), "label") : kUnlabeled});
  if (j.contains("edges"))
    for (const auto& e : j.at("edges"))
      d.edges.push_back({detail::str(detail::field(e, "id"), "edge id"), detail::str(detail::field(e, "src"), "src"),
                         detail::str(detail::field(e, "tgt"), "tgt"),
                         e.contains("label") ? detail::str(e.at("label"), "label") : kUnlabeled});
  return d;
}

inline Graph graph_from_json(const json& j) { return Graph(graph_data_from_json(j)); }

inline json to_json(const Morphism& f, const std::string& dom = "", const std::string& cod = "") {
  json nodes = json::object(), edges = json::object();
  for (std::size_t n = 0; n < f.node_map().size(); ++n) nodes[f.dom().node_id(n)] = f.cod().node_id(f.node(n));
  for (std::size_t e = 0; e < f.edge_map().size(); ++e) edges[f.dom().edge_id(e)] = f.cod().edge_id(f.edge(e));
  return {{"dom", dom}, {"cod", cod}, {"nodes", nodes}, {"edges", edges}};
}

inline Morphism morphism_from_json(const json& j, const Graph& dom, const Graph& cod) {
  std::map<std::string, std::string> nodes, edges;
  if (j.contains("nodes"))
    for (const auto& [k, v] : j.at("nodes").items()) nodes[k] = detail::str(v, "node image");
  if (j.contains("edges"))
    for (const auto& [k, v] : j.at("edges").items()) edges[k] = detail::str(v, "edge image");
  for (const auto& [k, v] : nodes)
    if (!dom.find_node(k)) throw FormatError("morphism maps unknown node '" + k + "'");
  for (const auto& [k, v] : edges)
    if (!dom.find_edge(k)) throw FormatError("morphism maps unknown edge '" + k + "'");
  return Morphism::from_ids(dom, cod, nodes, edges);
}

inline json to_json(const Rule& r) {
  return {{"L", to_json(r.L())},
          {"K", to_json(r.K())},
          {"R", to_json(r.R())},
          {"a", to_json(r.a(), "K", "L")},
          {"b", to_json(r.b(), "K", "R")}};
}

inline Rule rule_from_json(const json& j) {
  auto l = graph_from_json(detail::field(j, "L"));
  auto k = graph_from_json(detail::field(j, "K"));
  auto r = graph_from_json(detail::field(j, "R"));
  return Rule(morphism_from_json(detail::field(j, "a"), k, l), morphism_from_json(detail::field(j, "b"), k, r));
}

inline json to_json(const DoubleSquare& ds) {
  return {{"rule", to_json(ds.rule)},
          {"X", to_json(ds.X())},
          {"Y", to_json(ds.Y())},
          {"Z", to_json(ds.Z())},
          {"m", to_json(ds.m, "L", "X")},
          {"j", to_json(ds.j, "K", "Y")},
          {"n", to_json(ds.n, "R", "Z")},
          {"c", to_json(ds.c, "Y", "X")},
          {"d", to_json(ds.d, "Y", "Z")}};
}

inline DoubleSquare double_square_from_json(const json& j) {
  auto rule = rule_from_json(detail::field(j, "rule"));
  auto x = graph_from_json(detail::field(j, "X"));
  auto y = graph_from_json(detail::field(j, "Y"));
  auto z = graph_from_json(detail::field(j, "Z"));
  return {rule,
          morphism_from_json(detail::field(j, "m"), rule.L(), x),
          morphism_from_json(detail::field(j, "j"), rule.K(), y),
          morphism_from_json(detail::field(j, "n"), rule.R(), z),
          morphism_from_json(detail::field(j, "c"), y, x),
          morphism_from_json(detail::field(j, "d"), y, z)};
}

inline json to_json(const DiagramShape& s) {
  json arrows = json::array();
  for (const auto& a : s.arrows) arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  return {{"objects", s.objects}, {"arrows", arrows}};
}

inline DiagramShape shape_from_json(const json& j) {
  DiagramShape s;
  for (const auto& o : detail::field(j, "objects")) s.objects.push_back(detail::str(o, "shape object"));
  if (j.contains("arrows"))
    for (const auto& a : j.at("arrows"))
      s.arrows.push_back({detail::str(detail::field(a, "id"), "arrow id"), detail::str(detail::field(a, "src"), "src"),
                          detail::str(detail::field(a, "tgt"), "tgt")});
  auto errors = s.violations();
  if (!errors.empty()) throw FormatError("invalid shape: " + join_lines(errors));
  return s;
}

inline json to_json(const Diagram& d) {
  json objects = json::object(), arrows = json::object();
  for (std::size_t i = 0; i < d.objects.size(); ++i) objects[d.shape.objects[i]] = to_json(d.objects[i]);
  for (std::size_t e = 0; e < d.arrows.size(); ++e) {
    const auto& a = d.shape.arrows[e];
    arrows[a.id] = to_json(d.arrows[e], a.src, a.tgt);
  }
  return {{"shape", to_json(d.shape)}, {"objects", objects}, {"arrows", arrows}};
}

inline Diagram diagram_from_json(const json& j) {
  Diagram d{shape_from_json(detail::field(j, "shape")), {}, {}};
  const auto& objects = detail::field(j, "objects");
  for (const auto& o : d.shape.objects) d.objects.push_back(graph_from_json(detail::field(objects, o.c_str())));
  const auto& arrows = d.shape.arrows.empty() && !j.contains("arrows") ? json::object() : detail::field(j, "arrows");
  for (std::size_t e = 0; e < d.shape.arrows.size(); ++e)
    d.arrows.push_back(morphism_from_json(detail::field(arrows, d.shape.arrows[e].id.c_str()),
                                          d.objects[d.shape.src(e)], d.objects[d.shape.tgt(e)]));
  return d;
}

inline json to_json(const Cocone& c, const std::string& apex_name = "apex") {
  json j = to_json(c.diagram);
  j["apex"] = to_json(c.apex);
  json legs = json::object();
  for (std::size_t i = 0; i < c.legs.size(); ++i)
    legs[c.diagram.shape.objects[i]] = to_json(c.legs[i], c.diagram.shape.objects[i], apex_name);
  j["legs"] = legs;
  return j;
}

inline Cocone cocone_from_json(const json& j) {
  Cocone c{diagram_from_json(j), graph_from_json(detail::field(j, "apex")), {}};
  const auto& legs = detail::field(j, "legs");
  for (std::size_t i = 0; i < c.diagram.objects.size(); ++i)
    c.legs.push_back(morphism_from_json(detail::field(legs, c.diagram.shape.objects[i].c_str()),
                                        c.diagram.objects[i], c.apex));
  return c;
}

inline json to_json(const Square& s) {
  return {{"A", to_json(s.top.dom())},       {"B", to_json(s.top.cod())},
          {"C", to_json(s.left.cod())},      {"D", to_json(s.right.cod())},
          {"top", to_json(s.top, "A", "B")}, {"left", to_json(s.left, "A", "C")},
          {"right", to_json(s.right, "B", "D")}, {"bottom", to_json(s.bottom, "C", "D")}};
}

inline Square square_from_json(const json& j) {
  auto a = graph_from_json(detail::field(j, "A"));
  auto b = graph_from_json(detail::field(j, "B"));
  auto c = graph_from_json(detail::field(j, "C"));
  auto d = graph_from_json(detail::field(j, "D"));
  return {morphism_from_json(detail::field(j, "top"), a, b), morphism_from_json(detail::field(j, "left"), a, c),
          morphism_from_json(detail::field(j, "right"), b, d), morphism_from_json(detail::field(j, "bottom"), c, d)};
}

inline json to_json(const NatTrans& t) {
  json comps = json::object();
  for (std::size_t i = 0; i < t.components.size(); ++i)
    comps[t.dom.shape.objects[i]] = to_json(t.components[i], "dom", "cod");
  return {{"dom", to_json(t.dom)}, {"cod", to_json(t.cod)}, {"components", comps}};
}

inline NatTrans nat_trans_from_json(const json& j) {
  NatTrans t{diagram_from_json(detail::field(j, "dom")), diagram_from_json(detail::field(j, "cod")), {}};
  if (!(t.dom.shape == t.cod.shape)) throw FormatError("natural transformation between different shapes");
  const auto& comps = detail::field(j, "components");
  for (std::size_t i = 0; i < t.dom.objects.size(); ++i)
    t.components.push_back(morphism_from_json(detail::field(comps, t.dom.shape.objects[i].c_str()),
                                              t.dom.objects[i], t.cod.objects[i]));
  return t;
}

inline json to_json(const TransformationDecomposition& td) {
  json squares = json::object(), transports = json::object();
  for (std::size_t i = 0; i < td.squares.size(); ++i) squares[td.shape.objects[i]] = to_json(td.squares[i]);
  for (std::size_t e = 0; e < td.transports.size(); ++e) {
    json t = json::object();
    const auto& a = td.shape.arrows[e];
    for (auto c : kCorners) t[corner_name(c)] = to_json(td.transports[e][c], a.src, a.tgt);
    transports[a.id] = t;
  }
  return {{"shape", to_json(td.shape)}, {"squares", squares}, {"transports", transports}};
}

inline TransformationDecomposition family_from_json(const json& j) {
  TransformationDecomposition td{shape_from_json(detail::field(j, "shape")), {}, {}};
  const auto& squares = detail::field(j, "squares");
  for (const auto& o : td.shape.objects) td.squares.push_back(double_square_from_json(detail::field(squares, o.c_str())));
  const auto& transports = td.shape.arrows.empty() && !j.contains("transports") ? json::object()
                                                                                : detail::field(j, "transports");
  for (std::size_t e = 0; e < td.shape.arrows.size(); ++e) {
    const auto& t = detail::field(transports, td.shape.arrows[e].id.c_str());
    const auto& from = td.squares[td.shape.src(e)];
    const auto& to = td.squares[td.shape.tgt(e)];
    SquareTransport tr;
    for (auto c : kCorners)
      tr.set(c, morphism_from_json(detail::field(t, corner_name(c)), corner_of(from, c), corner_of(to, c)));
    td.transports.push_back(std::move(tr));
  }
  return td;
}

inline json to_json(const DecompositionProblem& p) {
  return {{"xi", to_json(p.xi, "X")}, {"rule", to_json(p.rule)}, {"m", to_json(p.m, "L", "X")},
          {"witness", to_json(p.witness)}};
}

/// The witness is optional on input; when absent the canonical DPO step at
/// m is used.
inline DecompositionProblem problem_from_json(const json& j) {
  auto xi = cocone_from_json(detail::field(j, "xi"));
  auto rule = rule_from_json(detail::field(j, "rule"));
  auto m = morphism_from_json(detail::field(j, "m"), rule.L(), xi.apex);
  if (!j.contains("witness")) return make_problem(std::move(xi), rule, m);
  auto w = double_square_from_json(j.at("witness"));
  return {std::move(xi), rule, m, std::move(w)};
}

inline json to_json(const Accommodation& a) {
  json iso = json::object();
  for (std::size_t i = 0; i < a.iso.size(); ++i)
    iso[a.rho.diagram.shape.objects[i]] = to_json(a.iso[i], "K'", "K''");
  return {{"rho", to_json(a.rho, "R")},
          {"iso", iso},
          {"k_from_host", to_json(a.k_from_host.cocone, "K")},
          {"k_from_rhs", to_json(a.k_from_rhs.cocone, "K")}};
}

/// Only rho is read back; the comparison data is recomputed on verification.
inline Cocone accommodation_rho_from_json(const json& j) {
  return cocone_from_json(j.contains("rho") ? j.at("rho") : j);
}

inline json cocones_to_json(const std::array<std::optional<Cocone>, 6>& cs) {
  json j = json::object();
  for (auto c : kCorners)
    if (cs[static_cast<int>(c)]) j[corner_name(c)] = to_json(*cs[static_cast<int>(c)], corner_name(c));
  return j;
}

inline json to_json(const Solution& s) {
  return {{"family", to_json(s.full)}, {"cocones", cocones_to_json(s.cocones)}};
}

inline Solution solution_from_json(const json& j) {
  Solution s{family_from_json(detail::field(j, "family")), {}};
  const auto& cs = detail::field(j, "cocones");
  for (auto c : kCorners)
    if (cs.contains(corner_name(c))) s.cocones[static_cast<int>(c)] = cocone_from_json(cs.at(corner_name(c)));
  return s;
}

inline json to_json(const GlobalDecomposition& g) {
  std::array<std::optional<Cocone>, 6> cs;
  for (auto c : kCorners) cs[static_cast<int>(c)] = g.cocone(c);
  return {{"cover", {{"U", to_json(g.cover.apex())}, {"w", to_json(g.cover.left, "X", "U")},
                     {"t", to_json(g.cover.right, "Z", "U")}}},
          {"u_decomposition", to_json(g.u_decomposition, "U")},
          {"family", to_json(g.td)},
          {"cocones", cocones_to_json(cs)}};
}

inline json envelope(const std::string& kind, json payload) {
  return {{"kind", kind}, {"payload", std::move(payload)}};
}

/// Accepts both enveloped and bare payloads; `kind` is empty for the latter.
inline std::pair<std::string, json> open_envelope(const json& j) {
  if (j.is_object() && j.contains("kind") && j.contains("payload"))
    return {detail::str(j.at("kind"), "kind"), j.at("payload")};
  return {"", j};
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Graphviz text for a graph.
inline std::string to_dot(const Graph& g, const std::string& name = "G") {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n";
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    os << "  " << quote(g.node_id(n));
    if (g.node_label(n) != kUnlabeled) os << " [label=" << quote(g.node_id(n) + ":" + g.node_label(n)) << "]";
    os << ";\n";
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    os << "  " << quote(g.node_id(g.src(e))) << " -> " << quote(g.node_id(g.tgt(e))) << " [label="
       << quote(g.edge_label(e) == kUnlabeled ? g.edge_id(e) : g.edge_id(e) + ":" + g.edge_label(e)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace adhesive::io
