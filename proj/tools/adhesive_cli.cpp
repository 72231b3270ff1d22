#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "adhesive/adhesive.hpp"
#include "adhesive/io.hpp"
#include "adhesive/random.hpp"

namespace {

using adhesive::io::json;
namespace io = adhesive::io;
namespace oracle = adhesive::oracle;

// Domain rejection: exit 1 with the report on stderr.
struct Rejected {
  std::string message;
  std::vector<std::string> details;
};

// Usage problems detected after parsing: exit 2.
struct UsageError {
  std::string message;
};

struct Output {
  std::string out_path;
  std::string dot_path;

  void emit(const json& j) const {
    auto text = j.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out_path);
    if (!f) throw adhesive::io::FormatError("cannot write '" + out_path + "'");
    f << text;
  }

  void dot(const adhesive::Graph& g, const std::string& name) const {
    if (dot_path.empty()) return;
    std::ofstream f(dot_path);
    if (!f) throw adhesive::io::FormatError("cannot write '" + dot_path + "'");
    f << io::to_dot(g, name);
  }
};

void report(const std::string& kind, const std::string& message, const std::vector<std::string>& details = {}) {
  json j{{"error", kind}, {"message", message}};
  if (!details.empty()) j["details"] = details;
  std::cerr << j.dump() << "\n";
}

// Opens a file and checks the envelope kind when present.
json load(const std::string& path, const std::string& want) {
  auto [kind, payload] = io::open_envelope(io::read_file(path));
  if (!kind.empty() && !want.empty() && kind != want)
    throw UsageError{"'" + path + "' holds a " + kind + ", expected a " + want};
  return payload;
}

std::string verdict(oracle::Verdict v) { return oracle::verdict_name(v); }

// ---- validate ---------------------------------------------------------

void run_validate(const std::string& path, bool solos, const Output& out) {
  auto [kind, payload] = io::open_envelope(io::read_file(path));
  std::vector<std::string> errors;
  if (kind.empty() || kind == "graph") {
    auto data = io::graph_data_from_json(payload);
    errors = adhesive::validate(data, solos ? &adhesive::solos::alphabet() : nullptr);
    if (errors.empty() && solos) errors = adhesive::solos::encoding_violations(adhesive::Graph(data));
  } else if (kind == "rule") {
    io::rule_from_json(payload);
  } else if (kind == "double-square") {
    errors = io::double_square_from_json(payload).violations();
  } else if (kind == "diagram") {
    errors = io::diagram_from_json(payload).violations();
  } else if (kind == "cocone") {
    errors = io::cocone_from_json(payload).violations();
  } else if (kind == "family") {
    errors = io::family_from_json(payload).violations();
  } else if (kind == "problem") {
    errors = io::problem_from_json(payload).violations();
  } else {
    throw UsageError{"validate does not handle kind '" + kind + "'"};
  }
  if (!errors.empty()) throw Rejected{"invalid " + (kind.empty() ? std::string("graph") : kind), errors};
  out.emit({{"ok", true}, {"kind", kind.empty() ? "graph" : kind}});
}

// ---- apply ------------------------------------------------------------

void run_apply(const std::string& rule_path, const std::string& graph_path, const std::string& match_path,
               bool enumerate, bool mono, const Output& out) {
  auto rule = io::rule_from_json(load(rule_path, "rule"));
  auto x = io::graph_from_json(load(graph_path, "graph"));
  if (!match_path.empty()) {
    auto m = io::morphism_from_json(load(match_path, "morphism"), rule.L(), x);
    auto gluing = adhesive::gluing_check(rule, m);
    if (!gluing.ok()) throw Rejected{"gluing condition violated", {gluing.describe()}};
    auto ds = adhesive::apply_rule(rule, m);
    out.dot(ds.Z(), "Z");
    out.emit(io::envelope("double-square", io::to_json(ds)));
    return;
  }
  auto matches = adhesive::find_matches(rule, x, mono);
  if (enumerate) {
    json all = json::array();
    for (const auto& match : matches) {
      json entry{{"match", io::to_json(match.m, "L", "X")},
                 {"dangling_ok", match.gluing.dangling_ok},
                 {"identification_ok", match.gluing.identification_ok}};
      if (match.gluing.ok()) entry["square"] = io::to_json(adhesive::apply_rule(rule, match.m));
      else entry["reason"] = match.gluing.describe();
      all.push_back(std::move(entry));
    }
    out.emit(io::envelope("matches", all));
    return;
  }
  for (const auto& match : matches)
    if (match.gluing.ok()) {
      auto ds = adhesive::apply_rule(rule, match.m);
      out.dot(ds.Z(), "Z");
      out.emit(io::envelope("double-square", io::to_json(ds)));
      return;
    }
  throw Rejected{"no match satisfies the gluing condition", {}};
}

// ---- decompositions ---------------------------------------------------

const adhesive::GraphCategory& category(const std::string& name) {
  if (name == "plain") return adhesive::plain_graphs();
  if (name == "solos") return adhesive::solos::encodings();
  throw UsageError{"unknown category '" + name + "'"};
}

void run_decompose_object(const std::string& path, const std::string& cat, bool bottom, const Output& out) {
  auto x = io::graph_from_json(load(path, "graph"));
  auto d = adhesive::canonical_decomposition(x, category(cat), bottom);
  out.dot(x, "X");
  out.emit(io::envelope("cocone", io::to_json(d.cocone, "X")));
}

void run_decompose_global(const std::string& path, const std::string& u_path, const Output& out) {
  auto ds = io::double_square_from_json(load(path, "double-square"));
  adhesive::GlobalOptions opt;
  if (!u_path.empty()) {
    auto u = io::cocone_from_json(load(u_path, "cocone"));
    if (!adhesive::is_colimit(u)) throw Rejected{"--u-decomp is not a colimit cocone", {}};
    opt.u_decomposition = u;
  }
  auto g = adhesive::decompose_global(ds, opt);
  out.emit(io::envelope("global-decomposition", io::to_json(g)));
}

void run_compose(const std::string& path, const Output& out) {
  auto j = load(path, "");
  // Accept a family directly or any payload that carries one.
  auto td = io::family_from_json(j.contains("family") ? j.at("family") : j);
  auto errors = td.violations();
  if (!errors.empty()) throw Rejected{"family is not a decomposition", errors};
  auto ds = adhesive::compose_global(td);
  out.dot(ds.Z(), "Z");
  out.emit(io::envelope("double-square", io::to_json(ds)));
}

// ---- solve-local ------------------------------------------------------

void run_solve_local(const std::string& problem_path, const std::string& acc_path, bool search, std::size_t budget,
                     const Output& out) {
  auto p = io::problem_from_json(load(problem_path, "problem"));
  auto errors = p.violations();
  if (!errors.empty()) throw Rejected{"ill-formed problem", errors};
  std::optional<adhesive::Accommodation> acc;
  json search_report;
  if (search) {
    auto s = adhesive::search_accommodation(p, {budget});
    search_report = {{"status", adhesive::status_name(s.status)}, {"examined", s.examined}};
    if (!s.accommodation)
      throw Rejected{std::string("no accommodation: search ") + adhesive::status_name(s.status),
                     {"examined " + std::to_string(s.examined) + " candidates"}};
    acc = s.accommodation;
  } else {
    auto rho = io::accommodation_rho_from_json(load(acc_path, "accommodation"));
    auto check = adhesive::verify_accommodation(p, rho);
    if (!check.ok()) throw Rejected{"not an accommodation", {check.rejection}};
    acc = check.accommodation;
  }
  auto sol = adhesive::solve_accommodated(p, *acc);
  json payload{{"problem", io::to_json(p)}, {"accommodation", io::to_json(*acc)}, {"solution", io::to_json(sol)}};
  if (search) payload["search"] = search_report;
  out.emit(io::envelope("solution", payload));
}

// ---- check ------------------------------------------------------------

struct CheckResult {
  bool ok = true;
  std::vector<std::string> details;
  json oracle = nullptr;
};

CheckResult check_square(const adhesive::Square& s, bool pushout, bool with_oracle) {
  CheckResult r;
  r.ok = pushout ? adhesive::is_pushout(s) : adhesive::is_pullback(s);
  if (!r.ok) r.details.push_back(pushout ? "square is not a pushout" : "square is not a pullback");
  if (with_oracle) {
    auto v = pushout ? oracle::brute_is_pushout(s) : oracle::brute_is_pullback(s);
    r.oracle = verdict(v);
  }
  return r;
}

void run_check(const std::string& what, const std::string& path, bool with_oracle, const Output& out) {
  CheckResult r;
  if (what == "pushout" || what == "pullback") {
    r = check_square(io::square_from_json(load(path, "square")), what == "pushout", with_oracle);
  } else if (what == "colimit") {
    auto c = io::cocone_from_json(load(path, "cocone"));
    r.details = c.violations();
    r.ok = r.details.empty() && adhesive::is_colimit(c);
    if (r.details.empty() && !r.ok) r.details.push_back("cocone is not a colimit");
    if (with_oracle) r.oracle = verdict(oracle::brute_is_colimit(c));
  } else if (what == "cartesian") {
    auto t = io::nat_trans_from_json(load(path, "nat-trans"));
    r.details = t.violations();
    if (r.details.empty()) {
      json per = json::object();
      for (std::size_t e = 0; e < t.dom.shape.arrows.size(); ++e) {
        auto sq = adhesive::naturality_square(t, e);
        const auto& id = t.dom.shape.arrows[e].id;
        if (!adhesive::is_pullback(sq)) r.details.push_back("naturality square at '" + id + "' is not a pullback");
        if (with_oracle) per[id] = verdict(oracle::brute_is_pullback(sq));
      }
      if (with_oracle) r.oracle = per;
    }
    r.ok = r.details.empty();
  } else if (what == "dpo") {
    auto ds = io::double_square_from_json(load(path, "double-square"));
    r.details = adhesive::dpo_violations(ds);
    r.ok = r.details.empty();
    if (with_oracle && ds.violations().empty())
      r.oracle = {{"left", verdict(oracle::brute_is_pushout(ds.left_square()))},
                  {"right", verdict(oracle::brute_is_pushout(ds.right_square()))}};
  } else if (what == "accommodation") {
    auto j = load(path, "");
    auto p = io::problem_from_json(io::detail::field(j, "problem"));
    auto rho = io::accommodation_rho_from_json(io::detail::field(j, "accommodation"));
    auto check = adhesive::verify_accommodation(p, rho);
    r.ok = check.ok();
    if (!r.ok) r.details.push_back(check.rejection);
    if (with_oracle) r.oracle = {{"rho", verdict(oracle::brute_is_colimit(rho))}};
  } else if (what == "solution") {
    auto j = load(path, "");
    auto p = io::problem_from_json(io::detail::field(j, "problem"));
    auto s = io::solution_from_json(io::detail::field(j, "solution"));
    r.details = adhesive::verify_solution(p, s);
    r.ok = r.details.empty();
    if (with_oracle) {
      json per = json::object();
      for (auto c : adhesive::kCorners)
        if (const auto& cc = s.cocones[static_cast<int>(c)])
          per[adhesive::corner_name(c)] = verdict(oracle::brute_is_colimit(*cc));
      r.oracle = per;
    }
  } else {
    throw UsageError{"unknown check '" + what + "'"};
  }
  if (!r.ok) throw Rejected{what + " check failed", r.details};
  json result{{"ok", true}, {"check", what}};
  if (!r.oracle.is_null()) result["oracle"] = r.oracle;
  out.emit(result);
}

// ---- solos ------------------------------------------------------------

json process_json(const adhesive::solos::Process& p) {
  json solos = json::array();
  for (const auto& s : p.solos) solos.push_back(s.to_string());
  return {{"term", p.to_string()}, {"solos", solos}, {"names", p.names}};
}

void run_solos(const std::string& verb, const std::string& term, const Output& out) {
  auto p = adhesive::solos::parse_process(term);
  if (verb == "parse") {
    out.emit(io::envelope("process", process_json(p)));
  } else if (verb == "step") {
    json succ = json::array();
    for (const auto& q : adhesive::solos::step(p)) succ.push_back(process_json(q));
    out.emit(io::envelope("successors", {{"from", process_json(p)}, {"successors", succ}}));
  } else {
    auto g = adhesive::solos::encode(p);
    out.dot(g, "encoding");
    out.emit(io::envelope("graph", io::to_json(g)));
  }
}

// ---- generate ---------------------------------------------------------

void run_generate(const std::string& what, unsigned seed, const Output& out) {
  adhesive::random::Rng rng(seed);
  if (what == "double-square") {
    out.emit(io::envelope("double-square", io::to_json(adhesive::random::random_dpo_square(rng))));
  } else if (what == "rule-match") {
    auto [rule, m] = adhesive::random::random_rule_and_match(rng);
    out.emit(io::envelope("rule-match", {{"rule", io::to_json(rule)},
                                         {"X", io::to_json(m.cod())},
                                         {"m", io::to_json(m, "L", "X")}}));
  } else if (what == "graph") {
    auto g = adhesive::random::random_graph(rng, adhesive::random::uniform(rng, 1, 5),
                                            adhesive::random::uniform(rng, 0, 6));
    out.dot(g, "G");
    out.emit(io::envelope("graph", io::to_json(g)));
  } else {
    throw UsageError{"unknown fixture '" + what + "'"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adhesive: DPO graph rewriting with colimit decompositions"};
  // Global options are accepted after the subcommand too.
  app.fallthrough();
  app.require_subcommand(1);
  Output out;
  app.add_option("--out", out.out_path, "Write JSON output to this file");
  app.add_option("--dot", out.dot_path, "Write Graphviz text of the main result graph to this file");

  std::string path, path2, path3, term, what;
  bool flag = false, flag2 = false;
  std::size_t budget = adhesive::SearchBudget{}.max_candidates;
  unsigned seed = 0;

  auto* validate = app.add_subcommand("validate", "Report invariant violations of a JSON value");
  validate->add_option("file", path)->required();
  validate->add_flag("--solos", flag, "Check the solos label alphabet and encoding invariant");

  auto* apply = app.add_subcommand("apply", "Apply a rule to a graph");
  apply->add_option("--rule", path, "Rule JSON")->required();
  apply->add_option("--graph", path2, "Host graph JSON")->required();
  auto* match_opt = apply->add_option("--match", path3, "Match morphism L -> X");
  auto* enum_opt = apply->add_flag("--enumerate", flag, "List every match with its gluing verdict");
  match_opt->excludes(enum_opt);
  apply->add_flag("--mono", flag2, "Only injective matches");

  std::string cat = "plain";
  auto* dobj = app.add_subcommand("decompose-object", "Canonical colimit decomposition of a graph");
  dobj->add_option("file", path)->required();
  dobj->add_option("--category", cat, "plain or solos")->check(CLI::IsMember({"plain", "solos"}));
  dobj->add_flag("--with-bottom", flag, "Add the empty subgraph as a diagram object");

  auto* dglob = app.add_subcommand("decompose-global", "Decompose a DPO square into local squares");
  dglob->add_option("file", path)->required();
  dglob->add_option("--u-decomp", path2, "Colimit decomposition of the pushout of c and d");

  auto* comp = app.add_subcommand("compose", "Recompose a family of local squares");
  comp->add_option("file", path)->required();

  auto* solve = app.add_subcommand("solve-local", "Solve a local decomposition problem");
  solve->add_option("--problem", path, "Problem JSON")->required();
  auto* acc_opt = solve->add_option("--accommodation", path2, "Accommodation JSON (a cocone on R)");
  auto* search_opt = solve->add_flag("--search", flag, "Search for an accommodation");
  solve->add_option("--budget", budget, "Candidate budget for --search")->needs(search_opt);
  acc_opt->excludes(search_opt);

  auto* check = app.add_subcommand("check", "Verify a universal property or a certificate");
  check->add_option("property", what)
      ->required()
      ->check(CLI::IsMember({"pushout", "pullback", "colimit", "cartesian", "dpo", "accommodation", "solution"}));
  check->add_option("file", path)->required();
  check->add_flag("--oracle", flag, "Also run the brute-force oracle");

  std::string solos_verb;
  auto* solos = app.add_subcommand("solos", "Mini solos terms");
  solos->add_option("verb", solos_verb)->required()->check(CLI::IsMember({"parse", "step", "encode"}));
  solos->add_option("term", term)->required();
  solos->add_option("-o", out.out_path, "Output file");

  auto* gen = app.add_subcommand("generate", "Random test fixture");
  what = "double-square";
  gen->add_option("fixture", what)->check(CLI::IsMember({"double-square", "rule-match", "graph"}));
  gen->add_option("--seed", seed, "Generator seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) run_validate(path, flag, out);
    else if (*apply) run_apply(path, path2, path3, flag, flag2, out);
    else if (*dobj) run_decompose_object(path, cat, flag, out);
    else if (*dglob) run_decompose_global(path, path2, out);
    else if (*comp) run_compose(path, out);
    else if (*solve) {
      if (!flag && path2.empty()) throw UsageError{"solve-local needs --accommodation or --search"};
      run_solve_local(path, path2, flag, budget, out);
    } else if (*check) run_check(what, path, flag, out);
    else if (*solos) run_solos(solos_verb, term, out);
    else if (*gen) run_generate(what, seed, out);
  } catch (const Rejected& r) {
    report("rejected", r.message, r.details);
    return 1;
  } catch (const UsageError& e) {
    report("usage", e.message);
    return 2;
  } catch (const adhesive::io::FormatError& e) {
    report("io", e.what());
    return 2;
  } catch (const adhesive::solos::SyntaxError& e) {
    report("usage", e.what());
    return 2;
  } catch (const adhesive::Error& e) {
    // Malformed values (non-morphisms, label conflicts, ...) are input errors.
    report("invalid", e.what());
    return 2;
  } catch (const std::exception& e) {
    report("io", e.what());
    return 2;
  }
  return 0;
}
