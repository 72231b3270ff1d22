#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adhesive/graph.hpp"

namespace adhesive {

/// Restrictions on a morphism search.
struct SearchOptions {
  bool mono = false;
  /// Bijective; implies mono.
  bool iso = false;
  /// Optional filters on individual assignments (dom index, cod index).
  std::function<bool(std::size_t, std::size_t)> node_allowed;
  std::function<bool(std::size_t, std::size_t)> edge_allowed;
};

namespace detail {

// Backtracking homomorphism search.
//
// Nodes are assigned in index order, candidates tried in ascending index
// order; edges are enumerated only after all nodes are fixed. The visiting
// order is therefore lexicographic on (node assignment, edge assignment).
// While assigning nodes, every edge whose endpoints are both fixed is checked
// for at least one compatible target edge.
class MorphismSearch {
 public:
  using Visit = std::function<bool(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>;

  MorphismSearch(const Graph& a, const Graph& b, const SearchOptions& opt)
      : a_(a), b_(b), opt_(opt) {
    mono_ = opt.mono || opt.iso;
    std::unordered_map<std::string, int> node_labels, edge_labels;
    auto intern = [](std::unordered_map<std::string, int>& table, const std::string& s) {
      auto [it, _] = table.emplace(s, static_cast<int>(table.size()));
      return it->second;
    };
    for (std::size_t n = 0; n < b.node_count(); ++n) b_node_label_.push_back(intern(node_labels, b.node_label(n)));
    for (std::size_t n = 0; n < a.node_count(); ++n) a_node_label_.push_back(intern(node_labels, a.node_label(n)));
    for (std::size_t e = 0; e < b.edge_count(); ++e) b_edge_label_.push_back(intern(edge_labels, b.edge_label(e)));
    for (std::size_t e = 0; e < a.edge_count(); ++e) a_edge_label_.push_back(intern(edge_labels, a.edge_label(e)));
    label_count_ = edge_labels.size() + 1;
    for (std::size_t e = 0; e < b.edge_count(); ++e)
      b_edges_by_key_[key(b.src(e), b.tgt(e), b_edge_label_[e])].push_back(e);
    closing_.resize(a.node_count());
    for (std::size_t e = 0; e < a.edge_count(); ++e)
      closing_[std::max(a.src(e), a.tgt(e))].push_back(e);
  }

  void run(const Visit& visit) {
    if (opt_.iso && (a_.node_count() != b_.node_count() || a_.edge_count() != b_.edge_count())) return;
    if (mono_ && (a_.node_count() > b_.node_count() || a_.edge_count() > b_.edge_count())) return;
    visit_ = &visit;
    nodes_.assign(a_.node_count(), 0);
    edges_.assign(a_.edge_count(), 0);
    used_nodes_.assign(b_.node_count(), false);
    used_edges_.assign(b_.edge_count(), false);
    stopped_ = false;
    assign_node(0);
  }

 private:
  std::uint64_t key(std::size_t s, std::size_t t, int label) const {
    return (static_cast<std::uint64_t>(s) * (b_.node_count() + 1) + t) * label_count_ +
           static_cast<std::uint64_t>(label);
  }

  const std::vector<std::size_t>* targets(std::size_t ae) const {
    auto it = b_edges_by_key_.find(key(nodes_[a_.src(ae)], nodes_[a_.tgt(ae)], a_edge_label_[ae]));
    return it == b_edges_by_key_.end() ? nullptr : &it->second;
  }

  bool degrees_fit(std::size_t an, std::size_t bn) const {
    auto ao = a_.out_edges(an).size(), ai = a_.in_edges(an).size();
    auto bo = b_.out_edges(bn).size(), bi = b_.in_edges(bn).size();
    if (opt_.iso) return ao == bo && ai == bi;
    if (mono_) return ao <= bo && ai <= bi;
    return true;
  }

  bool closing_edges_fit(std::size_t an) const {
    for (auto ae : closing_[an]) {
      const auto* cands = targets(ae);
      if (!cands) return false;
      if (opt_.edge_allowed) {
        bool any = false;
        for (auto be : *cands)
          if (opt_.edge_allowed(ae, be)) { any = true; break; }
        if (!any) return false;
      }
    }
    return true;
  }

  void assign_node(std::size_t an) {
    if (stopped_) return;
    if (an == a_.node_count()) {
      assign_edge(0);
      return;
    }
    for (std::size_t bn = 0; bn < b_.node_count() && !stopped_; ++bn) {
      if (a_node_label_[an] != b_node_label_[bn]) continue;
      if (mono_ && used_nodes_[bn]) continue;
      if (!degrees_fit(an, bn)) continue;
      if (opt_.node_allowed && !opt_.node_allowed(an, bn)) continue;
      nodes_[an] = bn;
      if (!closing_edges_fit(an)) continue;
      used_nodes_[bn] = true;
      assign_node(an + 1);
      used_nodes_[bn] = false;
    }
  }

  void assign_edge(std::size_t ae) {
    if (stopped_) return;
    if (ae == a_.edge_count()) {
      if (!(*visit_)(nodes_, edges_)) stopped_ = true;
      return;
    }
    const auto* cands = targets(ae);
    if (!cands) return;
    for (auto be : *cands) {
      if (stopped_) return;
      if (mono_ && used_edges_[be]) continue;
      if (opt_.edge_allowed && !opt_.edge_allowed(ae, be)) continue;
      edges_[ae] = be;
      used_edges_[be] = true;
      assign_edge(ae + 1);
      used_edges_[be] = false;
    }
  }

  const Graph& a_;
  const Graph& b_;
  const SearchOptions& opt_;
  bool mono_ = false;
  std::vector<int> a_node_label_, b_node_label_, a_edge_label_, b_edge_label_;
  std::size_t label_count_ = 1;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> b_edges_by_key_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::size_t> nodes_, edges_;
  std::vector<bool> used_nodes_, used_edges_;
  const Visit* visit_ = nullptr;
  bool stopped_ = false;
};

}  // namespace detail

/// Calls `visit(node_map, edge_map)` for every morphism a -> b allowed by
/// `opt`, in canonical order, until `visit` returns false.
template <class F>
void for_each_morphism(const Graph& a, const Graph& b, const SearchOptions& opt, F&& visit) {
  detail::MorphismSearch search(a, b, opt);
  detail::MorphismSearch::Visit v = [&](const std::vector<std::size_t>& n, const std::vector<std::size_t>& e) {
    return static_cast<bool>(visit(n, e));
  };
  search.run(v);
}

inline std::vector<Morphism> enumerate_morphisms(const Graph& a, const Graph& b, const SearchOptions& opt) {
  std::vector<Morphism> out;
  for_each_morphism(a, b, opt, [&](const auto& n, const auto& e) {
    out.emplace_back(Morphism::Unchecked{}, a, b, n, e);
    return true;
  });
  return out;
}

/// All morphisms a -> b (only monos when `mono_only`), lexicographic on the
/// node assignment and then on the edge assignment.
inline std::vector<Morphism> enumerate_morphisms(const Graph& a, const Graph& b, bool mono_only = false) {
  SearchOptions opt;
  opt.mono = mono_only;
  return enumerate_morphisms(a, b, opt);
}

/// Number of allowed morphisms, stopping early once `limit` is reached.
inline std::size_t count_morphisms(const Graph& a, const Graph& b, const SearchOptions& opt,
                                   std::size_t limit = SIZE_MAX) {
  std::size_t count = 0;
  for_each_morphism(a, b, opt, [&](const auto&, const auto&) { return ++count < limit; });
  return count;
}

inline std::optional<Morphism> find_morphism(const Graph& a, const Graph& b, const SearchOptions& opt) {
  std::optional<Morphism> found;
  for_each_morphism(a, b, opt, [&](const auto& n, const auto& e) {
    found.emplace(Morphism::Unchecked{}, a, b, n, e);
    return false;
  });
  return found;
}

inline std::optional<Morphism> find_isomorphism(const Graph& a, const Graph& b, SearchOptions opt = {}) {
  opt.iso = true;
  return find_morphism(a, b, opt);
}

}  // namespace adhesive
