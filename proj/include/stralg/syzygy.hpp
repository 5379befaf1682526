#pragma once

// Kernels of path morphisms p(w): P_s(w) -> P_t(w), u |-> uw, and the
// syzygy graph whose edges u -> v say "u is a minimal killer of v".

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stralg/bound_quiver.hpp"
#include "stralg/error.hpp"

namespace stralg {

/// Generators of a kernel, at most one per arrow into the domain vertex.
struct KernelPresentation {
  std::vector<Path> generators;  // sorted in the global path order

  bool empty() const { return generators.empty(); }
  bool operator==(const KernelPresentation&) const = default;
};

namespace detail {

/// w u = 0, for nonzero composable w and u.
inline bool kills(const BoundQuiver& bq, const Path& w, const Path& u) {
  return !bq.junction_nonzero(w, u);
}

/// Shortest suffix of (left completion of a) * a that kills v, if any.
inline std::optional<Path> killer_through(const BoundQuiver& bq, ArrowId a, const Path& v) {
  const auto& q = bq.quiver();
  const auto arrow = Path::arrow(q, a);
  const auto& hat = bq.arrow_left_completion(a);
  const auto full = (hat ? *hat : left_completion(bq, arrow)).then(arrow);
  for (std::size_t k = 1; k <= full.length(); ++k) {
    auto candidate = full.suffix(q, k);
    if (kills(bq, candidate, v)) return candidate;
  }
  return std::nullopt;
}

inline void sort_unique(std::vector<Path>& paths) {
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
}

}  // namespace detail

/// True iff w kills u and no proper suffix of w does.
inline bool is_minimal_for(const BoundQuiver& bq, const Path& w, const Path& u) {
  const auto& q = bq.quiver();
  if (w.target() != u.source())
    throw PreconditionError("t(" + format_path(q, w) + ") != s(" + format_path(q, u) + ")");
  if (!bq.is_nonzero(w) || !bq.is_nonzero(u))
    throw PreconditionError("minimality is defined for nonzero paths only");
  if (!detail::kills(bq, w, u))
    throw PreconditionError(format_path(q, w) + " does not kill " + format_path(q, u));
  for (std::size_t k = 1; k < w.length(); ++k)
    if (detail::kills(bq, w.suffix(q, k), u)) return false;
  return true;
}

/// Presents ker p(v): one generator a* per arrow a into s(v) that can kill v.
inline KernelPresentation minimal_killers(const BoundQuiver& bq, const Path& v) {
  const auto& q = bq.quiver();
  if (v.is_trivial() || !bq.is_nonzero(v))
    throw PreconditionError("minimal_killers needs a nonzero path of length >= 1");
  KernelPresentation out;
  for (auto a : q.arrows_into(v.source())) {
    auto g = detail::killer_through(bq, a, v);
    if (!g) continue;
    if (!is_minimal_for(bq, *g, v))
      throw InternalError(format_path(q, *g) + " is not minimal for " + format_path(q, v));
    out.generators.push_back(std::move(*g));
  }
  detail::sort_unique(out.generators);
  return out;
}

/// Kernel at a valley: ker p(u) ∩ ker p(v) when both sides are present
/// (u underlies the inverse letter entering the valley, v the direct letter
/// leaving it), otherwise the kernel of the present side.
inline KernelPresentation valley_kernel(const BoundQuiver& bq, const std::optional<Path>& left,
                                        const std::optional<Path>& right) {
  if (!left && !right) throw PreconditionError("valley_kernel needs at least one side");
  for (const auto* side : {&left, &right})
    if (*side && (side->value().is_trivial() || !bq.is_nonzero(side->value())))
      throw PreconditionError("valley sides must be nonzero paths of length >= 1");
  if (!left) return minimal_killers(bq, *right);
  if (!right) return minimal_killers(bq, *left);
  const auto& q = bq.quiver();
  if (left->source() != right->source())
    throw PreconditionError("valley sides " + format_path(q, *left) + " and " +
                            format_path(q, *right) + " start at different vertices");
  KernelPresentation out;
  for (auto a : q.arrows_into(left->source())) {
    auto gl = detail::killer_through(bq, a, *left);
    auto gr = detail::killer_through(bq, a, *right);
    if (!gl || !gr) continue;
    Path g = gl->length() >= gr->length() ? *gl : *gr;
    for (std::size_t k = 1; k < g.length(); ++k) {
      auto s = g.suffix(q, k);
      if (detail::kills(bq, s, *left) && detail::kills(bq, s, *right))
        throw InternalError("valley generator " + format_path(q, g) + " is not suffix-minimal");
    }
    out.generators.push_back(std::move(g));
  }
  detail::sort_unique(out.generators);
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

/// Nodes on a directed cycle (non-trivial SCC or self-loop), iterative Tarjan.
inline std::vector<bool> on_cycle(const std::vector<std::vector<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset), comp_size;
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [node, next] = work.back();
      if (next < succ[node].size()) {
        const auto to = succ[node][next++];
        if (index[to] == unset) {
          index[to] = low[to] = counter++;
          stack.push_back(to);
          on_stack[to] = true;
          work.emplace_back(to, 0);
        } else if (on_stack[to]) {
          low[node] = std::min(low[node], index[to]);
        }
        continue;
      }
      const auto done = node;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
      if (low[done] == index[done]) {
        const auto id = comp_size.size();
        comp_size.push_back(0);
        for (;;) {
          const auto top = stack.back();
          stack.pop_back();
          on_stack[top] = false;
          comp[top] = id;
          ++comp_size[id];
          if (top == done) break;
        }
      }
    }
  }
  std::vector<bool> out(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    out[v] = comp_size[comp[v]] > 1 ||
             std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
  }
  return out;
}

/// Forward closure of the marked set.
inline std::vector<bool> reach_from(const std::vector<std::vector<std::size_t>>& succ,
                                    std::vector<bool> marked) {
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < marked.size(); ++v)
    if (marked[v]) queue.push_back(v);
  while (!queue.empty()) {
    const auto v = queue.back();
    queue.pop_back();
    for (auto w : succ[v])
      if (!marked[w]) {
        marked[w] = true;
        queue.push_back(w);
      }
  }
  return marked;
}

}  // namespace detail

class SyzygyGraph {
 public:
  explicit SyzygyGraph(BoundQuiver bq) : bq_(std::move(bq)) {
    const auto report = validate_string_algebra(bq_);
    if (!report.is_string_algebra) {
      std::string why;
      for (const auto& v : report.violations) why += "; rule " + v.rule + ": " + v.witness;
      throw DomainError("not a string algebra" + why);
    }
    nodes_ = enumerate_paths(bq_, 1);
    killers_.resize(nodes_.size());
    killed_.resize(nodes_.size());
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      for (const auto& g : minimal_killers(bq_, nodes_[v]).generators) {
        const auto u = *index_of(g);
        killers_[v].push_back(u);
        killed_[u].push_back(v);
      }
    }
    for (auto& k : killed_) std::sort(k.begin(), k.end());
    on_cycle_ = detail::on_cycle(killed_);
    cyclic_ = detail::reach_from(killed_, on_cycle_);
    chain_depth_.assign(nodes_.size(), 0);
    cycle_.resize(nodes_.size());
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      if (cyclic_[v])
        cycle_[v] = cycle_behind(v);
      else
        chain_depth(v);
    }
    build_valley_table();
  }

  const BoundQuiver& bound_quiver() const { return bq_; }
  const std::vector<Path>& nodes() const { return nodes_; }

  std::optional<std::size_t> index_of(const Path& p) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), p);
    if (it == nodes_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
  }

  /// In-neighbours of v: its minimal killers, in path order.
  std::vector<Path> killers_of(const Path& v) const { return collect(killers_.at(require(v))); }
  /// Out-neighbours of u: the paths u is a minimal killer of.
  std::vector<Path> killed_by(const Path& u) const { return collect(killed_.at(require(u))); }

  std::vector<std::pair<Path, Path>> edges() const {
    std::vector<std::pair<Path, Path>> out;
    for (std::size_t u = 0; u < nodes_.size(); ++u)
      for (auto v : killed_[u]) out.emplace_back(nodes_[u], nodes_[v]);
    return out;
  }

  const std::vector<std::size_t>& killer_indices(std::size_t v) const { return killers_.at(v); }

  /// Length of the longest killer chain ending at a node outside Pa_c
  /// (the node itself counts); 0 for nodes in Pa_c.
  std::size_t chain_length(std::size_t v) const { return chain_depth_.at(v); }
  /// For a node in Pa_c, a cycle reached by following cyclic killers back
  /// from it, listed in the order met; empty otherwise.
  const std::vector<std::size_t>& cycle_behind_node(std::size_t v) const { return cycle_.at(v); }
  bool is_cyclic_node(std::size_t v) const { return cyclic_.at(v); }

  /// valley_kernel by node index, as node indices in path order. A missing
  /// side is nullopt; at least one side must be given.
  const std::vector<std::size_t>& valley_nodes(std::optional<std::size_t> left,
                                               std::optional<std::size_t> right) const {
    if (!left && !right) throw PreconditionError("valley_nodes needs at least one side");
    if (!left) return killers_.at(*right);
    if (!right) return killers_.at(*left);
    const auto v = nodes_.at(*left).source();
    if (nodes_.at(*right).source() != v)
      throw PreconditionError("valley sides start at different vertices");
    const auto width = by_source_[v].size();
    return valley_table_[v][local_[*left] * width + local_[*right]];
  }

  bool on_cycle(const Path& p) const { return on_cycle_[require(p)]; }
  bool is_cyclic(const Path& p) const {
    auto i = index_of(p);
    return i && cyclic_[*i];
  }

  /// Pa_c: everything reachable from a cycle of minimal-killer relations.
  std::vector<Path> cyclic_paths() const { return select(cyclic_); }

  /// Arrows in the cyclic set of the subgraph whose edges join two arrows.
  std::vector<Path> cyclic_arrows() const {
    return select(restricted_cyclic([](const Path& u, const Path& v) {
      return u.length() == 1 && v.length() == 1;
    }));
  }

  /// Arrows in the cyclic set of the subgraph whose edges end at an arrow.
  std::vector<Path> cyclic_arrows_star() const {
    auto marked = restricted_cyclic([](const Path&, const Path& v) { return v.length() == 1; });
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      if (nodes_[v].length() != 1) marked[v] = false;
    return select(marked);
  }

  std::string to_dot() const {
    const auto& q = bq_.quiver();
    std::string out = "digraph syzygy {\n  node [shape=ellipse];\n";
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      out += "  n" + std::to_string(v) + " [label=\"" + format_path(q, nodes_[v], "") + "\"";
      if (on_cycle_[v]) out += ", peripheries=2";
      out += "];\n";
    }
    for (std::size_t u = 0; u < nodes_.size(); ++u)
      for (auto v : killed_[u]) out += "  n" + std::to_string(u) + " -> n" + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
  }

 private:
  std::size_t require(const Path& p) const {
    auto i = index_of(p);
    if (!i) throw PreconditionError(format_path(bq_.quiver(), p) + " is not in Pa_{>0}");
    return *i;
  }

  std::vector<Path> collect(const std::vector<std::size_t>& ids) const {
    std::vector<Path> out;
    for (auto i : ids) out.push_back(nodes_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Path> select(const std::vector<bool>& marked) const {
    std::vector<Path> out;
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      if (marked[v]) out.push_back(nodes_[v]);
    return out;
  }

  template <class Keep>
  std::vector<bool> restricted_cyclic(Keep keep) const {
    std::vector<std::vector<std::size_t>> succ(nodes_.size());
    for (std::size_t u = 0; u < nodes_.size(); ++u)
      for (auto v : killed_[u])
        if (keep(nodes_[u], nodes_[v])) succ[u].push_back(v);
    return detail::reach_from(succ, detail::on_cycle(succ));
  }

  std::size_t chain_depth(std::size_t root) {
    if (chain_depth_[root]) return chain_depth_[root];
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < killers_[node].size()) {
        const auto to = killers_[node][next++];
        if (!chain_depth_[to]) stack.emplace_back(to, 0);
        continue;
      }
      std::size_t longest = 0;
      for (auto u : killers_[node]) longest = std::max(longest, chain_depth_[u]);
      chain_depth_[node] = longest + 1;
      stack.pop_back();
    }
    return chain_depth_[root];
  }

  void build_valley_table() {
    const auto nv = bq_.quiver().vertex_count();
    by_source_.assign(nv, {});
    local_.assign(nodes_.size(), 0);
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      auto& group = by_source_[nodes_[v].source()];
      local_[v] = group.size();
      group.push_back(v);
    }
    valley_table_.assign(nv, {});
    for (std::size_t x = 0; x < nv; ++x) {
      const auto& group = by_source_[x];
      auto& table = valley_table_[x];
      table.reserve(group.size() * group.size());
      for (auto l : group)
        for (auto r : group) {
          std::vector<std::size_t> ids;
          for (const auto& g : valley_kernel(bq_, nodes_[l], nodes_[r]).generators)
            ids.push_back(*index_of(g));
          table.push_back(std::move(ids));
        }
    }
  }

  std::vector<std::size_t> cycle_behind(std::size_t v) const {
    std::vector<std::size_t> seen;
    std::vector<std::size_t> position(nodes_.size(), nodes_.size());
    for (;;) {
      if (position[v] != nodes_.size())
        return {seen.begin() + static_cast<std::ptrdiff_t>(position[v]), seen.end()};
      position[v] = seen.size();
      seen.push_back(v);
      const auto& ks = killers_[v];
      v = *std::find_if(ks.begin(), ks.end(), [&](std::size_t u) { return cyclic_[u]; });
    }
  }

  BoundQuiver bq_;
  std::vector<Path> nodes_;
  std::vector<std::vector<std::size_t>> killers_;
  std::vector<std::vector<std::size_t>> killed_;
  std::vector<bool> on_cycle_;
  std::vector<bool> cyclic_;
  std::vector<std::size_t> chain_depth_;
  std::vector<std::vector<std::size_t>> cycle_;
  std::vector<std::vector<std::size_t>> by_source_;
  std::vector<std::size_t> local_;
  std::vector<std::vector<std::vector<std::size_t>>> valley_table_;
};

inline SyzygyGraph syzygy_graph(const BoundQuiver& bq) { return SyzygyGraph(bq); }

inline std::vector<Path> cyclic_paths(const BoundQuiver& bq) {
  return SyzygyGraph(bq).cyclic_paths();
}

}  // namespace stralg
