#pragma once

// Minimal projective resolution of the good truncation of P_w, computed by
// walking minimal-killer edges backwards through the syzygy graph.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stralg/complex.hpp"
#include "stralg/syzygy.hpp"
#include "stralg/walks.hpp"

namespace stralg {

/// Generators entering degree t-k, with multiplicity, in order of first
/// appearance. Each generator g contributes the cover P_{s(g)} and the
/// differential cell p(g).
struct ResolutionStep {
  std::vector<std::pair<Path, std::size_t>> generators;

  bool empty() const { return generators.empty(); }

  std::map<VertexId, std::size_t> covers() const {
    std::map<VertexId, std::size_t> out;
    for (const auto& [g, m] : generators) out[g.source()] += m;
    return out;
  }
};

enum class ResolutionStatus { Terminated, Periodic, DepthExhausted };

struct ResolutionTrace {
  GeneralizedWalk origin;
  int leftmost_degree = 0;
  std::vector<ResolutionStep> steps;  // steps[k-1] is step k
  ResolutionStatus status = ResolutionStatus::DepthExhausted;
  std::size_t terminated_at = 0;      // first empty step, when Terminated
  std::vector<Path> cycle;            // when Periodic
};

struct PeriodicityVerdict {
  bool periodic = false;
  std::vector<Path> cycle;          // minimal-killer cycle reached, when periodic
  std::size_t bounded_length = 0;   // number of nonempty steps, when bounded
};

inline constexpr std::size_t max_resolution_depth = 60;

namespace detail {

inline std::vector<std::pair<Path, std::size_t>> aggregate(
    const std::vector<std::pair<Path, std::size_t>>& items) {
  std::vector<std::pair<Path, std::size_t>> out;
  for (const auto& [p, m] : items) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == p; });
    if (it == out.end())
      out.emplace_back(p, m);
    else
      it->second += m;
  }
  return out;
}

/// Generators of the first syzygy of a generalized string, as node
/// indices with repetition, valley by valley.
inline std::vector<std::size_t> first_syzygy_nodes(const SyzygyGraph& graph,
                                                   const GeneralizedWalk& w) {
  std::vector<std::size_t> out;
  if (w.is_trivial()) return out;
  const auto mu = mu_profile(w);
  const std::size_t n = w.length();
  for (std::size_t j = 0; j <= n; ++j) {
    if (mu.values[j] != mu.minimum) continue;
    std::optional<std::size_t> left, right;
    if (j > 0) left = graph.index_of(w.letter(j - 1).path);
    if (j < n) right = graph.index_of(w.letter(j).path);
    const auto& ids = graph.valley_nodes(left, right);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

inline std::vector<std::pair<Path, std::size_t>> first_syzygy(const SyzygyGraph& graph,
                                                              const GeneralizedWalk& w) {
  std::vector<std::pair<Path, std::size_t>> raw;
  for (auto v : first_syzygy_nodes(graph, w)) raw.emplace_back(graph.nodes()[v], 1);
  return aggregate(raw);
}

/// is_periodic for a walk already known to be a generalized string.
inline PeriodicityVerdict periodicity_of(const SyzygyGraph& graph, const GeneralizedWalk& w) {
  PeriodicityVerdict verdict;
  for (auto root : first_syzygy_nodes(graph, w)) {
    if (graph.is_cyclic_node(root)) {
      verdict.periodic = true;
      verdict.bounded_length = 0;
      for (auto v : graph.cycle_behind_node(root)) verdict.cycle.push_back(graph.nodes()[v]);
      return verdict;
    }
    verdict.bounded_length = std::max(verdict.bounded_length, graph.chain_length(root));
  }
  return verdict;
}

}  // namespace detail

/// Decides unboundedness exactly: the resolution is infinite iff some
/// first syzygy generator lies in Pa_c. Otherwise its length is the longest
/// killer chain behind a generator.
inline PeriodicityVerdict is_periodic(const SyzygyGraph& graph, const GeneralizedWalk& w) {
  const auto check = is_generalized_string(graph.bound_quiver(), w);
  if (!check.ok) throw DomainError("not a generalized string: " + check.failure);
  return detail::periodicity_of(graph, w);
}

/// Runs the syzygy recursion for at most `depth` steps.
inline ResolutionTrace resolve(const SyzygyGraph& graph, const GeneralizedWalk& w,
                               std::size_t depth = 32) {
  if (depth == 0 || depth > max_resolution_depth)
    throw PreconditionError("depth must lie in 1.." + std::to_string(max_resolution_depth));
  const auto& bq = graph.bound_quiver();
  const auto check = is_generalized_string(bq, w);
  if (!check.ok) throw DomainError("not a generalized string: " + check.failure);
  ResolutionTrace trace;
  trace.origin = w;
  trace.leftmost_degree = mu_profile(w).minimum;
  auto current = detail::first_syzygy(graph, w);
  for (std::size_t k = 1; k <= depth; ++k) {
    if (current.empty()) {
      trace.status = ResolutionStatus::Terminated;
      trace.terminated_at = k;
      return trace;
    }
    std::vector<std::pair<Path, std::size_t>> next;
    for (const auto& [g, m] : current)
      for (const auto& killer : minimal_killers(bq, g).generators) next.emplace_back(killer, m);
    trace.steps.push_back({std::move(current)});
    current = detail::aggregate(next);
  }
  if (current.empty()) {
    trace.status = ResolutionStatus::Terminated;
    trace.terminated_at = depth + 1;
    return trace;
  }
  auto verdict = detail::periodicity_of(graph, w);
  if (verdict.periodic) {
    trace.status = ResolutionStatus::Periodic;
    trace.cycle = std::move(verdict.cycle);
  } else {
    trace.status = ResolutionStatus::DepthExhausted;
  }
  return trace;
}

using BettiData = std::vector<std::map<VertexId, std::size_t>>;

inline BettiData betti_data(const ResolutionTrace& trace) {
  BettiData out;
  for (const auto& s : trace.steps) out.push_back(s.covers());
  return out;
}

inline std::string format_betti(const Quiver& q, const BettiData& betti) {
  std::string out = "[";
  for (std::size_t k = 0; k < betti.size(); ++k) {
    if (k > 0) out += ", ";
    out += "{";
    bool first = true;
    for (const auto& [v, m] : betti[k])
      for (std::size_t i = 0; i < m; ++i) {
        if (!first) out += ",";
        out += q.vertex_name(v);
        first = false;
      }
    out += "}";
  }
  return out + "]";
}

}  // namespace stralg
