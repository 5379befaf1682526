#pragma once

// Membership in the cyclic-witness sets GSt_cp and GSt^cp, the periodicity
// cross-check against the resolution engine, infinite global dimension
// witnesses and the indecomposables catalog.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stralg/complex.hpp"
#include "stralg/resolution.hpp"
#include "stralg/syzygy.hpp"
#include "stralg/walks.hpp"

namespace stralg {

enum class WitnessKind { Prefix, InteriorValley, Suffix };

inline std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Prefix: return "prefix";
    case WitnessKind::InteriorValley: return "interior-valley";
    case WitnessKind::Suffix: return "suffix";
  }
  return "?";
}

/// Prefix: w.omega is a generalized string, w minimal for w_1.
/// InteriorValley: w kills both letters around valley l, minimal for both.
/// Suffix: omega.w^-1 is a generalized string, w minimal for w_n^-1.
struct PeriodicityWitness {
  WitnessKind kind;
  Path path;
  std::size_t valley = 0;  // position l for interior valleys, 0 or n otherwise
};

struct MembershipVerdict {
  bool member = false;
  std::optional<PeriodicityWitness> witness;
};

namespace detail {

inline bool extends_to_gst(const BoundQuiver& bq, std::vector<Letter> letters) {
  return is_generalized_string(bq, GeneralizedWalk(std::move(letters))).ok;
}

}  // namespace detail

/// Re-checks every defining clause of a witness; throws InternalError on
/// any failure.
inline void revalidate(const SyzygyGraph& graph, const GeneralizedWalk& w,
                       const PeriodicityWitness& wit) {
  const auto& bq = graph.bound_quiver();
  const auto& q = bq.quiver();
  const auto mu = mu_profile(w);
  auto need = [&](bool ok, const std::string& what) {
    if (!ok)
      throw InternalError("witness " + format_path(q, wit.path) + " for " + format_walk(q, w) +
                          " fails: " + what);
  };
  need(!w.is_trivial(), "walk has positive length");
  need(graph.is_cyclic(wit.path), "witness is a cyclic path");
  switch (wit.kind) {
    case WitnessKind::Prefix: {
      const auto& w1 = w.letter(0);
      need(mu.minimum == 0, "mu(omega) = 0");
      need(w1.is_direct(), "first letter direct");
      need(is_minimal_for(bq, wit.path, w1.path), "minimal for w_1");
      auto letters = w.letters();
      letters.insert(letters.begin(), Letter{wit.path, Direction::Direct});
      need(detail::extends_to_gst(bq, std::move(letters)), "w.omega is a generalized string");
      break;
    }
    case WitnessKind::InteriorValley: {
      const auto l = wit.valley;
      need(mu.minimum == 0, "mu(omega) = 0");
      need(l > 0 && l < w.length() && l % 2 == 0 && mu.values[l] == 0, "valley index");
      const auto& in = w.letter(l - 1).path;
      const auto& out = w.letter(l).path;
      need(is_minimal_for(bq, wit.path, in), "minimal for w_l^-1");
      need(is_minimal_for(bq, wit.path, out), "minimal for w_{l+1}");
      break;
    }
    case WitnessKind::Suffix: {
      const auto& wn = w.letter(w.length() - 1);
      need(mu.minimum == mu.end(), "mu(omega) = mu(n)");
      need(!wn.is_direct(), "last letter inverse");
      need(is_minimal_for(bq, wit.path, wn.path), "minimal for w_n^-1");
      auto letters = w.letters();
      letters.push_back(Letter{wit.path, Direction::Inverse});
      need(detail::extends_to_gst(bq, std::move(letters)), "omega.w^-1 is a generalized string");
      break;
    }
  }
}

/// Literal GSt_cp membership of a generalized string: mu(omega) = 0 and
/// either a cyclic prefix witness minimal for w_1, or an even valley l > 0
/// with a cyclic witness in the valley kernel minimal for both adjacent
/// letters.
inline MembershipVerdict in_gst_cp(const SyzygyGraph& graph, const GeneralizedWalk& w) {
  MembershipVerdict v;
  if (w.is_trivial()) return v;
  const auto& bq = graph.bound_quiver();
  const auto mu = mu_profile(w);
  if (mu.minimum != 0) return v;
  auto emit = [&](PeriodicityWitness wit) {
    revalidate(graph, w, wit);
    v.member = true;
    v.witness = std::move(wit);
    return v;
  };
  const auto& w1 = w.letter(0);
  if (w1.is_direct()) {
    for (auto k : graph.killer_indices(*graph.index_of(w1.path))) {
      const auto& g = graph.nodes()[k];
      if (graph.is_cyclic_node(k) && junction_ok(bq, Letter{g, Direction::Direct}, w1))
        return emit({WitnessKind::Prefix, g, 0});
    }
  }
  for (std::size_t l = 2; l < w.length(); l += 2) {
    if (mu.values[l] != 0) continue;
    const auto& in = w.letter(l - 1).path;
    const auto& out = w.letter(l).path;
    for (auto k : graph.valley_nodes(graph.index_of(in), graph.index_of(out))) {
      const auto& g = graph.nodes()[k];
      if (graph.is_cyclic_node(k) && is_minimal_for(bq, g, in) && is_minimal_for(bq, g, out))
        return emit({WitnessKind::InteriorValley, g, l});
    }
  }
  return v;
}

/// Literal GSt^cp membership with the dual minimality condition.
inline MembershipVerdict in_gst_cp_upper(const SyzygyGraph& graph, const GeneralizedWalk& w) {
  MembershipVerdict v;
  if (w.is_trivial()) return v;
  const auto& bq = graph.bound_quiver();
  const auto mu = mu_profile(w);
  if (mu.minimum != mu.end()) return v;
  const auto& wn = w.letter(w.length() - 1);
  if (wn.is_direct()) return v;
  for (auto k : graph.killer_indices(*graph.index_of(wn.path))) {
    const auto& g = graph.nodes()[k];
    if (!graph.is_cyclic_node(k) || !junction_ok(bq, wn, Letter{g, Direction::Inverse})) continue;
    PeriodicityWitness wit{WitnessKind::Suffix, g, w.length()};
    revalidate(graph, w, wit);
    v.member = true;
    v.witness = wit;
    return v;
  }
  return v;
}

// ---------------------------------------------------------------------------

/// Where the membership sets and the engine can part ways.
enum class GapClass {
  None,
  InteriorMinimumOnly,       // global minimum only at interior positions
  IntersectionNotMinimal,    // cyclic valley generator not minimal for both sides
  Other
};

inline std::string to_string(GapClass g) {
  switch (g) {
    case GapClass::None: return "none";
    case GapClass::InteriorMinimumOnly: return "interior-minimum-only";
    case GapClass::IntersectionNotMinimal: return "intersection-not-minimal";
    case GapClass::Other: return "other";
  }
  return "?";
}

/// Both verdicts on the canonical representative of a generalized string.
struct Decision {
  GeneralizedWalk walk;
  MembershipVerdict membership;
  PeriodicityVerdict engine;

  bool agrees() const { return membership.member == engine.periodic; }
};

inline Decision decide(const SyzygyGraph& graph, const GeneralizedWalk& input) {
  const auto check = is_generalized_string(graph.bound_quiver(), input);
  if (!check.ok) throw DomainError("not a generalized string: " + check.failure);
  Decision d;
  d.walk = canonicalize(input);
  d.membership = in_gst_cp(graph, d.walk);
  if (!d.membership.member) d.membership = in_gst_cp_upper(graph, d.walk);
  d.engine = detail::periodicity_of(graph, d.walk);
  return d;
}

/// Explains a disagreement.
inline GapClass diagnose_gap(const SyzygyGraph& graph, const Decision& d) {
  if (d.agrees()) return GapClass::None;
  if (!d.membership.member) {
    const auto& w = d.walk;
    const auto mu = mu_profile(w);
    if (mu.values.front() != mu.minimum && mu.end() != mu.minimum)
      return GapClass::InteriorMinimumOnly;
    const auto& bq = graph.bound_quiver();
    for (std::size_t l = 1; l < w.length(); ++l) {
      if (mu.values[l] != mu.minimum) continue;
      const auto& in = w.letter(l - 1).path;
      const auto& out = w.letter(l).path;
      for (auto k : graph.valley_nodes(graph.index_of(in), graph.index_of(out))) {
        const auto& g = graph.nodes()[k];
        if (graph.is_cyclic_node(k) &&
            (!is_minimal_for(bq, g, in) || !is_minimal_for(bq, g, out)))
          return GapClass::IntersectionNotMinimal;
      }
    }
  }
  return GapClass::Other;
}

inline GapClass diagnose_gap(const SyzygyGraph& graph, const GeneralizedWalk& w) {
  return diagnose_gap(graph, decide(graph, w));
}

struct Classification {
  GeneralizedWalk walk;  // canonical representative
  bool periodic = false;
  std::optional<PeriodicityWitness> witness;  // when periodic
  std::vector<Path> cycle;                    // when periodic
  std::size_t resolution_length = 0;          // when bounded
};

inline std::string theorem_dump(const SyzygyGraph& graph, const GeneralizedWalk& w) {
  const auto& bq = graph.bound_quiver();
  const auto& q = bq.quiver();
  std::ostringstream out;
  out << "walk: " << format_walk(q, w) << "\nmu:";
  for (int m : mu_profile(w).values) out << ' ' << m;
  out << '\n';
  const auto tp = good_truncation(bq, build_string_complex(bq, w));
  for (const auto& v : tp.valleys) {
    out << "valley " << v.position << ":";
    for (const auto& g : v.kernel.generators)
      out << ' ' << format_path(q, g) << (graph.is_cyclic(g) ? " [cyclic]" : "");
    out << '\n';
  }
  for (const auto& d : tp.diagnostics) out << "note: " << d << '\n';
  const auto trace = resolve(graph, w, 8);
  out << "betti (8 steps): " << format_betti(q, betti_data(trace)) << '\n';
  out << "gap class: " << to_string(diagnose_gap(graph, w)) << '\n';
  return out.str();
}

/// Canonicalizes, then runs both the membership decision and the engine;
/// disagreement raises TheoremViolation.
inline Classification classify(const SyzygyGraph& graph, const GeneralizedWalk& input) {
  auto d = decide(graph, input);
  if (!d.agrees()) {
    const auto& q = graph.bound_quiver().quiver();
    throw TheoremViolation("membership says " +
                               std::string(d.membership.member ? "periodic" : "bounded") +
                               " but the resolution engine says " +
                               (d.engine.periodic ? "periodic" : "bounded") + " for " +
                               format_walk(q, d.walk),
                           theorem_dump(graph, d.walk));
  }
  Classification c;
  c.walk = std::move(d.walk);
  c.periodic = d.engine.periodic;
  c.witness = std::move(d.membership.witness);
  c.cycle = std::move(d.engine.cycle);
  c.resolution_length = d.engine.bounded_length;
  return c;
}

// ---------------------------------------------------------------------------

struct GldimWitness {
  GeneralizedWalk walk;
  PeriodicityWitness witness;
};

/// Searches canonical generalized strings of up to max_len letters for a
/// member of GSt_cp or GSt^cp. Among members with the fewest letters the
/// one with the greatest total arrow length is chosen, ties going to the
/// latest in canonical order. nullopt is not a finiteness claim.
inline std::optional<GldimWitness> gldim_witness(const SyzygyGraph& graph, std::size_t max_len) {
  const auto& bq = graph.bound_quiver();
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::optional<GldimWitness> best;
    std::size_t best_weight = 0;
    EnumerationOptions opts{n, n, true, false};
    for_each_generalized_string(bq, opts, [&](const GeneralizedWalk& w) {
      auto m = in_gst_cp(graph, w);
      if (!m.member) m = in_gst_cp_upper(graph, w);
      if (!m.member) return;
      std::size_t weight = 0;
      for (const auto& l : w.letters()) weight += l.path.length();
      if (!best || weight >= best_weight) {
        best = GldimWitness{w, *m.witness};
        best_weight = weight;
      }
    });
    if (best) return best;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct IndecomposableEntry {
  int family;  // 1: P_w, 2: truncation for GSt_cp, 3: truncation for GSt^cp minus GSt_cp
  GeneralizedWalk walk;
  int shift;
  std::optional<PeriodicityWitness> witness;
};

/// Three disjoint families over canonical representatives of up to max_len
/// letters, each under shifts -shift_range..shift_range. Refuses algebras
/// without the unique maximal path property.
inline std::vector<IndecomposableEntry> enumerate_indecomposables(const SyzygyGraph& graph,
                                                                  std::size_t max_len,
                                                                  int shift_range) {
  const auto& bq = graph.bound_quiver();
  const auto ump = has_unique_maximal_path_property(bq);
  if (!ump.holds)
    throw DomainError("unique maximal path property fails: arrow " +
                      bq.quiver().arrow(*ump.witness).name + " lies on two maximal paths");
  if (shift_range < 0) throw PreconditionError("shift range must be non-negative");

  std::vector<IndecomposableEntry> plain, lower, upper;
  EnumerationOptions opts{1, max_len, true, true};
  for_each_generalized_string(bq, opts, [&](const GeneralizedWalk& w) {
    plain.push_back({1, w, 0, std::nullopt});
    if (w.is_trivial()) return;
    if (auto m = in_gst_cp(graph, w); m.member) {
      lower.push_back({2, w, 0, m.witness});
    } else if (auto u = in_gst_cp_upper(graph, w); u.member) {
      upper.push_back({3, w, 0, u.witness});
    }
  });
  std::vector<IndecomposableEntry> out;
  for (const auto* family : {&plain, &lower, &upper})
    for (const auto& e : *family)
      for (int i = -shift_range; i <= shift_range; ++i) {
        auto copy = e;
        copy.shift = i;
        out.push_back(std::move(copy));
      }
  return out;
}

}  // namespace stralg
