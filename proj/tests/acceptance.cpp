// Acceptance run: one PASS/FAIL line per criterion. All comparisons are
// exact; the only numeric bound is the runtime budget of criterion 5.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stralg/stralg.hpp"
#include "support/fixtures.hpp"
#include "support/random_algebra.hpp"
#include "support/random_walk.hpp"

using namespace stralg;
using testing_support::load_fixture;

namespace {

constexpr std::size_t kRandomAlgebras = 200;
constexpr std::size_t kMaxVertices = 8;
constexpr std::size_t kTheoremLetters = 6;
constexpr double kTheoremBudgetSeconds = 60.0;
constexpr std::size_t kOracleLetters = 4;
constexpr std::size_t kOracleDepth = 12;
constexpr std::size_t kRandomWalks = 10000;

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << " (" << name << ")";
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << std::endl;
  if (!ok) ++failures;
}

std::set<std::string> path_names(const BoundQuiver& bq, const std::vector<Path>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(format_path(bq.quiver(), p, ""));
  return out;
}

std::string betti_text(const BoundQuiver& bq, const ResolutionTrace& t) {
  return format_betti(bq.quiver(), betti_data(t));
}

void triangle_example() {
  const SyzygyGraph g(load_fixture("triangle"));
  const auto& bq = g.bound_quiver();
  std::vector<std::string> bad;
  if (path_names(bq, g.cyclic_paths()) != std::set<std::string>{"a", "bc", "c", "ab"})
    bad.push_back("cyclic paths");
  const auto w = parse_walk("(b c)", bq);
  const auto c = classify(g, w);
  if (!c.periodic || !c.witness || c.witness->kind != WitnessKind::Prefix ||
      c.witness->path != bq.path_from_names("a"))
    bad.push_back("classification");
  const auto t = resolve(g, w, 6);
  if (betti_text(bq, t) != "[{1}, {3}, {1}, {3}, {1}, {3}]") bad.push_back("betti " + betti_text(bq, t));
  const std::vector<std::string> expected{"a", "c", "ab", "c", "ab", "c"};
  std::vector<std::string> got;
  for (const auto& s : t.steps)
    for (const auto& [p, m] : s.generators) got.push_back(format_path(bq.quiver(), p, ""));
  if (got != expected) bad.push_back("differential paths");
  std::string detail;
  for (const auto& b : bad) detail += (detail.empty() ? "" : ", ") + b;
  report(1, "triangle example", bad.empty(), detail);
}

void fivevertex_example() {
  const SyzygyGraph g(load_fixture("fivevertex"));
  const auto& bq = g.bound_quiver();
  std::vector<std::string> bad;
  if (path_names(bq, g.cyclic_paths()) != std::set<std::string>{"x", "d", "c", "b"})
    bad.push_back("cyclic paths");
  const auto w = parse_walk("a . b~ . c", bq);
  const auto tp = good_truncation(bq, build_string_complex(bq, w));
  bool kernel_ok = tp.generators() == std::vector<Path>{bq.path_from_names("d")};
  bool at_two = false;
  for (const auto& v : tp.valleys)
    if (!v.kernel.empty()) at_two = v.position == 2;
  if (!kernel_ok || !at_two) bad.push_back("truncation kernel");
  if (betti_text(bq, resolve(g, w, 4)) != "[{5}, {5}, {5}, {5}]") bad.push_back("betti");
  if (!gldim_witness(g, 4)) bad.push_back("gldim");
  std::string detail;
  for (const auto& b : bad) detail += (detail.empty() ? "" : ", ") + b;
  report(2, "fivevertex example", bad.empty(), detail);
}

void parallel_complex() {
  const auto bq = load_fixture("parallel");
  const auto sc = build_string_complex(bq, parse_walk("a~ . c . d . (c b)~", bq));
  const std::string expected =
      "walk: a~ . c . d . (c b)~\n"
      "degrees: -1..1\n"
      "P^-1 = P_1\n"
      "P^0 = P_2 ⊕ P_2 ⊕ P_1\n"
      "P^1 = P_3\n"
      "d^-1: (p(a) p(c) 0)\n"
      "d^0: (0; p(d); p(cb))\n";
  const auto got = render_text(bq, sc);
  report(3, "parallel complex", got == expected, got == expected ? "" : "rendered:\n" + got);
}

void maximal_paths_facts() {
  const auto line = load_fixture("line4");
  const auto ump = load_fixture("umpp7");
  const auto l = has_unique_maximal_path_property(line);
  const auto u = has_unique_maximal_path_property(ump);
  const bool ok = path_names(line, maximal_paths(line)) == std::set<std::string>{"ab", "bc"} &&
                  !l.holds && l.witness && line.quiver().arrow(*l.witness).name == "b" &&
                  path_names(ump, maximal_paths(ump)) ==
                      std::set<std::string>{"bcab", "d", "b'c'a'b'"} &&
                  u.holds;
  report(4, "maximal paths", ok, "");
}

std::vector<BoundQuiver> theorem_algebras() {
  std::vector<BoundQuiver> algebras;
  for (const auto* name : testing_support::fixture_names) algebras.push_back(load_fixture(name));
  for (std::uint64_t seed = 1; seed <= kRandomAlgebras; ++seed)
    algebras.push_back(testing_support::random_string_algebra(seed, kMaxVertices));
  return algebras;
}

std::string algebra_label(std::size_t i) {
  return i < 5 ? std::string(testing_support::fixture_names[i]) : "seed " + std::to_string(i - 4);
}

void periodicity_theorem(const std::vector<BoundQuiver>& algebras) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0, violations = 0;
  std::map<GapClass, std::size_t> by_class;
  std::string first_example;
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    const SyzygyGraph g(algebras[i]);
    for_each_generalized_string(algebras[i], {1, kTheoremLetters, true, true},
                                [&](const GeneralizedWalk& w) {
                                  if (w.is_trivial()) return;
                                  ++checked;
                                  const auto d = decide(g, w);
                                  if (d.agrees()) return;
                                  ++violations;
                                  ++by_class[diagnose_gap(g, d)];
                                  if (first_example.empty())
                                    first_example = algebra_label(i) + ": " +
                                                    format_walk(algebras[i].quiver(), w);
                                });
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << checked << " walks, " << violations << " disagreements";
  for (const auto& [cls, n] : by_class) d << ", " << to_string(cls) << "=" << n;
  if (!first_example.empty()) d << ", first " << first_example;
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1f s (budget %.0f s)", seconds, kTheoremBudgetSeconds);
  d << buf;
  report(5, "periodicity theorem", violations == 0 && seconds < kTheoremBudgetSeconds, d.str());
}

void oracle_equivalence() {
  std::size_t checked = 0;
  std::string first_bad;
  for (const auto* name : testing_support::fixture_names) {
    const SyzygyGraph g(load_fixture(name));
    const auto& bq = g.bound_quiver();
    for (const auto& w : enumerate_generalized_strings(bq, {1, kOracleLetters, false, true})) {
      ++checked;
      const auto engine = betti_data(resolve(g, w, kOracleDepth));
      const auto oracle = oracle_resolve(bq, w, kOracleDepth);
      if ((engine != oracle.betti() || !oracle.all_exact()) && first_bad.empty())
        first_bad = std::string(name) + ": " + format_walk(bq.quiver(), w);
    }
  }
  report(6, "oracle equivalence", first_bad.empty(),
         std::to_string(checked) + " walks" + (first_bad.empty() ? "" : ", first mismatch " + first_bad));
}

void structural_invariants(const std::vector<BoundQuiver>& algebras) {
  std::size_t complexes = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    const auto& bq = algebras[i];
    for_each_generalized_string(bq, {1, kTheoremLetters, true, true}, [&](const GeneralizedWalk& w) {
      ++complexes;
      const auto r = verify_complex(bq, build_string_complex(bq, w));
      if (!r.ok && first_bad.empty())
        first_bad = algebra_label(i) + ": " + format_walk(bq.quiver(), w) + ": " + r.failures.front();
    });
  }
  std::mt19937_64 rng(7);
  std::size_t walks = 0, broken = 0;
  for (std::size_t i = 0; walks < kRandomWalks; ++i) {
    const auto& bq = algebras[i % algebras.size()];
    const auto w = testing_support::random_walk(bq, rng);
    if (!w) continue;
    ++walks;
    const auto c = canonicalize(*w);
    if (canonicalize(c) != c || invert(invert(*w)) != *w || canonicalize(invert(*w)) != c) ++broken;
  }
  report(7, "structural invariants", first_bad.empty() && broken == 0,
         std::to_string(complexes) + " complexes, " + std::to_string(walks) + " random walks" +
             (first_bad.empty() ? "" : ", first bad complex " + first_bad) +
             (broken ? ", " + std::to_string(broken) + " walk failures" : ""));
}

void indecomposable_structure() {
  std::vector<std::string> bad;
  auto refuses = [](const BoundQuiver& bq) {
    try {
      enumerate_indecomposables(SyzygyGraph(bq), 2, 0);
    } catch (const DomainError&) {
      return true;
    }
    return false;
  };
  if (!refuses(load_fixture("triangle"))) bad.push_back("triangle not refused");
  if (!refuses(load_fixture("line4"))) bad.push_back("line4 not refused");

  std::vector<BoundQuiver> accepted{load_fixture("umpp7")};
  for (std::uint64_t seed = 1; seed <= kRandomAlgebras; ++seed) {
    auto bq = testing_support::random_string_algebra(seed, kMaxVertices);
    if (has_unique_maximal_path_property(bq).holds) accepted.push_back(std::move(bq));
    else if (!refuses(bq)) bad.push_back("seed " + std::to_string(seed) + " not refused");
  }
  std::size_t entries = 0;
  for (const auto& bq : accepted) {
    const SyzygyGraph g(bq);
    std::map<int, std::set<GeneralizedWalk>> families;
    for (const auto& e : enumerate_indecomposables(g, 4, 0)) {
      ++entries;
      if (!families[e.family].insert(e.walk).second) bad.push_back("duplicate entry");
      if (e.family != 1) {
        if (!e.witness) {
          bad.push_back("missing witness");
          continue;
        }
        try {
          revalidate(g, e.walk, *e.witness);
        } catch (const InternalError& err) {
          bad.push_back(err.what());
        }
      }
    }
    for (const auto& w : families[2])
      if (families[3].count(w)) bad.push_back("families 2 and 3 overlap");
  }
  report(8, "indecomposable catalog structure", bad.empty(),
         std::to_string(accepted.size()) + " algebras, " + std::to_string(entries) + " entries" +
             (bad.empty() ? "" : ", first problem: " + bad.front()));
}

}  // namespace

int main() {
  triangle_example();
  fivevertex_example();
  parallel_complex();
  maximal_paths_facts();
  const auto algebras = theorem_algebras();
  periodicity_theorem(algebras);
  oracle_equivalence();
  structural_invariants(algebras);
  indecomposable_structure();
  return failures == 0 ? 0 : 1;
}
