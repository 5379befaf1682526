#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "stralg/bound_quiver.hpp"
#include "support/fixtures.hpp"
#include "support/random_algebra.hpp"

using namespace stralg;
using testing_support::load_fixture;

namespace {

std::vector<std::string> names(const BoundQuiver& bq, const std::vector<Path>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(format_path(bq.quiver(), p, ""));
  return out;
}

// Independent enumeration: every arrow word up to the admissibility bound,
// kept when composable and free of relation substrings.
std::set<std::vector<ArrowId>> brute_force_paths(const BoundQuiver& bq) {
  const auto& q = bq.quiver();
  const std::size_t bound = q.arrow_count() * std::max<std::size_t>(1, bq.max_relation_length());
  std::set<std::vector<ArrowId>> out;
  std::vector<std::vector<ArrowId>> level;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) level.push_back({static_cast<ArrowId>(a)});
  auto relation_free = [&](const std::vector<ArrowId>& w) {
    for (const auto& r : bq.relations()) {
      std::vector<ArrowId> rel(r.arrows().begin(), r.arrows().end());
      if (std::search(w.begin(), w.end(), rel.begin(), rel.end()) != w.end()) return false;
    }
    return true;
  };
  for (std::size_t len = 1; len <= bound && !level.empty(); ++len) {
    std::vector<std::vector<ArrowId>> next;
    for (const auto& w : level) {
      if (!relation_free(w)) continue;
      out.insert(w);
      for (std::size_t b = 0; b < q.arrow_count(); ++b) {
        if (q.arrow(w.back()).target != q.arrow(static_cast<ArrowId>(b)).source) continue;
        auto longer = w;
        longer.push_back(static_cast<ArrowId>(b));
        next.push_back(std::move(longer));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Parse, TriangleCounts) {
  const auto bq = load_fixture("triangle");
  EXPECT_EQ(bq.quiver().vertex_count(), 3u);
  EXPECT_EQ(bq.quiver().arrow_count(), 3u);
  EXPECT_EQ(bq.relations().size(), 2u);
}

TEST(Parse, SingleVertex) {
  const auto bq = parse_bound_quiver("vertices 1\n");
  EXPECT_EQ(bq.quiver().vertex_count(), 1u);
  EXPECT_EQ(bq.quiver().arrow_count(), 0u);
  EXPECT_TRUE(enumerate_paths(bq, 1).empty());
}

TEST(Parse, UnknownArrowInRelation) {
  const std::string text =
      "vertices 1 2 3 4 5\narrow a 1 2\narrow b 3 2\narrow c 3 4\narrow x 5 5\nrel a d\n";
  try {
    parse_bound_quiver(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.message(), "unknown arrow d");
    EXPECT_EQ(e.line(), 6u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_bound_quiver("arrow a 1 2\n"), ParseError);
  EXPECT_THROW(parse_bound_quiver("vertices 1 2\nvertices 3\n"), ParseError);
  EXPECT_THROW(parse_bound_quiver("vertices 1 2\narrow a 1 3\n"), ParseError);
  EXPECT_THROW(parse_bound_quiver("vertices 1 2\narrow a 1 2\narrow a 2 1\n"), ParseError);
  EXPECT_THROW(parse_bound_quiver("vertices 1 2\narrow a 1 2\nrel a\n"), ParseError);
  EXPECT_THROW(parse_bound_quiver("vertices 1 2\narrow a 1 2\nrel a a\n"), ParseError);
  EXPECT_THROW(parse_bound_quiver("vertices 1\nfrobnicate\n"), ParseError);
}

TEST(Parse, InadmissibleIdealNamesCycle) {
  try {
    parse_bound_quiver("vertices 1 2\narrow a 1 2\narrow b 2 1\n");
    FAIL() << "expected rejection";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("relation-free cycle"), std::string::npos);
  }
  // ab and ba killed: admissible.
  EXPECT_NO_THROW(parse_bound_quiver("vertices 1 2\narrow a 1 2\narrow b 2 1\nrel a b\nrel b a\n"));
  // only aba killed: babab... still contains aba, so admissible.
  EXPECT_NO_THROW(parse_bound_quiver("vertices 1 2\narrow a 1 2\narrow b 2 1\nrel a b a\n"));
}

TEST(Parse, RedundantRelationsNormalized) {
  const auto bq = parse_bound_quiver(
      "vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrel a b\nrel a b c\nrel a b\n");
  ASSERT_EQ(bq.relations().size(), 1u);
  EXPECT_EQ(format_path(bq.quiver(), bq.relations()[0]), "a b");
}

TEST(Parse, RoundTripFixtures) {
  for (const auto* name : testing_support::fixture_names) {
    const auto bq = load_fixture(name);
    EXPECT_EQ(parse_bound_quiver(print_bound_quiver(bq)), bq) << name;
  }
}

TEST(Parse, RoundTripRandom) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    EXPECT_EQ(parse_bound_quiver(print_bound_quiver(bq)), bq) << seed;
  }
}

TEST(Validate, Fixtures) {
  for (const auto* name : testing_support::fixture_names)
    EXPECT_TRUE(validate_string_algebra(load_fixture(name)).is_string_algebra) << name;
}

TEST(Validate, ParallelWithOneRelation) {
  const auto bq = parse_bound_quiver(
      "vertices 1 2 3\narrow a 1 2\narrow c 1 2\narrow b 2 3\narrow d 2 3\nrel a b\n");
  const auto r = validate_string_algebra(bq);
  EXPECT_FALSE(r.is_string_algebra);
  ASSERT_EQ(r.violations.size(), 2u);
  EXPECT_EQ(r.violations[0].rule, "2");
  EXPECT_NE(r.violations[0].witness.find("arrow c"), std::string::npos);
  EXPECT_NE(r.violations[0].witness.find("cb"), std::string::npos);
  EXPECT_NE(r.violations[0].witness.find("cd"), std::string::npos);
  EXPECT_EQ(r.violations[1].rule, "3");
  EXPECT_NE(r.violations[1].witness.find("arrow d"), std::string::npos);
}

TEST(Validate, ReportsAllViolations) {
  const auto bq = parse_bound_quiver(
      "vertices 1 2 3 4 5\narrow a 1 2\narrow b 1 3\narrow c 1 4\narrow d 2 5\narrow e 3 5\n"
      "arrow f 4 5\n");
  const auto r = validate_string_algebra(bq);
  EXPECT_FALSE(r.is_string_algebra);
  const auto rule1 = std::count_if(r.violations.begin(), r.violations.end(),
                                   [](const Violation& v) { return v.rule == "1"; });
  EXPECT_EQ(rule1, 2);
}

TEST(Paths, TriangleMatchesBruteForce) {
  const auto bq = load_fixture("triangle");
  EXPECT_EQ(names(bq, enumerate_paths(bq, 1)),
            (std::vector<std::string>{"a", "b", "c", "ab", "bc"}));
  const auto all = enumerate_paths(bq, 0);
  EXPECT_EQ(all.size(), 8u);
  EXPECT_TRUE(all[0].is_trivial());
}

TEST(Paths, RandomMatchBruteForce) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    std::set<std::vector<ArrowId>> ours;
    for (const auto& p : enumerate_paths(bq, 1))
      ours.insert(std::vector<ArrowId>(p.arrows().begin(), p.arrows().end()));
    EXPECT_EQ(ours, brute_force_paths(bq)) << "seed " << seed;
  }
}

TEST(Paths, OrderIsLengthThenLexicographic) {
  const auto bq = load_fixture("umpp7");
  const auto ps = enumerate_paths(bq, 0);
  EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
  for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_LE(ps[i - 1].length(), ps[i].length());
}

TEST(Compose, Triangle) {
  const auto bq = load_fixture("triangle");
  const auto a = bq.path_from_names("a");
  EXPECT_FALSE(compose(bq, a, bq.path_from_names("b c")).has_value());
  EXPECT_EQ(compose(bq, bq.path_from_names("e_1"), a), a);
  EXPECT_EQ(compose(bq, bq.path_from_names("b"), bq.path_from_names("c")),
            bq.path_from_names("b c"));
  EXPECT_THROW(compose(bq, a, a), NotComposableError);
}

TEST(Compose, AssociativeWithZeroAbsorbing) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    const auto ps = enumerate_paths(bq, 0);
    for (const auto& x : ps)
      for (const auto& y : ps) {
        if (x.target() != y.source()) continue;
        for (const auto& z : ps) {
          if (y.target() != z.source()) continue;
          auto xy = compose(bq, x, y);
          auto yz = compose(bq, y, z);
          auto left = xy ? compose(bq, *xy, z) : std::nullopt;
          auto right = yz ? compose(bq, x, *yz) : std::nullopt;
          EXPECT_EQ(left, right);
        }
      }
  }
}

TEST(Maximal, Line4) {
  const auto bq = load_fixture("line4");
  EXPECT_EQ(names(bq, maximal_paths(bq)), (std::vector<std::string>{"ab", "bc"}));
  const auto r = has_unique_maximal_path_property(bq);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(bq.quiver().arrow(*r.witness).name, "b");
}

TEST(Maximal, SevenArrows) {
  const auto bq = load_fixture("umpp7");
  const auto m = maximal_paths(bq);
  std::set<std::string> got;
  for (const auto& p : m) got.insert(format_path(bq.quiver(), p));
  EXPECT_EQ(got, (std::set<std::string>{"b c a b", "d", "b' c' a' b'"}));
  EXPECT_TRUE(has_unique_maximal_path_property(bq).holds);
}

TEST(Maximal, Triangle) {
  const auto bq = load_fixture("triangle");
  EXPECT_EQ(names(bq, maximal_paths(bq)), (std::vector<std::string>{"ab", "bc"}));
  const auto r = has_unique_maximal_path_property(bq);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(bq.quiver().arrow(*r.witness).name, "b");
}

TEST(Maximal, EveryPathLiesInAMaximalPath) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    const auto m = maximal_paths(bq);
    for (const auto& p : enumerate_paths(bq, 1)) {
      const bool inside = std::any_of(m.begin(), m.end(),
                                      [&](const Path& x) { return x.contains(p.arrows()); });
      EXPECT_TRUE(inside) << "seed " << seed << " path " << format_path(bq.quiver(), p);
    }
  }
}

TEST(LeftCompletion, Examples) {
  const auto tri = load_fixture("triangle");
  EXPECT_EQ(left_completion(tri, tri.path_from_names("b")), tri.path_from_names("a"));
  EXPECT_EQ(left_completion(tri, tri.path_from_names("a")), tri.path_from_names("e_1"));
  const auto five = load_fixture("fivevertex");
  EXPECT_EQ(left_completion(five, five.path_from_names("d")), five.path_from_names("e_5"));
  EXPECT_THROW(left_completion(tri, tri.path_from_names("e_1")), PreconditionError);
}

TEST(LeftCompletion, EveryPathIsASuffixOfTheCompletedArrow) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    const auto& q = bq.quiver();
    for (const auto& p : enumerate_paths(bq, 1)) {
      const auto a = Path::arrow(q, p.last_arrow());
      const auto full = left_completion(bq, a).then(a);
      EXPECT_TRUE(full.has_suffix(p)) << "seed " << seed << " path " << format_path(q, p);
    }
  }
}

TEST(RightCompletion, Triangle) {
  const auto bq = load_fixture("triangle");
  EXPECT_EQ(right_completion(bq, bq.path_from_names("a")), bq.path_from_names("b"));
  EXPECT_EQ(right_completion(bq, bq.path_from_names("c")), bq.path_from_names("e_1"));
}
