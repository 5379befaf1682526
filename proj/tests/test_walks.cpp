#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stralg/walks.hpp"
#include "support/fixtures.hpp"
#include "support/random_algebra.hpp"
#include "support/random_walk.hpp"

using namespace stralg;
using testing_support::load_fixture;

namespace {

std::string fmt(const BoundQuiver& bq, const GeneralizedWalk& w) {
  return format_walk(bq.quiver(), w);
}

}  // namespace

TEST(ParseWalk, Generalized) {
  const auto bq = load_fixture("parallel");
  const auto w = parse_walk("a~ . c . d . (c b)~", bq);
  ASSERT_EQ(w.length(), 4u);
  EXPECT_FALSE(w.letter(0).is_direct());
  EXPECT_TRUE(w.letter(1).is_direct());
  EXPECT_TRUE(w.letter(2).is_direct());
  EXPECT_FALSE(w.letter(3).is_direct());
  EXPECT_EQ(w.letter(3).path, bq.path_from_names("c b"));
  EXPECT_EQ(fmt(bq, w), "a~ . c . d . (c b)~");
}

TEST(ParseWalk, Trivial) {
  const auto bq = load_fixture("triangle");
  const auto w = parse_walk("e_1", bq);
  EXPECT_TRUE(w.is_trivial());
  EXPECT_EQ(bq.quiver().vertex_name(w.source()), "1");
  EXPECT_EQ(fmt(bq, w), "e_1");
}

TEST(ParseWalk, StringMode) {
  const auto bq = load_fixture("crossed");
  const auto w = parse_walk("a b d~ c~", bq, WalkMode::StringWalk);
  EXPECT_EQ(w.length(), 4u);
  for (const auto& l : w.letters()) EXPECT_EQ(l.path.length(), 1u);
  EXPECT_THROW(parse_walk("(a b)", bq, WalkMode::StringWalk), ParseError);
}

TEST(ParseWalk, Errors) {
  const auto bq = load_fixture("triangle");
  EXPECT_THROW(parse_walk("", bq), ParseError);
  EXPECT_THROW(parse_walk("z", bq), ParseError);
  EXPECT_THROW(parse_walk("a . a", bq), ParseError);          // disconnected
  EXPECT_THROW(parse_walk("(a b c)", bq), ParseError);        // hits abc
  EXPECT_THROW(parse_walk("(a c)", bq), ParseError);          // not composable
  EXPECT_THROW(parse_walk("b c", bq), ParseError);            // needs '.' or parentheses
  EXPECT_THROW(parse_walk("a . ", bq), ParseError);
  EXPECT_THROW(parse_walk("(a", bq), ParseError);
  EXPECT_THROW(parse_walk("e_9", bq), ParseError);
  try {
    parse_walk("a . b . q", bq);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 9u);
  }
}

TEST(Invert, Examples) {
  const auto par = load_fixture("parallel");
  const auto w = parse_walk("a~ . c . d . (c b)~", par);
  EXPECT_EQ(fmt(par, invert(w)), "(c b) . d~ . c~ . a");
  EXPECT_EQ(invert(invert(w)), w);
  const auto tri = load_fixture("triangle");
  EXPECT_EQ(invert(parse_walk("e_1", tri)), parse_walk("e_1", tri));
  EXPECT_EQ(fmt(tri, invert(parse_walk("b~ . a~", tri))), "a . b");
}

TEST(Rotate, ClosedWalks) {
  const auto tri = load_fixture("triangle");
  const auto w = parse_walk("a . b . c", tri);
  EXPECT_EQ(fmt(tri, rotate(w, 1)), "b . c . a");
  EXPECT_EQ(rotate(rotate(w, 1), 2), w);
  EXPECT_TRUE(rotate(w, 2).is_closed());
  EXPECT_THROW(rotate(w, 0), PreconditionError);
  EXPECT_THROW(rotate(w, 3), PreconditionError);
  EXPECT_THROW(rotate(parse_walk("a . b", tri), 1), PreconditionError);
}

TEST(IsString, Examples) {
  const auto bq = load_fixture("crossed");
  EXPECT_TRUE(is_string(bq, parse_walk("a b d~ c~", bq, WalkMode::StringWalk)));
  EXPECT_FALSE(is_string(bq, parse_walk("a b b~ c~", bq, WalkMode::StringWalk)));
  EXPECT_FALSE(is_string(bq, parse_walk("a b d~ c~ a d", bq, WalkMode::StringWalk)));
  EXPECT_THROW(is_string(bq, parse_walk("(a b)", bq)), PreconditionError);
}

TEST(IsString, InverseRunsCheckedReversed) {
  const auto bq = load_fixture("crossed");
  // d~ a~ reads the direct path a d backwards, and ad is a relation.
  EXPECT_FALSE(is_string(bq, parse_walk("d~ a~", bq, WalkMode::StringWalk)));
  EXPECT_TRUE(is_string(bq, parse_walk("b~ a~", bq, WalkMode::StringWalk)));
}

TEST(GeneralizedString, Examples) {
  const auto par = load_fixture("parallel");
  const auto r = is_generalized_string(par, parse_walk("a~ . c . d . (c b)~", par));
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.junctions.size(), 3u);
  EXPECT_EQ(r.junctions[0].rule, "mixed");
  EXPECT_EQ(r.junctions[1].rule, "direct-direct");
  EXPECT_EQ(r.junctions[2].rule, "mixed");

  const auto tri = load_fixture("triangle");
  EXPECT_TRUE(is_generalized_string(tri, parse_walk("(b c)", tri)).ok);
  const auto bc = is_generalized_string(tri, parse_walk("b . c", tri));
  EXPECT_FALSE(bc.ok);
  EXPECT_FALSE(bc.junctions[0].ok);
  EXPECT_TRUE(is_generalized_string(tri, parse_walk("e_2", tri)).ok);
}

TEST(GeneralizedString, InvariantUnderInversion) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    EnumerationOptions opts{1, 3, false, false};
    for_each_generalized_string(bq, opts, [&](const GeneralizedWalk& w) {
      EXPECT_TRUE(is_generalized_string(bq, invert(w)).ok);
    });
  }
}

TEST(Mu, Profiles) {
  const auto par = load_fixture("parallel");
  const auto m = mu_profile(parse_walk("a~ . c . d . (c b)~", par));
  EXPECT_EQ(m.values, (std::vector<int>{0, -1, 0, 1, 0}));
  EXPECT_EQ(m.minimum, -1);
  const auto tri = load_fixture("triangle");
  const auto bc = mu_profile(parse_walk("(b c)", tri));
  EXPECT_EQ(bc.values, (std::vector<int>{0, 1}));
  EXPECT_EQ(bc.minimum, 0);
  EXPECT_EQ(bc.minimum_from_one, 1);
  EXPECT_TRUE(bc.convention_note().has_value());
  const auto five = load_fixture("fivevertex");
  const auto abc = mu_profile(parse_walk("a . b~ . c", five));
  EXPECT_EQ(abc.values, (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(abc.minimum, 0);
  EXPECT_FALSE(abc.convention_note().has_value());
}

TEST(Mu, InverseProfileIsReversedAndShifted) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    for (const auto& w : enumerate_generalized_strings(bq, {1, 4, false, false})) {
      const auto m = mu_profile(w).values;
      const auto inv = mu_profile(invert(w)).values;
      const std::size_t n = w.length();
      for (std::size_t i = 0; i <= n; ++i) ASSERT_EQ(inv[i], m[n - i] - m[n]);
    }
  }
}

TEST(Canonicalize, Examples) {
  const auto tri = load_fixture("triangle");
  EXPECT_EQ(fmt(tri, canonicalize(parse_walk("b~ . a~", tri))), "a . b");
  EXPECT_EQ(fmt(tri, canonicalize(parse_walk("a . b", tri))), "a . b");
  const auto par = load_fixture("parallel");
  const auto w = parse_walk("a~ . c . d . (c b)~", par);
  EXPECT_EQ(canonicalize(w), w);
  EXPECT_EQ(canonicalize(invert(w)), w);
}

TEST(Enumerate, TriangleMatchesJunctionFilter) {
  const auto bq = load_fixture("triangle");
  const auto& q = bq.quiver();
  // Brute force: all 1- and 2-letter walks over Pa_{>0} and both directions,
  // filtered by the junction rules written out directly.
  std::vector<Letter> letters;
  for (const auto& p : enumerate_paths(bq, 1)) {
    letters.push_back({p, Direction::Direct});
    letters.push_back({p, Direction::Inverse});
  }
  std::set<GeneralizedWalk> expected;
  for (const auto& l : letters) expected.insert(GeneralizedWalk({l}));
  for (const auto& l : letters)
    for (const auto& r : letters) {
      if (l.target() != r.source()) continue;
      bool ok;
      if (l.is_direct() && r.is_direct()) {
        ok = !bq.is_nonzero(l.path.then(r.path));
      } else if (!l.is_direct() && !r.is_direct()) {
        ok = !bq.is_nonzero(r.path.then(l.path));
      } else {
        std::vector<Letter> arrows;
        for (const auto& x : {l, r}) {
          std::vector<Letter> part;
          for (auto a : x.path.arrows()) part.push_back({Path::arrow(q, a), x.direction});
          if (!x.is_direct()) std::reverse(part.begin(), part.end());
          arrows.insert(arrows.end(), part.begin(), part.end());
        }
        ok = is_string(bq, GeneralizedWalk(arrows));
      }
      if (ok) expected.insert(GeneralizedWalk({l, r}));
    }
  const auto got = enumerate_generalized_strings(bq, {1, 2, false, false});
  EXPECT_EQ(std::set<GeneralizedWalk>(got.begin(), got.end()), expected);
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
}

TEST(Enumerate, CanonicalOnlyPicksOneRepresentative) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    const auto all = enumerate_generalized_strings(bq, {1, 4, false, false});
    std::set<GeneralizedWalk> classes;
    for (const auto& w : all) classes.insert(canonicalize(w));
    const auto canon = enumerate_generalized_strings(bq, {1, 4, true, false});
    EXPECT_EQ(std::set<GeneralizedWalk>(canon.begin(), canon.end()), classes);
    EXPECT_EQ(canon.size(), classes.size());
  }
}

TEST(Enumerate, PrintParseRoundTrip) {
  for (const auto* name : testing_support::fixture_names) {
    const auto bq = load_fixture(name);
    for (const auto& w : enumerate_generalized_strings(bq, {1, 4, false, true}))
      ASSERT_EQ(parse_walk(fmt(bq, w), bq), w) << name << ": " << fmt(bq, w);
  }
}

TEST(Canonicalize, RandomWalksIdempotentAndInvolutive) {
  std::mt19937_64 rng(2024);
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; checked < 2000; ++seed) {
    const auto bq = testing_support::random_string_algebra(seed);
    for (int k = 0; k < 100; ++k) {
      const auto w = testing_support::random_walk(bq, rng);
      if (!w) break;
      ASSERT_EQ(invert(invert(*w)), *w);
      ASSERT_EQ(canonicalize(canonicalize(*w)), canonicalize(*w));
      ASSERT_EQ(canonicalize(invert(*w)), canonicalize(*w));
      ++checked;
    }
  }
}
