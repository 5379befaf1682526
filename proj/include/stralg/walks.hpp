#pragma once

// Walks, strings and generalized strings over a bound quiver, with the
// mu-profile that fixes homological degrees.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stralg/bound_quiver.hpp"
#include "stralg/error.hpp"

namespace stralg {

enum class Direction { Direct, Inverse };

/// A direct path w or a formal inverse w^-1. The stored path is always the
/// underlying direct path; for Inverse the endpoints are swapped.
struct Letter {
  Path path;
  Direction direction = Direction::Direct;

  bool is_direct() const { return direction == Direction::Direct; }
  VertexId source() const { return is_direct() ? path.source() : path.target(); }
  VertexId target() const { return is_direct() ? path.target() : path.source(); }

  Letter inverted() const {
    return {path, is_direct() ? Direction::Inverse : Direction::Direct};
  }

  bool operator==(const Letter&) const = default;
  std::strong_ordering operator<=>(const Letter& other) const {
    if (auto c = path <=> other.path; c != 0) return c;
    return direction <=> other.direction;
  }
};

/// w_1 . w_2 ... w_n with t(w_i) = s(w_{i+1}), or the trivial walk e_v.
class GeneralizedWalk {
 public:
  GeneralizedWalk() = default;

  static GeneralizedWalk trivial(VertexId v) {
    GeneralizedWalk w;
    w.base_ = v;
    return w;
  }

  explicit GeneralizedWalk(std::vector<Letter> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw PreconditionError("a walk needs at least one letter");
    for (std::size_t i = 0; i + 1 < letters_.size(); ++i)
      if (letters_[i].target() != letters_[i + 1].source())
        throw DomainError("letters " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                          " do not connect");
    base_ = letters_.front().source();
  }

  bool is_trivial() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& letter(std::size_t i) const { return letters_.at(i); }  // 0-based
  VertexId source() const { return base_; }
  VertexId target() const { return is_trivial() ? base_ : letters_.back().target(); }
  bool is_closed() const { return source() == target(); }

  /// Vertex c(j) at position j = 0..n: c(0) = s(w_1), c(j) = t(w_j).
  VertexId position_vertex(std::size_t j) const {
    if (j == 0) return source();
    return letters_.at(j - 1).target();
  }

  bool operator==(const GeneralizedWalk&) const = default;
  std::strong_ordering operator<=>(const GeneralizedWalk& other) const {
    if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
    if (auto c = letters_ <=> other.letters_; c != 0) return c;
    return base_ <=> other.base_;
  }

 private:
  std::vector<Letter> letters_;
  VertexId base_ = 0;
};

inline std::string format_letter(const Quiver& q, const Letter& l) {
  std::string out = l.path.length() == 1 ? q.arrow(l.path.first_arrow()).name
                                         : "(" + format_path(q, l.path) + ")";
  if (!l.is_direct()) out += "~";
  return out;
}

/// Prints in the walk grammar, e.g. "a~ . c . d . (c b)~".
inline std::string format_walk(const Quiver& q, const GeneralizedWalk& w) {
  if (w.is_trivial()) return "e_" + q.vertex_name(w.source());
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i > 0) out += " . ";
    out += format_letter(q, w.letter(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

enum class WalkMode { StringWalk, Generalized };

namespace detail {

struct WalkToken {
  enum Kind { Ident, LParen, RParen, Tilde, Dot, End } kind;
  std::string text;
  std::size_t column;
};

inline std::vector<WalkToken> tokenize_walk(std::string_view text) {
  std::vector<WalkToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    switch (c) {
      case '(': out.push_back({WalkToken::LParen, "(", col}); ++i; continue;
      case ')': out.push_back({WalkToken::RParen, ")", col}); ++i; continue;
      case '~': out.push_back({WalkToken::Tilde, "~", col}); ++i; continue;
      case '.': out.push_back({WalkToken::Dot, ".", col}); ++i; continue;
      default: break;
    }
    std::size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                               text[j] == '_' || text[j] == '\''))
      ++j;
    if (j == i) throw ParseError(std::string("unexpected character '") + c + "'", 1, col);
    out.push_back({WalkToken::Ident, std::string(text.substr(i, j - i)), col});
    i = j;
  }
  out.push_back({WalkToken::End, "", text.size() + 1});
  return out;
}

}  // namespace detail

/// Parses the walk grammar: letters separated by '.', a letter is an arrow
/// or "(arrow arrow ...)", optionally followed by '~' for the inverse;
/// "e_<vertex>" is the trivial walk. In StringWalk mode every letter must be
/// a single arrow and letters may also be separated by whitespace alone.
inline GeneralizedWalk parse_walk(std::string_view text, const BoundQuiver& bq,
                                  WalkMode mode = WalkMode::Generalized) {
  using detail::WalkToken;
  const auto& q = bq.quiver();
  const auto tokens = detail::tokenize_walk(text);
  std::size_t pos = 0;
  auto peek = [&]() -> const WalkToken& { return tokens[pos]; };

  if (tokens.size() == 2 && tokens[0].kind == WalkToken::Ident &&
      tokens[0].text.starts_with("e_")) {
    auto v = q.find_vertex(tokens[0].text.substr(2));
    if (!v) throw ParseError("unknown vertex " + tokens[0].text.substr(2), 1, tokens[0].column);
    return GeneralizedWalk::trivial(*v);
  }
  if (peek().kind == WalkToken::End) throw ParseError("empty walk", 1, 1);

  auto arrow_of = [&](const WalkToken& tok) {
    if (tok.text.starts_with("e_"))
      throw ParseError("trivial walk " + tok.text + " cannot be part of a longer walk", 1,
                       tok.column);
    auto a = q.find_arrow(tok.text);
    if (!a) throw ParseError("unknown arrow " + tok.text, 1, tok.column);
    return *a;
  };

  struct RawLetter {
    std::vector<ArrowId> arrows;
    Direction direction;
    std::size_t column;
  };
  std::vector<RawLetter> raw;
  for (;;) {
    const auto& start = peek();
    RawLetter letter{{}, Direction::Direct, start.column};
    if (start.kind == WalkToken::Ident) {
      letter.arrows.push_back(arrow_of(start));
      ++pos;
    } else if (start.kind == WalkToken::LParen) {
      ++pos;
      while (peek().kind == WalkToken::Ident) {
        letter.arrows.push_back(arrow_of(peek()));
        ++pos;
      }
      if (letter.arrows.empty()) throw ParseError("empty parentheses", 1, start.column);
      if (peek().kind != WalkToken::RParen) throw ParseError("expected ')'", 1, peek().column);
      ++pos;
      if (mode == WalkMode::StringWalk && letter.arrows.size() != 1)
        throw ParseError("string-walk letters must be single arrows", 1, start.column);
    } else {
      throw ParseError("expected a letter", 1, start.column);
    }
    if (peek().kind == WalkToken::Tilde) {
      letter.direction = Direction::Inverse;
      ++pos;
    }
    raw.push_back(std::move(letter));

    const auto& sep = peek();
    if (sep.kind == WalkToken::End) break;
    if (sep.kind == WalkToken::Dot) {
      ++pos;
      continue;
    }
    if (mode == WalkMode::StringWalk &&
        (sep.kind == WalkToken::Ident || sep.kind == WalkToken::LParen))
      continue;
    if (sep.kind == WalkToken::Ident || sep.kind == WalkToken::LParen)
      throw ParseError("expected '.' between letters (write (a b) for a multi-arrow letter)", 1,
                       sep.column);
    throw ParseError("unexpected '" + sep.text + "'", 1, sep.column);
  }

  std::vector<Letter> letters;
  for (auto& r : raw) {
    Path p;
    try {
      p = Path::from_arrows(q, r.arrows);
    } catch (const NotComposableError& e) {
      throw ParseError(e.what(), 1, r.column);
    }
    if (!bq.is_nonzero(p))
      throw ParseError("letter " + format_path(q, p) + " contains a relation", 1, r.column);
    letters.push_back({std::move(p), r.direction});
  }
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i].target() != letters[i + 1].source())
      throw ParseError("letters " + format_letter(q, letters[i]) + " and " +
                           format_letter(q, letters[i + 1]) + " do not connect",
                       1, raw[i + 1].column);
  return GeneralizedWalk(std::move(letters));
}

// ---------------------------------------------------------------------------
// Basic operations

inline GeneralizedWalk invert(const GeneralizedWalk& w) {
  if (w.is_trivial()) return w;
  std::vector<Letter> out;
  out.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverted());
  return GeneralizedWalk(std::move(out));
}

/// w[j] = w_{j+1} ... w_n w_1 ... w_j for a closed walk, 1 <= j <= n-1.
inline GeneralizedWalk rotate(const GeneralizedWalk& w, std::size_t j) {
  if (w.is_trivial() || !w.is_closed()) throw PreconditionError("rotation needs a closed walk");
  if (j < 1 || j >= w.length())
    throw PreconditionError("rotation index " + std::to_string(j) + " out of range 1.." +
                            std::to_string(w.length() - 1));
  std::vector<Letter> out(w.letters().begin() + static_cast<std::ptrdiff_t>(j),
                          w.letters().end());
  out.insert(out.end(), w.letters().begin(),
             w.letters().begin() + static_cast<std::ptrdiff_t>(j));
  return GeneralizedWalk(std::move(out));
}

/// A walk of single-arrow letters is a string when it never backtracks and no
/// direct run (of the walk or its inverse) contains a relation.
inline bool is_string(const BoundQuiver& bq, const GeneralizedWalk& w) {
  if (w.is_trivial()) return true;
  for (const auto& l : w.letters())
    if (l.path.length() != 1) throw PreconditionError("is_string needs single-arrow letters");
  const auto& q = bq.quiver();
  for (std::size_t i = 0; i + 1 < w.length(); ++i)
    if (w.letter(i + 1) == w.letter(i).inverted()) return false;

  std::size_t i = 0;
  while (i < w.length()) {
    std::size_t j = i;
    while (j < w.length() && w.letter(j).direction == w.letter(i).direction) ++j;
    std::vector<ArrowId> run;
    for (std::size_t k = i; k < j; ++k) run.push_back(w.letter(k).path.first_arrow());
    if (!w.letter(i).is_direct()) std::reverse(run.begin(), run.end());
    if (!bq.is_nonzero(Path::from_arrows(q, std::move(run)))) return false;
    i = j;
  }
  return true;
}

/// Arrow-by-arrow expansion of letters as a walk of single-arrow letters.
inline std::vector<Letter> expand_letter(const Quiver& q, const Letter& l) {
  std::vector<Letter> out;
  for (auto a : l.path.arrows()) out.push_back({Path::arrow(q, a), l.direction});
  if (!l.is_direct()) std::reverse(out.begin(), out.end());
  return out;
}

struct JunctionVerdict {
  std::size_t index;  // junction between letters index and index+1 (1-based)
  bool ok;
  std::string rule;  // "direct-direct", "inverse-inverse", "mixed"
};

struct GeneralizedStringCheck {
  bool ok = true;
  std::vector<JunctionVerdict> junctions;
  std::string failure;
};

namespace detail {

/// junction_ok for letters already known to be nonzero paths.
inline bool junction_ok_nonzero(const BoundQuiver& bq, const Letter& left, const Letter& right) {
  if (left.is_direct() && right.is_direct()) return !bq.junction_nonzero(left.path, right.path);
  if (!left.is_direct() && !right.is_direct()) return !bq.junction_nonzero(right.path, left.path);
  // Each side is a nonzero path, so the only way to fail is backtracking
  // over a shared arrow at the junction.
  if (left.is_direct()) return left.path.last_arrow() != right.path.last_arrow();
  return left.path.first_arrow() != right.path.first_arrow();
}

}  // namespace detail

/// Checks one junction rule for consecutive letters.
inline bool junction_ok(const BoundQuiver& bq, const Letter& left, const Letter& right) {
  for (const auto* l : {&left, &right})
    if (l->path.is_trivial() || !bq.is_nonzero(l->path)) return false;
  return detail::junction_ok_nonzero(bq, left, right);
}

inline GeneralizedStringCheck is_generalized_string(const BoundQuiver& bq,
                                                    const GeneralizedWalk& w) {
  GeneralizedStringCheck check;
  if (w.is_trivial()) return check;
  const auto& q = bq.quiver();
  for (std::size_t i = 0; i < w.length(); ++i) {
    const auto& p = w.letter(i).path;
    if (p.is_trivial() || !bq.is_nonzero(p)) {
      check.ok = false;
      check.failure = "letter " + std::to_string(i + 1) + " is not a nonzero path of length >= 1";
      return check;
    }
  }
  for (std::size_t i = 0; i + 1 < w.length(); ++i) {
    const auto& l = w.letter(i);
    const auto& r = w.letter(i + 1);
    std::string rule = l.is_direct() && r.is_direct()     ? "direct-direct"
                       : !l.is_direct() && !r.is_direct() ? "inverse-inverse"
                                                          : "mixed";
    const bool ok = detail::junction_ok_nonzero(bq, l, r);
    check.junctions.push_back({i + 1, ok, rule});
    if (!ok && check.ok) {
      check.ok = false;
      check.failure = rule + " junction " + format_letter(q, l) + " . " + format_letter(q, r) +
                      " violates the generalized-string rule";
    }
  }
  return check;
}

// ---------------------------------------------------------------------------
// mu-profile

struct MuProfile {
  std::vector<int> values;   // mu(0..n)
  int minimum = 0;           // over 0..n
  int minimum_from_one = 0;  // over 1..n (equals minimum for trivial walks)

  int end() const { return values.back(); }

  /// Non-empty when the 0..n and 1..n minima differ on this walk.
  std::optional<std::string> convention_note() const {
    if (minimum == minimum_from_one) return std::nullopt;
    return "minimum over 0..n is " + std::to_string(minimum) + " but over 1..n is " +
           std::to_string(minimum_from_one) + "; degrees use 0..n";
  }
};

inline MuProfile mu_profile(const GeneralizedWalk& w) {
  MuProfile m;
  m.values.reserve(w.length() + 1);
  m.values.push_back(0);
  for (const auto& l : w.letters()) m.values.push_back(m.values.back() + (l.is_direct() ? 1 : -1));
  m.minimum = *std::min_element(m.values.begin(), m.values.end());
  m.minimum_from_one =
      w.is_trivial() ? 0 : *std::min_element(m.values.begin() + 1, m.values.end());
  return m;
}

/// Representative of the class {w, w^-1}: the orientation with
/// mu(0) <= mu(n), ties broken toward the smaller letter sequence.
inline GeneralizedWalk canonicalize(const GeneralizedWalk& w) {
  if (w.is_trivial()) return w;
  int end = 0;
  for (const auto& l : w.letters()) end += l.is_direct() ? 1 : -1;
  if (end > 0) return w;
  auto inv = invert(w);
  if (end < 0) return inv;
  return std::min(w, inv);
}

inline bool is_canonical(const GeneralizedWalk& w) { return canonicalize(w) == w; }

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerationOptions {
  std::size_t min_letters = 1;
  std::size_t max_letters = 1;
  bool canonical_only = true;
  bool include_trivial = true;
};

/// Visits generalized strings breadth-first by letter count; within a count
/// in increasing letter order. Trivial walks come first when requested.
inline void for_each_generalized_string(const BoundQuiver& bq, const EnumerationOptions& opts,
                                        const std::function<void(const GeneralizedWalk&)>& visit) {
  const auto& q = bq.quiver();
  if (opts.include_trivial)
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
      visit(GeneralizedWalk::trivial(static_cast<VertexId>(v)));

  std::vector<Letter> alphabet;
  for (const auto& p : bq.paths()) {
    if (p.is_trivial()) continue;
    alphabet.push_back({p, Direction::Direct});
    alphabet.push_back({p, Direction::Inverse});
  }
  std::sort(alphabet.begin(), alphabet.end());
  std::vector<std::vector<std::size_t>> follow(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    for (std::size_t j = 0; j < alphabet.size(); ++j)
      if (alphabet[i].target() == alphabet[j].source() &&
          junction_ok(bq, alphabet[i], alphabet[j]))
        follow[i].push_back(j);

  std::vector<std::size_t> stack;
  std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
    if (remaining == 0) {
      std::vector<Letter> letters;
      letters.reserve(stack.size());
      int end = 0;
      for (auto id : stack) {
        letters.push_back(alphabet[id]);
        end += alphabet[id].is_direct() ? 1 : -1;
      }
      if (opts.canonical_only && end < 0) return;
      GeneralizedWalk w(std::move(letters));
      if (opts.canonical_only && end == 0 && !is_canonical(w)) return;
      visit(w);
      return;
    }
    for (auto next : follow[stack.back()]) {
      stack.push_back(next);
      extend(remaining - 1);
      stack.pop_back();
    }
  };
  for (std::size_t n = std::max<std::size_t>(opts.min_letters, 1); n <= opts.max_letters; ++n)
    for (std::size_t first = 0; first < alphabet.size(); ++first) {
      stack.assign(1, first);
      extend(n - 1);
    }
}

inline std::vector<GeneralizedWalk> enumerate_generalized_strings(const BoundQuiver& bq,
                                                                  const EnumerationOptions& opts) {
  std::vector<GeneralizedWalk> out;
  for_each_generalized_string(bq, opts, [&](const GeneralizedWalk& w) { out.push_back(w); });
  return out;
}

}  // namespace stralg
