#pragma once

// Bound quivers kQ/I with monomial I: data model, text format, path
// combinatorics. Paths compose left to right: in "a b" the arrow a is
// traversed first, so t(a) = s(b).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stralg/error.hpp"

namespace stralg {

using VertexId = int;
using ArrowId = int;

struct Arrow {
  std::string name;
  VertexId source;
  VertexId target;
};

struct ArrowSpec {
  std::string name;
  std::string source;
  std::string target;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

/// Numeric ids by value, numeric before non-numeric, otherwise plain string
/// order. Keeps "10" after "9".
inline bool natural_less(const std::string& a, const std::string& b) {
  const bool na = all_digits(a);
  const bool nb = all_digits(b);
  if (na && nb) {
    const auto ta = a.substr(std::min(a.find_first_not_of('0'), a.size()));
    const auto tb = b.substr(std::min(b.find_first_not_of('0'), b.size()));
    if (ta.size() != tb.size()) return ta.size() < tb.size();
    if (ta != tb) return ta < tb;
    return a < b;
  }
  if (na != nb) return na;
  return a < b;
}

inline bool is_vertex_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0;
  });
}

inline bool is_arrow_token(std::string_view s) {
  if (s.empty() || s.starts_with("e_")) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '\'';
  });
}

}  // namespace detail

/// Finite quiver. Vertices are kept in natural order and arrows sorted by
/// name, so arrow indices compare like arrow names.
class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, std::vector<ArrowSpec> arrows) {
    std::sort(vertices.begin(), vertices.end(), detail::natural_less);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (!detail::is_vertex_token(vertices[i]))
        throw DomainError("invalid vertex id '" + vertices[i] + "'");
      if (i > 0 && vertices[i] == vertices[i - 1])
        throw DomainError("duplicate vertex " + vertices[i]);
    }
    vertices_ = std::move(vertices);

    std::sort(arrows.begin(), arrows.end(),
              [](const ArrowSpec& x, const ArrowSpec& y) { return x.name < y.name; });
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const auto& spec = arrows[i];
      if (!detail::is_arrow_token(spec.name))
        throw DomainError("invalid arrow name '" + spec.name + "'");
      if (i > 0 && spec.name == arrows[i - 1].name)
        throw DomainError("duplicate arrow " + spec.name);
      const auto s = find_vertex(spec.source);
      const auto t = find_vertex(spec.target);
      if (!s) throw DomainError("arrow " + spec.name + ": unknown vertex " + spec.source);
      if (!t) throw DomainError("arrow " + spec.name + ": unknown vertex " + spec.target);
      arrows_.push_back({spec.name, *s, *t});
    }
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == name) return static_cast<VertexId>(i);
    return std::nullopt;
  }

  std::optional<ArrowId> find_arrow(std::string_view name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == name) return static_cast<ArrowId>(i);
    return std::nullopt;
  }

  std::vector<ArrowId> arrows_from(VertexId v) const {
    std::vector<ArrowId> out;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].source == v) out.push_back(static_cast<ArrowId>(i));
    return out;
  }

  std::vector<ArrowId> arrows_into(VertexId v) const {
    std::vector<ArrowId> out;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].target == v) out.push_back(static_cast<ArrowId>(i));
    return out;
  }

  bool operator==(const Quiver& other) const {
    if (vertices_ != other.vertices_ || arrows_.size() != other.arrows_.size()) return false;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const auto& x = arrows_[i];
      const auto& y = other.arrows_[i];
      if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// A path of the quiver: trivial (e_v) or a composable arrow sequence.
/// Ordered globally by (length, arrow sequence, source vertex).
class Path {
 public:
  Path() = default;

  static Path trivial(VertexId v) { return Path(v, v, {}); }

  static Path from_arrows(const Quiver& q, std::vector<ArrowId> arrows) {
    if (arrows.empty()) throw PreconditionError("empty arrow sequence; use Path::trivial");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i) {
      if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
        throw NotComposableError("arrows " + q.arrow(arrows[i]).name + " and " +
                                 q.arrow(arrows[i + 1]).name + " do not compose");
    }
    const auto s = q.arrow(arrows.front()).source;
    const auto t = q.arrow(arrows.back()).target;
    return Path(s, t, std::move(arrows));
  }

  static Path arrow(const Quiver& q, ArrowId a) { return from_arrows(q, {a}); }

  VertexId source() const { return source_; }
  VertexId target() const { return target_; }
  std::size_t length() const { return arrows_.size(); }
  bool is_trivial() const { return arrows_.empty(); }
  std::span<const ArrowId> arrows() const { return arrows_; }
  ArrowId first_arrow() const { return arrows_.front(); }
  ArrowId last_arrow() const { return arrows_.back(); }

  /// The last k arrows, as a path. suffix(0) is the trivial path at target.
  Path suffix(const Quiver& q, std::size_t k) const {
    if (k == 0) return trivial(target_);
    return from_arrows(q, std::vector<ArrowId>(arrows_.end() - static_cast<std::ptrdiff_t>(k),
                                               arrows_.end()));
  }

  Path prefix(const Quiver& q, std::size_t k) const {
    if (k == 0) return trivial(source_);
    return from_arrows(q, std::vector<ArrowId>(arrows_.begin(),
                                               arrows_.begin() + static_cast<std::ptrdiff_t>(k)));
  }

  /// Concatenation; caller guarantees target() == other.source().
  Path then(const Path& other) const {
    if (is_trivial()) return other;
    if (other.is_trivial()) return *this;
    std::vector<ArrowId> joined = arrows_;
    joined.insert(joined.end(), other.arrows_.begin(), other.arrows_.end());
    return Path(source_, other.target_, std::move(joined));
  }

  bool has_suffix(const Path& other) const {
    if (other.length() > length()) return false;
    if (other.is_trivial()) return other.target_ == target_;
    return std::equal(other.arrows_.begin(), other.arrows_.end(),
                      arrows_.end() - static_cast<std::ptrdiff_t>(other.length()));
  }

  bool contains(std::span<const ArrowId> needle) const {
    return std::search(arrows_.begin(), arrows_.end(), needle.begin(), needle.end()) !=
           arrows_.end();
  }

  bool operator==(const Path&) const = default;

  std::strong_ordering operator<=>(const Path& other) const {
    if (auto c = length() <=> other.length(); c != 0) return c;
    if (auto c = arrows_ <=> other.arrows_; c != 0) return c;
    return source_ <=> other.source_;
  }

 private:
  Path(VertexId s, VertexId t, std::vector<ArrowId> arrows)
      : source_(s), target_(t), arrows_(std::move(arrows)) {}

  VertexId source_ = 0;
  VertexId target_ = 0;
  std::vector<ArrowId> arrows_;
};

inline std::string format_path(const Quiver& q, const Path& p, std::string_view sep = " ") {
  if (p.is_trivial()) return "e_" + q.vertex_name(p.source());
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i > 0) out += sep;
    out += q.arrow(p.arrows()[i]).name;
  }
  return out;
}

/// A quiver with a set of zero relations; the algebra A = kQ/I.
///
/// Construction normalizes the relation set (duplicates and relations that
/// contain another relation are dropped), rejects non-admissible ideals with
/// a relation-free cycle as witness, and materializes the finite basis Pa.
class BoundQuiver {
 public:
  BoundQuiver(Quiver quiver, std::vector<Path> relations) : quiver_(std::move(quiver)) {
    for (const auto& r : relations) {
      if (r.length() < 2)
        throw DomainError("relation " + format_path(quiver_, r) + " has length < 2");
    }
    std::sort(relations.begin(), relations.end());
    relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
    for (const auto& r : relations) {
      const bool redundant = std::any_of(relations.begin(), relations.end(), [&](const Path& o) {
        return o.length() < r.length() && r.contains(o.arrows());
      });
      if (!redundant) relations_.push_back(r);
    }
    if (auto cycle = relation_free_cycle()) {
      throw DomainError("ideal is not admissible: relation-free cycle " +
                        format_path(quiver_, *cycle));
    }
    build_basis();
  }

  static BoundQuiver from_names(std::vector<std::string> vertices, std::vector<ArrowSpec> arrows,
                                const std::vector<std::vector<std::string>>& relations) {
    Quiver q(std::move(vertices), std::move(arrows));
    std::vector<Path> rels;
    for (const auto& names : relations) {
      std::vector<ArrowId> ids;
      for (const auto& n : names) {
        auto a = q.find_arrow(n);
        if (!a) throw DomainError("unknown arrow " + n);
        ids.push_back(*a);
      }
      rels.push_back(Path::from_arrows(q, std::move(ids)));
    }
    return BoundQuiver(std::move(q), std::move(rels));
  }

  const Quiver& quiver() const { return quiver_; }
  const std::vector<Path>& relations() const { return relations_; }

  /// True when the path avoids every relation (is a basis element of A).
  bool is_nonzero(const Path& p) const {
    return std::none_of(relations_.begin(), relations_.end(),
                        [&](const Path& r) { return p.contains(r.arrows()); });
  }

  /// Whether p q is nonzero, for composable p and q, without building p q.
  bool product_nonzero(const Path& p, const Path& q) const {
    return is_nonzero(p) && is_nonzero(q) && junction_nonzero(p, q);
  }

  /// Whether no relation straddles the junction of composable p and q.
  /// Equals product_nonzero when p and q are already known to be nonzero.
  bool junction_nonzero(const Path& p, const Path& q) const {
    const auto pa = p.arrows();
    const auto qa = q.arrows();
    for (const auto& r : relations_) {
      const auto ra = r.arrows();
      for (std::size_t k = 1; k < ra.size(); ++k) {
        if (k > pa.size() || ra.size() - k > qa.size()) continue;
        if (std::equal(ra.begin(), ra.begin() + static_cast<std::ptrdiff_t>(k),
                       pa.end() - static_cast<std::ptrdiff_t>(k)) &&
            std::equal(ra.begin() + static_cast<std::ptrdiff_t>(k), ra.end(), qa.begin()))
          return false;
      }
    }
    return true;
  }

  /// Left completion of the single arrow a, or nullopt when it is not unique.
  const std::optional<Path>& arrow_left_completion(ArrowId a) const {
    return arrow_completion_.at(a);
  }

  /// All of Pa, in the global path order.
  const std::vector<Path>& paths() const { return basis_; }

  std::optional<std::size_t> path_index(const Path& p) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), p);
    if (it == basis_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - basis_.begin());
  }

  /// Parses an arrow list like "a b c" into a path of this quiver.
  Path path_from_names(std::string_view text) const {
    std::istringstream in{std::string(text)};
    std::vector<ArrowId> ids;
    std::string tok;
    while (in >> tok) {
      if (tok.starts_with("e_")) {
        auto v = quiver_.find_vertex(tok.substr(2));
        if (!v) throw DomainError("unknown vertex " + tok.substr(2));
        return Path::trivial(*v);
      }
      auto a = quiver_.find_arrow(tok);
      if (!a) throw DomainError("unknown arrow " + tok);
      ids.push_back(*a);
    }
    return Path::from_arrows(quiver_, std::move(ids));
  }

  std::size_t max_relation_length() const {
    std::size_t r = 0;
    for (const auto& rel : relations_) r = std::max(r, rel.length());
    return r;
  }

  bool operator==(const BoundQuiver& other) const {
    return quiver_ == other.quiver_ && relations_ == other.relations_;
  }

 private:
  // Windows of length r-1 (r = longest relation, at least 2) form the states
  // of a finite automaton that reads relation-free paths; Pa is infinite
  // iff the reachable state graph has a cycle.
  std::optional<Path> relation_free_cycle() const {
    const std::size_t window = std::max<std::size_t>(max_relation_length(), 2) - 1;
    std::vector<Path> states;
    std::vector<Path> frontier;
    for (std::size_t a = 0; a < quiver_.arrow_count(); ++a)
      frontier.push_back(Path::arrow(quiver_, static_cast<ArrowId>(a)));
    for (std::size_t len = 1; len < window && !frontier.empty(); ++len) {
      std::vector<Path> next;
      for (const auto& p : frontier)
        for (auto a : quiver_.arrows_from(p.target())) {
          auto q = p.then(Path::arrow(quiver_, a));
          if (is_nonzero(q)) next.push_back(std::move(q));
        }
      frontier = std::move(next);
    }
    for (auto& p : frontier)
      if (is_nonzero(p)) states.push_back(std::move(p));
    std::sort(states.begin(), states.end());

    auto state_of = [&](const Path& p) -> std::size_t {
      return static_cast<std::size_t>(std::lower_bound(states.begin(), states.end(), p) -
                                      states.begin());
    };
    std::vector<std::vector<std::pair<std::size_t, ArrowId>>> succ(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (auto a : quiver_.arrows_from(states[i].target())) {
        auto q = states[i].then(Path::arrow(quiver_, a));
        if (!is_nonzero(q)) continue;
        succ[i].emplace_back(state_of(q.suffix(quiver_, window)), a);
      }
    }

    // Iterative three-colour DFS; on a back edge, read the cycle off the stack.
    enum : char { White, Grey, Black };
    std::vector<char> colour(states.size(), White);
    for (std::size_t root = 0; root < states.size(); ++root) {
      if (colour[root] != White) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
      std::vector<ArrowId> via;
      colour[root] = Grey;
      while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next == succ[node].size()) {
          colour[node] = Black;
          stack.pop_back();
          if (!via.empty()) via.pop_back();
          continue;
        }
        const auto [to, arrow] = succ[node][next++];
        if (colour[to] == Grey) {
          std::size_t pos = 0;
          while (stack[pos].first != to) ++pos;
          std::vector<ArrowId> cycle(via.begin() + static_cast<std::ptrdiff_t>(pos), via.end());
          cycle.push_back(arrow);
          return Path::from_arrows(quiver_, std::move(cycle));
        }
        if (colour[to] == White) {
          colour[to] = Grey;
          via.push_back(arrow);
          stack.emplace_back(to, 0);
        }
      }
    }
    return std::nullopt;
  }

  void build_basis() {
    std::vector<Path> level;
    for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
      level.push_back(Path::trivial(static_cast<VertexId>(v)));
    while (!level.empty()) {
      basis_.insert(basis_.end(), level.begin(), level.end());
      std::vector<Path> next;
      for (const auto& p : level)
        for (auto a : quiver_.arrows_from(p.target())) {
          auto q = p.then(Path::arrow(quiver_, a));
          if (is_nonzero(q)) next.push_back(std::move(q));
        }
      level = std::move(next);
    }
    std::sort(basis_.begin(), basis_.end());

    for (std::size_t i = 0; i < quiver_.arrow_count(); ++i) {
      const auto arrow = Path::arrow(quiver_, static_cast<ArrowId>(i));
      std::optional<Path> hat = Path::trivial(arrow.source());
      for (bool grew = true; grew && hat;) {
        grew = false;
        std::optional<Path> next;
        for (auto a : quiver_.arrows_into(hat->source())) {
          auto candidate = Path::arrow(quiver_, a).then(*hat);
          if (!is_nonzero(candidate.then(arrow))) continue;
          if (next) {
            hat.reset();
            break;
          }
          next = std::move(candidate);
        }
        if (hat && next) {
          hat = std::move(next);
          grew = true;
        }
      }
      arrow_completion_.push_back(std::move(hat));
    }
  }

  Quiver quiver_;
  std::vector<Path> relations_;
  std::vector<Path> basis_;
  std::vector<std::optional<Path>> arrow_completion_;
};

// ---------------------------------------------------------------------------
// Text format

/// Reads the line-oriented bound-quiver format:
///   vertices <id> <id> ...
///   arrow <name> <source> <target>
///   rel <arrow> <arrow> [...]
/// '#' starts a comment. Exactly one vertices line; other lines in any order.
inline BoundQuiver parse_bound_quiver(std::string_view text) {
  struct Token {
    std::string text;
    std::size_t column;
  };
  struct Line {
    std::size_t number;
    std::vector<Token> tokens;
  };

  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({std::string(raw.substr(i, j - i)), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }

  const Line* vertices_line = nullptr;
  std::vector<ArrowSpec> arrows;
  std::vector<const Line*> arrow_lines;
  std::vector<const Line*> rel_lines;
  for (const auto& line : lines) {
    const auto& kw = line.tokens.front();
    if (kw.text == "vertices") {
      if (vertices_line)
        throw ParseError("second 'vertices' line", line.number, kw.column);
      if (line.tokens.size() < 2)
        throw ParseError("'vertices' needs at least one id", line.number, kw.column);
      vertices_line = &line;
    } else if (kw.text == "arrow") {
      if (line.tokens.size() != 4)
        throw ParseError("expected 'arrow <name> <source> <target>'", line.number, kw.column);
      arrow_lines.push_back(&line);
    } else if (kw.text == "rel") {
      rel_lines.push_back(&line);
    } else {
      throw ParseError("unknown directive '" + kw.text + "'", line.number, kw.column);
    }
  }
  if (!vertices_line) throw ParseError("missing 'vertices' line", 0, 0);

  std::set<std::string> vertex_set;
  std::vector<std::string> vertex_names;
  for (std::size_t i = 1; i < vertices_line->tokens.size(); ++i) {
    const auto& tok = vertices_line->tokens[i];
    if (!detail::is_vertex_token(tok.text))
      throw ParseError("vertex id must be alphanumeric: '" + tok.text + "'",
                       vertices_line->number, tok.column);
    if (!vertex_set.insert(tok.text).second)
      throw ParseError("duplicate vertex " + tok.text, vertices_line->number, tok.column);
    vertex_names.push_back(tok.text);
  }

  std::set<std::string> arrow_set;
  for (const auto* line : arrow_lines) {
    const auto& name = line->tokens[1];
    if (!detail::is_arrow_token(name.text))
      throw ParseError("invalid arrow name '" + name.text + "'", line->number, name.column);
    if (!arrow_set.insert(name.text).second)
      throw ParseError("duplicate arrow " + name.text, line->number, name.column);
    for (std::size_t k = 2; k < 4; ++k) {
      const auto& v = line->tokens[k];
      if (!vertex_set.count(v.text))
        throw ParseError("unknown vertex " + v.text, line->number, v.column);
    }
    arrows.push_back({name.text, line->tokens[2].text, line->tokens[3].text});
  }

  Quiver quiver(std::move(vertex_names), std::move(arrows));
  std::vector<Path> relations;
  for (const auto* line : rel_lines) {
    if (line->tokens.size() < 3)
      throw ParseError("relation of length < 2", line->number, line->tokens.front().column);
    std::vector<ArrowId> ids;
    for (std::size_t k = 1; k < line->tokens.size(); ++k) {
      const auto& tok = line->tokens[k];
      auto a = quiver.find_arrow(tok.text);
      if (!a) throw ParseError("unknown arrow " + tok.text, line->number, tok.column);
      if (!ids.empty() && quiver.arrow(ids.back()).target != quiver.arrow(*a).source)
        throw ParseError("relation is not a path: " + quiver.arrow(ids.back()).name +
                             " does not compose with " + tok.text,
                         line->number, tok.column);
      ids.push_back(*a);
    }
    relations.push_back(Path::from_arrows(quiver, std::move(ids)));
  }
  try {
    return BoundQuiver(std::move(quiver), std::move(relations));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

/// Canonical text form; parse_bound_quiver(print_bound_quiver(bq)) == bq.
inline std::string print_bound_quiver(const BoundQuiver& bq) {
  const auto& q = bq.quiver();
  std::ostringstream out;
  out << "vertices";
  for (const auto& v : q.vertex_names()) out << ' ' << v;
  out << '\n';
  for (const auto& a : q.arrows())
    out << "arrow " << a.name << ' ' << q.vertex_name(a.source) << ' ' << q.vertex_name(a.target)
        << '\n';
  for (const auto& r : bq.relations()) out << "rel " << format_path(q, r) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string rule;  // "1", "2", "3", "monomial", "admissible"
  std::string witness;
};

struct ValidationReport {
  bool is_string_algebra = true;
  std::vector<Violation> violations;
};

/// Checks the special biserial conditions (1)-(3) plus monomial generation
/// and admissibility. Reports every violation.
inline ValidationReport validate_string_algebra(const BoundQuiver& bq) {
  const auto& q = bq.quiver();
  ValidationReport report;
  auto add = [&](std::string rule, std::string witness) {
    report.violations.push_back({std::move(rule), std::move(witness)});
  };

  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const auto out = q.arrows_from(static_cast<VertexId>(v)).size();
    const auto in = q.arrows_into(static_cast<VertexId>(v)).size();
    if (out > 2)
      add("1", "vertex " + q.vertex_name(static_cast<VertexId>(v)) + " is the start of " +
                   std::to_string(out) + " arrows");
    if (in > 2)
      add("1", "vertex " + q.vertex_name(static_cast<VertexId>(v)) + " is the end of " +
                   std::to_string(in) + " arrows");
  }

  auto nonzero_pair = [&](ArrowId x, ArrowId y) {
    return bq.is_nonzero(Path::from_arrows(q, {x, y}));
  };
  for (std::size_t i = 0; i < q.arrow_count(); ++i) {
    const auto a = static_cast<ArrowId>(i);
    std::vector<std::string> after;
    for (auto b : q.arrows_from(q.arrow(a).target))
      if (nonzero_pair(a, b)) after.push_back(q.arrow(a).name + q.arrow(b).name);
    if (after.size() > 1)
      add("2", "arrow " + q.arrow(a).name + ": " + after[0] + " and " + after[1] +
                   " are both outside I");
    std::vector<std::string> before;
    for (auto c : q.arrows_into(q.arrow(a).source))
      if (nonzero_pair(c, a)) before.push_back(q.arrow(c).name + q.arrow(a).name);
    if (before.size() > 1)
      add("3", "arrow " + q.arrow(a).name + ": " + before[0] + " and " + before[1] +
                   " are both outside I");
  }

  for (const auto& r : bq.relations())
    if (r.length() < 2) add("monomial", "relation " + format_path(q, r) + " has length < 2");

  // "admissible" never fires here: BoundQuiver construction rejects
  // relation-free cycles.

  report.is_string_algebra = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Path combinatorics

/// Pa restricted to length >= min_len, in the global order.
inline std::vector<Path> enumerate_paths(const BoundQuiver& bq, std::size_t min_len) {
  std::vector<Path> out;
  for (const auto& p : bq.paths())
    if (p.length() >= min_len) out.push_back(p);
  return out;
}

/// Product in A of basis paths: the concatenation, or nullopt for Zero.
/// Throws NotComposableError when t(p) != s(q).
inline std::optional<Path> compose(const BoundQuiver& bq, const Path& p, const Path& q) {
  if (p.target() != q.source()) {
    const auto& quiver = bq.quiver();
    throw NotComposableError("cannot compose " + format_path(quiver, p) + " with " +
                             format_path(quiver, q) + ": t(p) = " +
                             quiver.vertex_name(p.target()) + ", s(q) = " +
                             quiver.vertex_name(q.source()));
  }
  auto r = p.then(q);
  if (!bq.is_nonzero(r)) return std::nullopt;
  return r;
}

inline bool extends_left(const BoundQuiver& bq, const Path& w) {
  for (auto a : bq.quiver().arrows_into(w.source()))
    if (bq.is_nonzero(Path::arrow(bq.quiver(), a).then(w))) return true;
  return false;
}

inline bool extends_right(const BoundQuiver& bq, const Path& w) {
  for (auto b : bq.quiver().arrows_from(w.target()))
    if (bq.is_nonzero(w.then(Path::arrow(bq.quiver(), b)))) return true;
  return false;
}

/// M: nonzero paths of positive length that extend on neither side.
inline std::vector<Path> maximal_paths(const BoundQuiver& bq) {
  std::vector<Path> out;
  for (const auto& w : bq.paths())
    if (!w.is_trivial() && !extends_left(bq, w) && !extends_right(bq, w)) out.push_back(w);
  return out;
}

/// The longest u in Pa with u w nonzero (trivial if none). Unique in a
/// string algebra; two competing extensions raise DomainError.
inline Path left_completion(const BoundQuiver& bq, const Path& w) {
  const auto& q = bq.quiver();
  if (w.is_trivial()) throw PreconditionError("left completion needs a path of length >= 1");
  if (!bq.is_nonzero(w)) throw PreconditionError(format_path(q, w) + " is zero in A");
  Path hat = Path::trivial(w.source());
  for (;;) {
    std::optional<Path> grown;
    for (auto a : q.arrows_into(hat.source())) {
      auto candidate = Path::arrow(q, a).then(hat);
      if (!bq.is_nonzero(candidate.then(w))) continue;
      if (grown)
        throw DomainError("left completion of " + format_path(q, w) + " is not unique (" +
                          format_path(q, *grown) + " vs " + format_path(q, candidate) + ")");
      grown = std::move(candidate);
    }
    if (!grown) return hat;
    hat = std::move(*grown);
  }
}

/// Dual of left_completion: the longest u with w u nonzero.
inline Path right_completion(const BoundQuiver& bq, const Path& w) {
  const auto& q = bq.quiver();
  if (w.is_trivial()) throw PreconditionError("right completion needs a path of length >= 1");
  if (!bq.is_nonzero(w)) throw PreconditionError(format_path(q, w) + " is zero in A");
  Path bar = Path::trivial(w.target());
  for (;;) {
    std::optional<Path> grown;
    for (auto b : q.arrows_from(bar.target())) {
      auto candidate = bar.then(Path::arrow(q, b));
      if (!bq.is_nonzero(w.then(candidate))) continue;
      if (grown)
        throw DomainError("right completion of " + format_path(q, w) + " is not unique");
      grown = std::move(candidate);
    }
    if (!grown) return bar;
    bar = std::move(*grown);
  }
}

struct UniqueMaximalPathReport {
  bool holds = true;
  std::optional<ArrowId> witness;  // an arrow lying on two or more maximal paths
};

inline UniqueMaximalPathReport has_unique_maximal_path_property(const BoundQuiver& bq) {
  const auto maximal = maximal_paths(bq);
  const auto& q = bq.quiver();
  for (std::size_t i = 0; i < q.arrow_count(); ++i) {
    const auto a = static_cast<ArrowId>(i);
    std::size_t count = 0;
    for (const auto& m : maximal)
      if (std::find(m.arrows().begin(), m.arrows().end(), a) != m.arrows().end()) ++count;
    if (count == 0)
      throw InternalError("arrow " + q.arrow(a).name + " lies on no maximal path");
    if (count > 1) return {false, a};
  }
  return {true, std::nullopt};
}

}  // namespace stralg
