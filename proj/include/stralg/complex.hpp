#pragma once

// String complexes P_w built positionally from a generalized string, their
// verification, good truncation and rendering.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stralg/bound_quiver.hpp"
#include "stralg/error.hpp"
#include "stralg/syzygy.hpp"
#include "stralg/walks.hpp"

namespace stralg {

/// Summand P_{c(j)} sitting at position j.
struct Summand {
  std::size_t position;
  VertexId vertex;
  bool operator==(const Summand&) const = default;
};

/// Differential entry p(path): P_{c(from)} -> P_{c(to)} in degree `degree`.
struct Cell {
  int degree;
  std::size_t from;
  std::size_t to;
  Path path;
  bool operator==(const Cell&) const = default;
};

struct StringComplex {
  std::optional<GeneralizedWalk> origin;
  std::vector<VertexId> vertices;  // c(j)
  std::vector<int> degrees;        // mu(j)
  std::vector<Cell> cells;         // sorted by (degree, from, to)

  int min_degree() const { return *std::min_element(degrees.begin(), degrees.end()); }
  int max_degree() const { return *std::max_element(degrees.begin(), degrees.end()); }
  std::size_t position_count() const { return vertices.size(); }

  std::vector<Summand> summands(int degree) const {
    std::vector<Summand> out;
    for (std::size_t j = 0; j < vertices.size(); ++j)
      if (degrees[j] == degree) out.push_back({j, vertices[j]});
    return out;
  }

  std::optional<Path> cell(std::size_t from, std::size_t to) const {
    for (const auto& c : cells)
      if (c.from == from && c.to == to) return c.path;
    return std::nullopt;
  }

  bool operator==(const StringComplex&) const = default;
};

inline StringComplex build_string_complex(const BoundQuiver& bq, const GeneralizedWalk& w) {
  const auto check = is_generalized_string(bq, w);
  if (!check.ok) throw DomainError("not a generalized string: " + check.failure);
  StringComplex sc;
  sc.origin = w;
  const auto mu = mu_profile(w);
  sc.degrees = mu.values;
  for (std::size_t j = 0; j <= w.length(); ++j) sc.vertices.push_back(w.position_vertex(j));
  for (std::size_t i = 0; i < w.length(); ++i) {
    const auto& l = w.letter(i);
    if (l.is_direct())
      sc.cells.push_back({mu.values[i], i, i + 1, l.path});
    else
      sc.cells.push_back({mu.values[i + 1], i + 1, i, l.path});
  }
  std::sort(sc.cells.begin(), sc.cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.degree, a.from, a.to) < std::tie(b.degree, b.from, b.to);
  });
  return sc;
}

struct ComplexReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Checks endpoints, the radical condition and that d o d vanishes.
inline ComplexReport verify_complex(const BoundQuiver& bq, const StringComplex& sc) {
  const auto& q = bq.quiver();
  ComplexReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.failures.push_back(std::move(msg));
  };
  if (sc.vertices.size() != sc.degrees.size() || sc.vertices.empty()) {
    fail("positions and degrees disagree in size");
    return r;
  }
  std::vector<const Cell*> usable;
  for (const auto& c : sc.cells) {
    const std::string where = "cell " + std::to_string(c.from) + "->" + std::to_string(c.to);
    if (c.from >= sc.position_count() || c.to >= sc.position_count()) {
      fail(where + ": position out of range");
      continue;
    }
    bool good = true;
    if (c.path.source() != sc.vertices[c.from] || c.path.target() != sc.vertices[c.to]) {
      fail(where + ": path " + format_path(q, c.path) + " does not run P_" +
           q.vertex_name(sc.vertices[c.from]) + " -> P_" + q.vertex_name(sc.vertices[c.to]));
      good = false;
    }
    if (c.degree != sc.degrees[c.from] || sc.degrees[c.to] != c.degree + 1) {
      fail(where + ": degrees do not step from " + std::to_string(c.degree) + " to " +
           std::to_string(c.degree + 1));
      good = false;
    }
    if (c.path.is_trivial() || !bq.is_nonzero(c.path)) {
      fail(where + ": entry " + format_path(q, c.path) + " is not in the radical");
      good = false;
    }
    if (good) usable.push_back(&c);
  }
  // Entry (j, l) of d o d is the sum of p(u v) over matching cells; with
  // positive coefficients it vanishes iff each product is zero.
  for (const auto* first : usable)
    for (const auto* second : usable)
      if (first->to == second->from && bq.is_nonzero(first->path.then(second->path)))
        fail("d o d: " + format_path(q, first->path) + " then " + format_path(q, second->path) +
             " is nonzero at positions " + std::to_string(first->from) + "->" +
             std::to_string(first->to) + "->" + std::to_string(second->to));
  return r;
}

// ---------------------------------------------------------------------------
// Good truncation

struct ValleyKernel {
  std::size_t position;
  std::optional<Path> left;   // underlying path of the inverse letter entering
  std::optional<Path> right;  // path of the direct letter leaving
  KernelPresentation kernel;
};

struct TruncationPresentation {
  StringComplex base;
  int leftmost_degree = 0;
  std::vector<ValleyKernel> valleys;
  std::vector<std::string> diagnostics;

  std::vector<Path> generators() const {
    std::vector<Path> out;
    for (const auto& v : valleys)
      out.insert(out.end(), v.kernel.generators.begin(), v.kernel.generators.end());
    return out;
  }
};

/// Attaches ker d^t at degree t-1, one kernel summand per valley (position
/// where mu reaches its minimum t).
inline TruncationPresentation good_truncation(const BoundQuiver& bq, StringComplex sc) {
  if (!sc.origin) throw PreconditionError("good_truncation needs the originating walk");
  TruncationPresentation tp;
  tp.base = std::move(sc);
  const auto& w = *tp.base.origin;
  tp.leftmost_degree = tp.base.min_degree();
  if (w.is_trivial()) return tp;

  const std::size_t n = w.length();
  for (std::size_t j = 0; j <= n; ++j) {
    if (tp.base.degrees[j] != tp.leftmost_degree) continue;
    ValleyKernel v{j, std::nullopt, std::nullopt, {}};
    if (j > 0) v.left = w.letter(j - 1).path;  // inverse: its path starts at c(j)
    if (j < n) v.right = w.letter(j).path;     // direct: starts at c(j)
    v.kernel = valley_kernel(bq, v.left, v.right);
    tp.valleys.push_back(std::move(v));
  }
  const bool at_start = tp.base.degrees.front() == tp.leftmost_degree;
  const bool at_end = tp.base.degrees.back() == tp.leftmost_degree;
  if (!at_start && !at_end)
    tp.diagnostics.push_back("minimum attained only at interior positions");
  else if (!at_start)
    tp.diagnostics.push_back("minimum attained at the end but not at position 0");
  return tp;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string module_name(const Quiver& q, const std::vector<Summand>& s) {
  if (s.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += " ⊕ ";
    out += "P_" + q.vertex_name(s[i].vertex);
  }
  return out;
}

inline std::string entry(const Quiver& q, const std::optional<Path>& p) {
  return p ? "p(" + format_path(q, *p, "") + ")" : "0";
}

}  // namespace detail

/// Degree-by-degree listing. Each differential is printed as a block matrix
/// with rows indexed by source summands and columns by target summands;
/// `verbose` adds the full positional matrix.
inline std::string render_text(const BoundQuiver& bq, const StringComplex& sc, bool verbose = false) {
  const auto& q = bq.quiver();
  std::ostringstream out;
  if (sc.origin) out << "walk: " << format_walk(q, *sc.origin) << '\n';
  out << "degrees: " << sc.min_degree() << ".." << sc.max_degree() << '\n';
  for (int i = sc.min_degree(); i <= sc.max_degree(); ++i)
    out << "P^" << i << " = " << detail::module_name(q, sc.summands(i)) << '\n';
  for (int i = sc.min_degree(); i < sc.max_degree(); ++i) {
    const auto rows = sc.summands(i);
    const auto cols = sc.summands(i + 1);
    out << "d^" << i << ":";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out << (r == 0 ? " (" : "; ");
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c > 0) out << ' ';
        out << detail::entry(q, sc.cell(rows[r].position, cols[c].position));
      }
    }
    out << ")\n";
  }
  if (verbose) {
    out << "positional matrix (rows j, columns k):\n";
    for (std::size_t j = 0; j < sc.position_count(); ++j) {
      out << "  ";
      for (std::size_t k = 0; k < sc.position_count(); ++k) {
        if (k > 0) out << ' ';
        out << detail::entry(q, sc.cell(j, k));
      }
      out << '\n';
    }
  }
  return out.str();
}

/// Staircase picture: one node per position, one edge per cell.
inline std::string render_dot(const BoundQuiver& bq, const StringComplex& sc) {
  const auto& q = bq.quiver();
  std::ostringstream out;
  out << "digraph complex {\n  rankdir=LR;\n";
  for (int i = sc.min_degree(); i <= sc.max_degree(); ++i) {
    out << "  { rank=same;";
    for (const auto& s : sc.summands(i)) out << ' ' << s.position << ';';
    out << " }\n";
  }
  for (std::size_t j = 0; j < sc.position_count(); ++j)
    out << "  " << j << " [label=\"P_" << q.vertex_name(sc.vertices[j]) << "\"];\n";
  for (const auto& c : sc.cells)
    out << "  " << c.from << " -> " << c.to << " [label=\"" << format_path(q, c.path, "")
        << "\"];\n";
  out << "}\n";
  return out.str();
}

inline nlohmann::json complex_to_json(const BoundQuiver& bq, const StringComplex& sc) {
  const auto& q = bq.quiver();
  nlohmann::json j;
  j["walk"] = sc.origin ? nlohmann::json(format_walk(q, *sc.origin)) : nlohmann::json(nullptr);
  j["degrees"] = {{"min", sc.min_degree()}, {"max", sc.max_degree()}};
  j["positions"] = nlohmann::json::array();
  for (std::size_t p = 0; p < sc.position_count(); ++p)
    j["positions"].push_back(
        {{"index", p}, {"vertex", q.vertex_name(sc.vertices[p])}, {"degree", sc.degrees[p]}});
  j["cells"] = nlohmann::json::array();
  for (const auto& c : sc.cells)
    j["cells"].push_back({{"degree", c.degree},
                          {"from", c.from},
                          {"to", c.to},
                          {"path", format_path(q, c.path)}});
  return j;
}

inline StringComplex complex_from_json(const BoundQuiver& bq, const nlohmann::json& j) {
  const auto& q = bq.quiver();
  StringComplex sc;
  try {
    if (j.contains("walk") && !j.at("walk").is_null())
      sc.origin = parse_walk(j.at("walk").get<std::string>(), bq);
    for (const auto& p : j.at("positions")) {
      const auto name = p.at("vertex").get<std::string>();
      auto v = q.find_vertex(name);
      if (!v) throw ParseError("unknown vertex " + name, 0, 0);
      if (p.at("index").get<std::size_t>() != sc.vertices.size())
        throw ParseError("positions out of order", 0, 0);
      sc.vertices.push_back(*v);
      sc.degrees.push_back(p.at("degree").get<int>());
    }
    for (const auto& c : j.at("cells"))
      sc.cells.push_back({c.at("degree").get<int>(), c.at("from").get<std::size_t>(),
                          c.at("to").get<std::size_t>(),
                          bq.path_from_names(c.at("path").get<std::string>())});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed complex document: ") + e.what(), 0, 0);
  }
  return sc;
}

inline std::string render(const BoundQuiver& bq, const StringComplex& sc, std::string_view format,
                          bool verbose = false) {
  if (format == "text") return render_text(bq, sc, verbose);
  if (format == "dot") return render_dot(bq, sc);
  if (format == "json") return complex_to_json(bq, sc).dump(2) + "\n";
  throw PreconditionError("unknown format " + std::string(format));
}

}  // namespace stralg
