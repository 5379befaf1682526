#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain refusal, 2 usage
// or parse error, 3 theorem violation or internal error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stralg/bound_quiver.hpp"
#include "stralg/classify.hpp"
#include "stralg/complex.hpp"
#include "stralg/error.hpp"
#include "stralg/oracle.hpp"
#include "stralg/resolution.hpp"
#include "stralg/syzygy.hpp"
#include "stralg/walks.hpp"

namespace stralg::cli {

using nlohmann::json;

namespace detail {

struct Options {
  std::string file;
  std::string walk;
  std::string dot;
  std::size_t depth = 32;
  std::size_t max_len = 4;
  std::size_t min_len = 0;
  int shifts = 0;
  std::uint64_t seed = 0;
  bool json = false;
  bool oracle = false;
  bool verbose = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_dot(const std::string& target, const std::string& text, std::ostream& out) {
  if (target.empty()) return;
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) throw UsageError("cannot write " + target);
  f << text;
}

inline json path_list(const Quiver& q, const std::vector<Path>& paths) {
  json a = json::array();
  for (const auto& p : paths) a.push_back(format_path(q, p));
  return a;
}

inline json witness_json(const Quiver& q, const PeriodicityWitness& w) {
  return {{"kind", to_string(w.kind)}, {"path", format_path(q, w.path)}, {"valley", w.valley}};
}

inline std::string witness_text(const Quiver& q, const PeriodicityWitness& w) {
  std::string s = to_string(w.kind);
  if (w.kind == WitnessKind::InteriorValley) s += " l=" + std::to_string(w.valley);
  return s + " " + format_path(q, w.path);
}

inline json betti_json(const Quiver& q, const BettiData& b) {
  json a = json::array();
  for (const auto& step : b) {
    json s = json::object();
    for (const auto& [v, m] : step) s[q.vertex_name(v)] = m;
    a.push_back(s);
  }
  return a;
}

inline std::string status_name(ResolutionStatus s) {
  switch (s) {
    case ResolutionStatus::Terminated: return "terminated";
    case ResolutionStatus::Periodic: return "periodic";
    case ResolutionStatus::DepthExhausted: return "depth-exhausted";
  }
  return "?";
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  BoundQuiver load() const { return parse_bound_quiver(read_input(o_.file)); }

  GeneralizedWalk walk(const BoundQuiver& bq) const {
    if (o_.walk.empty()) throw UsageError("--walk is required");
    return parse_walk(o_.walk, bq);
  }

  int validate() {
    const auto bq = load();
    const auto r = validate_string_algebra(bq);
    if (o_.json) {
      json v = json::array();
      for (const auto& x : r.violations) v.push_back({{"rule", x.rule}, {"witness", x.witness}});
      emit({{"is_string_algebra", r.is_string_algebra}, {"violations", v}});
    } else {
      out_ << "string algebra: " << (r.is_string_algebra ? "yes" : "no") << '\n';
      for (const auto& x : r.violations) out_ << "rule " << x.rule << ": " << x.witness << '\n';
    }
    return r.is_string_algebra ? 0 : 1;
  }

  int paths() {
    const auto bq = load();
    const auto ps = enumerate_paths(bq, o_.min_len);
    print_paths(bq.quiver(), ps, "paths");
    return 0;
  }

  int maximal() {
    const auto bq = load();
    const auto& q = bq.quiver();
    (void)SyzygyGraph(bq);  // refuses non-string algebras
    const auto m = maximal_paths(bq);
    const auto ump = has_unique_maximal_path_property(bq);
    if (o_.json) {
      json u{{"holds", ump.holds}};
      if (ump.witness) u["witness"] = q.arrow(*ump.witness).name;
      emit({{"maximal", path_list(q, m)}, {"unique_maximal_path", u}});
    } else {
      for (const auto& p : m) out_ << format_path(q, p) << '\n';
      out_ << "unique maximal path property: " << (ump.holds ? "true" : "false");
      if (ump.witness) out_ << " (arrow " << q.arrow(*ump.witness).name << ")";
      out_ << '\n';
    }
    return 0;
  }

  int cyclic() {
    const auto bq = load();
    const SyzygyGraph g(bq);
    print_paths(bq.quiver(), g.cyclic_paths(), "cyclic");
    write_dot(o_.dot, g.to_dot(), out_);
    return 0;
  }

  int complex() {
    const auto bq = load();
    const auto& q = bq.quiver();
    const auto w = walk(bq);
    const auto sc = build_string_complex(bq, w);
    const auto tp = good_truncation(bq, sc);
    if (o_.json) {
      auto j = complex_to_json(bq, sc);
      j["truncation"] = truncation_json(q, tp);
      emit(j);
    } else {
      out_ << render_text(bq, sc, o_.verbose);
      out_ << "good truncation at degree " << tp.leftmost_degree - 1 << ":";
      if (tp.valleys.empty()) out_ << " none";
      out_ << '\n';
      for (const auto& v : tp.valleys) {
        out_ << "  valley " << v.position << ": ker =";
        if (v.kernel.empty()) out_ << " 0";
        for (const auto& g : v.kernel.generators) out_ << " A(" << format_path(q, g) << ")";
        out_ << '\n';
      }
      for (const auto& d : tp.diagnostics) out_ << "note: " << d << '\n';
      if (auto note = mu_profile(w).convention_note()) out_ << "note: " << *note << '\n';
    }
    write_dot(o_.dot, render_dot(bq, sc), out_);
    return 0;
  }

  int resolve_cmd() {
    const auto bq = load();
    const auto& q = bq.quiver();
    const SyzygyGraph g(bq);
    const auto w = walk(bq);
    const auto trace = resolve(g, w, o_.depth);
    const auto betti = betti_data(trace);
    std::optional<OracleReport> orc;
    if (o_.oracle) orc = oracle_resolve(bq, w, o_.depth, o_.seed);
    const bool agree = !orc || (orc->betti() == betti && orc->all_exact());

    if (o_.json) {
      json steps = json::array();
      for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        json gens = json::array();
        for (const auto& [p, m] : trace.steps[k].generators)
          gens.push_back({{"path", format_path(q, p)},
                          {"cover", q.vertex_name(p.source())},
                          {"multiplicity", m}});
        steps.push_back({{"step", k + 1},
                         {"degree", trace.leftmost_degree - static_cast<int>(k) - 1},
                         {"generators", gens}});
      }
      json j{{"walk", format_walk(q, w)},
             {"leftmost_degree", trace.leftmost_degree},
             {"steps", steps},
             {"status", status_name(trace.status)},
             {"betti", betti_json(q, betti)}};
      if (trace.status == ResolutionStatus::Terminated) j["terminated_at"] = trace.terminated_at;
      if (trace.status == ResolutionStatus::Periodic) j["cycle"] = path_list(q, trace.cycle);
      if (orc) j["oracle"] = oracle_json(q, *orc, betti);
      emit(j);
    } else {
      out_ << "walk: " << format_walk(q, w) << '\n';
      for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        out_ << "step " << k + 1 << " (degree " << trace.leftmost_degree - static_cast<int>(k) - 1
             << "):";
        bool first = true;
        for (const auto& [p, m] : trace.steps[k].generators) {
          out_ << (first ? " " : ", ") << format_path(q, p) << " [P_"
               << q.vertex_name(p.source()) << "]";
          if (m > 1) out_ << " x" << m;
          first = false;
        }
        out_ << '\n';
      }
      out_ << "status: " << status_name(trace.status);
      if (trace.status == ResolutionStatus::Terminated)
        out_ << " at step " << trace.terminated_at;
      if (trace.status == ResolutionStatus::Periodic) {
        out_ << " (cycle:";
        for (std::size_t i = 0; i < trace.cycle.size(); ++i)
          out_ << (i ? ", " : " ") << format_path(q, trace.cycle[i]);
        out_ << ")";
      }
      out_ << "\nbetti: " << format_betti(q, betti) << '\n';
      if (orc) {
        for (std::size_t k = 0; k < orc->steps.size(); ++k) {
          const auto& s = orc->steps[k];
          const bool same = k < betti.size() && betti[k] == s.covers;
          out_ << "oracle step " << k + 1 << ": kernel dim " << s.kernel_dim << ", "
               << (same ? "agrees" : "DISAGREES") << ", " << (s.exact ? "exact" : "NOT EXACT")
               << '\n';
        }
        out_ << "oracle: " << (agree ? "agreement" : "DISAGREEMENT") << '\n';
      }
    }
    if (!agree) throw InternalError("oracle and resolution engine disagree");
    return 0;
  }

  int classify_cmd() {
    const auto bq = load();
    const auto& q = bq.quiver();
    const SyzygyGraph g(bq);
    const auto w = walk(bq);
    const auto c = classify(g, w);
    if (o_.json) {
      json j{{"walk", format_walk(q, w)},
             {"canonical", format_walk(q, c.walk)},
             {"verdict", c.periodic ? "periodic" : "bounded"}};
      if (c.periodic) {
        j["witness"] = witness_json(q, *c.witness);
        j["cycle"] = path_list(q, c.cycle);
      } else {
        j["resolution_length"] = c.resolution_length;
      }
      emit(j);
    } else {
      if (c.walk != w) out_ << "canonical: " << format_walk(q, c.walk) << '\n';
      if (c.periodic)
        out_ << format_walk(q, c.walk) << ": periodic, witness " << witness_text(q, *c.witness)
             << '\n';
      else
        out_ << format_walk(q, c.walk) << ": bounded, resolution length " << c.resolution_length
             << '\n';
    }
    return 0;
  }

  int gldim() {
    const auto bq = load();
    const auto& q = bq.quiver();
    const SyzygyGraph g(bq);
    const auto found = gldim_witness(g, o_.max_len);
    if (o_.json) {
      json j{{"max_len", o_.max_len}, {"verdict", found ? "infinite" : "no-witness-found"}};
      if (found) {
        j["walk"] = format_walk(q, found->walk);
        j["witness"] = witness_json(q, found->witness);
      }
      emit(j);
    } else if (found) {
      out_ << "gl.dim A = ∞, witness ω = " << format_walk(q, found->walk) << '\n';
      out_ << "cyclic witness: " << witness_text(q, found->witness) << '\n';
    } else {
      out_ << "no witness found up to " << o_.max_len
           << " letters (this does not show finite global dimension)\n";
    }
    return 0;
  }

  int indec() {
    const auto bq = load();
    const auto& q = bq.quiver();
    const SyzygyGraph g(bq);
    const auto entries = enumerate_indecomposables(g, o_.max_len, o_.shifts);
    if (o_.json) {
      json a = json::array();
      for (const auto& e : entries) {
        json j{{"family", e.family}, {"walk", format_walk(q, e.walk)}, {"shift", e.shift}};
        if (e.witness) j["witness"] = witness_json(q, *e.witness);
        a.push_back(j);
      }
      emit({{"entries", a}});
    } else {
      for (const auto& e : entries) {
        out_ << "family-" << e.family << " shift " << e.shift << ": "
             << (e.family == 1 ? "P(" : "beta(P(") << format_walk(q, e.walk)
             << (e.family == 1 ? ")" : "))");
        if (e.witness) out_ << "  [" << witness_text(q, *e.witness) << "]";
        out_ << '\n';
      }
    }
    return 0;
  }

  int oracle() {
    const auto bq = load();
    const auto& q = bq.quiver();
    const auto w = walk(bq);
    const auto r = oracle_resolve(bq, w, o_.depth, o_.seed);
    if (o_.json) {
      emit(oracle_json(q, r, std::nullopt));
    } else {
      out_ << "walk: " << format_walk(q, w) << '\n';
      out_ << "kernel of leftmost differential: dim " << r.first_kernel_dim << '\n';
      for (std::size_t k = 0; k < r.steps.size(); ++k) {
        const auto& s = r.steps[k];
        out_ << "step " << k + 1 << ": kernel dim " << s.kernel_dim << ", radical dim "
             << s.radical_dim << ", cover dim " << s.cover_dim << ", image rank "
             << s.image_rank << (s.exact ? ", exact" : ", NOT EXACT") << '\n';
      }
      out_ << "betti: " << format_betti(q, r.betti()) << '\n';
      out_ << (r.terminated ? "terminated" : "depth reached") << '\n';
    }
    return r.all_exact() ? 0 : 3;
  }

 private:
  void emit(const json& j) { out_ << j.dump(2) << '\n'; }

  void print_paths(const Quiver& q, const std::vector<Path>& ps, const char* key) {
    if (o_.json) {
      emit({{key, path_list(q, ps)}});
      return;
    }
    for (const auto& p : ps) out_ << format_path(q, p) << '\n';
  }

  static json truncation_json(const Quiver& q, const TruncationPresentation& tp) {
    json v = json::array();
    for (const auto& x : tp.valleys)
      v.push_back({{"position", x.position}, {"kernel", path_list(q, x.kernel.generators)}});
    return {{"leftmost_degree", tp.leftmost_degree}, {"valleys", v}, {"diagnostics", tp.diagnostics}};
  }

  static json oracle_json(const Quiver& q, const OracleReport& r,
                          const std::optional<BettiData>& engine) {
    json steps = json::array();
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      const auto& s = r.steps[k];
      json j{{"step", k + 1},         {"kernel_dim", s.kernel_dim}, {"radical_dim", s.radical_dim},
             {"cover_dim", s.cover_dim}, {"image_rank", s.image_rank}, {"exact", s.exact}};
      if (engine) j["agrees"] = k < engine->size() && (*engine)[k] == s.covers;
      steps.push_back(j);
    }
    json j{{"first_kernel_dim", r.first_kernel_dim},
           {"steps", steps},
           {"betti", betti_json(q, r.betti())},
           {"terminated", r.terminated}};
    if (engine) j["agreement"] = r.betti() == *engine && r.all_exact();
    return j;
  }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"String algebra toolkit: bound quivers, string complexes, resolutions", "stralg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--dot", o.dot, "Write a DOT picture to PATH ('-' for stdout)");
  app.add_option("--seed", o.seed, "Seed for randomized top lifts in the oracle");

  auto file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Bound quiver file (.sq, '-' for stdin)")->required();
  };
  auto walk = [&](CLI::App* sub) {
    sub->add_option("--walk", o.walk, "Generalized string, e.g. \"a~ . c . (c b)~\"")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check the string algebra conditions");
  file(validate);
  auto* paths = app.add_subcommand("paths", "List the path basis");
  file(paths);
  paths->add_option("--min-len", o.min_len, "Minimum path length");
  auto* maximal = app.add_subcommand("maximal", "Maximal paths and the unique maximal path property");
  file(maximal);
  auto* cyclic = app.add_subcommand("cyclic", "Cyclic paths of the syzygy graph");
  file(cyclic);
  auto* complex = app.add_subcommand("complex", "Build and render a string complex");
  file(complex);
  walk(complex);
  complex->add_flag("--verbose", o.verbose, "Also print the positional matrix");
  auto* resolve = app.add_subcommand("resolve", "Minimal projective resolution of the truncation");
  file(resolve);
  walk(resolve);
  resolve->add_option("--depth", o.depth, "Number of steps");
  resolve->add_flag("--oracle", o.oracle, "Cross-check with the linear algebra oracle");
  auto* classify = app.add_subcommand("classify", "Periodic or bounded, with witness");
  file(classify);
  walk(classify);
  auto* gldim = app.add_subcommand("gldim", "Search for an infinite global dimension witness");
  file(gldim);
  gldim->add_option("--max-len", o.max_len, "Maximum number of letters");
  auto* indec = app.add_subcommand("indec", "Catalog of indecomposable complexes");
  file(indec);
  indec->add_option("--max-len", o.max_len, "Maximum number of letters");
  indec->add_option("--shifts", o.shifts, "Shift range");
  auto* oracle = app.add_subcommand("oracle", "Linear algebra resolution over F_p");
  file(oracle);
  walk(oracle);
  oracle->add_option("--depth", o.depth, "Number of steps");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message,
                  json extra = json::object()) {
    if (o.json) {
      json e{{"kind", kind}, {"message", message}};
      for (auto& [k, v] : extra.items()) e[k] = v;
      out << json{{"error", e}}.dump(2) << '\n';
    } else {
      err << "error: " << message << '\n';
      if (extra.contains("dump")) err << extra["dump"].get<std::string>();
    }
    return code;
  };

  detail::Runner r(o, out);
  try {
    if (*validate) return r.validate();
    if (*paths) return r.paths();
    if (*maximal) return r.maximal();
    if (*cyclic) return r.cyclic();
    if (*complex) return r.complex();
    if (*resolve) return r.resolve_cmd();
    if (*classify) return r.classify_cmd();
    if (*gldim) return r.gldim();
    if (*indec) return r.indec();
    if (*oracle) return r.oracle();
  } catch (const ParseError& e) {
    return fail(2, "parse", e.message(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const detail::UsageError& e) {
    return fail(2, "usage", e.what());
  } catch (const PreconditionError& e) {
    return fail(2, "usage", e.what());
  } catch (const NotComposableError& e) {
    return fail(2, "usage", e.what());
  } catch (const DomainError& e) {
    return fail(1, "domain", e.what());
  } catch (const TheoremViolation& e) {
    return fail(3, "theorem-violation", e.what(), {{"dump", e.dump()}});
  } catch (const Error& e) {
    return fail(3, "internal", e.what());
  }
  return 2;
}

}  // namespace stralg::cli
