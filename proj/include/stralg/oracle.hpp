#pragma once

// Independent check of resolutions by explicit linear algebra over F_p.
// Deliberately shares nothing with the combinatorial engine beyond the path
// basis: the leftmost differential is assembled straight from the walk.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "stralg/bound_quiver.hpp"
#include "stralg/detail/modp.hpp"
#include "stralg/error.hpp"
#include "stralg/walks.hpp"

namespace stralg {

/// P_v = A e_v with basis the nonzero paths ending at v.
struct FlatModule {
  VertexId vertex = 0;
  std::vector<Path> basis;

  std::size_t dim() const { return basis.size(); }
  std::size_t index_of(const Path& p) const {
    return static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), p) -
                                    basis.begin());
  }
};

/// Matrix with one column per domain basis vector.
struct FlatMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<modp::Vec> matrix;

  std::size_t rank() const {
    auto m = matrix;
    return modp::rref(m, cols).size();
  }
};

inline FlatModule flatten(const BoundQuiver& bq, VertexId v) {
  FlatModule m;
  m.vertex = v;
  for (const auto& p : bq.paths())
    if (p.target() == v) m.basis.push_back(p);
  return m;
}

/// Right multiplication by w, P_{s(w)} -> P_{t(w)}.
inline FlatMap flat_path_map(const BoundQuiver& bq, const Path& w) {
  if (w.is_trivial() || !bq.is_nonzero(w))
    throw PreconditionError("flat_path_map needs a nonzero path of length >= 1");
  const auto dom = flatten(bq, w.source());
  const auto cod = flatten(bq, w.target());
  FlatMap f{cod.dim(), dom.dim(), std::vector<modp::Vec>(cod.dim(), modp::Vec(dom.dim(), 0))};
  for (std::size_t j = 0; j < dom.dim(); ++j) {
    auto image = dom.basis[j].then(w);
    if (bq.is_nonzero(image)) f.matrix[cod.index_of(image)][j] = 1;
  }
  return f;
}

struct OracleStep {
  std::size_t kernel_dim = 0;
  std::size_t radical_dim = 0;
  std::map<VertexId, std::size_t> covers;
  std::size_t cover_dim = 0;
  std::size_t image_rank = 0;
  bool exact = false;  // image of the cover map is exactly the kernel
};

struct OracleReport {
  std::size_t first_kernel_dim = 0;
  std::vector<OracleStep> steps;
  bool terminated = false;  // a zero kernel was reached within the depth

  std::vector<std::map<VertexId, std::size_t>> betti() const {
    std::vector<std::map<VertexId, std::size_t>> out;
    for (const auto& s : steps) out.push_back(s.covers);
    return out;
  }
  bool all_exact() const {
    return std::all_of(steps.begin(), steps.end(), [](const OracleStep& s) { return s.exact; });
  }
};

namespace detail {

/// Direct sum of indecomposable projectives with flat coordinates.
struct FlatSum {
  std::vector<FlatModule> blocks;
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;

  void add(FlatModule m) {
    offsets.push_back(dim);
    dim += m.dim();
    blocks.push_back(std::move(m));
  }
};

/// Source vertex of each flat coordinate (e_v x keeps exactly these).
inline std::vector<VertexId> coordinate_sources(const FlatSum& s) {
  std::vector<VertexId> out;
  for (const auto& b : s.blocks)
    for (const auto& p : b.basis) out.push_back(p.source());
  return out;
}

/// Left multiplication of x by the arrow a.
inline modp::Vec act(const BoundQuiver& bq, const FlatSum& s, ArrowId a, const modp::Vec& x) {
  const auto arrow = Path::arrow(bq.quiver(), a);
  modp::Vec y(s.dim, 0);
  for (std::size_t b = 0; b < s.blocks.size(); ++b)
    for (std::size_t i = 0; i < s.blocks[b].dim(); ++i) {
      const auto c = x[s.offsets[b] + i];
      if (c == 0) continue;
      const auto& u = s.blocks[b].basis[i];
      if (arrow.target() != u.source()) continue;
      auto au = arrow.then(u);
      if (!bq.is_nonzero(au)) continue;
      auto& slot = y[s.offsets[b] + s.blocks[b].index_of(au)];
      slot = modp::add(slot, c);
    }
  return y;
}

inline std::vector<modp::Vec> project(const std::vector<modp::Vec>& vs,
                                      const std::vector<VertexId>& sources, VertexId v) {
  std::vector<modp::Vec> out;
  for (auto x : vs) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (sources[i] != v) x[i] = 0;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

/// Resolves the good truncation of P_w to `depth` steps. seed 0 lifts top
/// generators canonically; any other seed lifts them by random
/// combinations, which must not change the Betti data.
inline OracleReport oracle_resolve(const BoundQuiver& bq, const GeneralizedWalk& w,
                                   std::size_t depth, std::uint64_t seed = 0) {
  const auto check = is_generalized_string(bq, w);
  if (!check.ok) throw DomainError("not a generalized string: " + check.failure);
  OracleReport report;
  if (w.is_trivial()) {
    report.terminated = true;
    return report;
  }
  const auto& q = bq.quiver();
  std::mt19937_64 rng(seed);

  // Leftmost differential d^t : P^t -> P^{t+1}.
  std::vector<int> mu{0};
  for (const auto& l : w.letters()) mu.push_back(mu.back() + (l.is_direct() ? 1 : -1));
  const int t = *std::min_element(mu.begin(), mu.end());
  detail::FlatSum dom, cod;
  std::map<std::size_t, std::size_t> dom_block, cod_block;  // position -> block
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (mu[j] == t) {
      dom_block[j] = dom.blocks.size();
      dom.add(flatten(bq, w.position_vertex(j)));
    } else if (mu[j] == t + 1) {
      cod_block[j] = cod.blocks.size();
      cod.add(flatten(bq, w.position_vertex(j)));
    }
  }
  std::vector<modp::Vec> d(cod.dim, modp::Vec(dom.dim, 0));
  for (std::size_t i = 0; i < w.length(); ++i) {
    const auto& l = w.letter(i);
    const std::size_t from = l.is_direct() ? i : i + 1;
    const std::size_t to = l.is_direct() ? i + 1 : i;
    if (mu[from] != t) continue;
    const auto& src = dom.blocks[dom_block.at(from)];
    const auto& dst = cod.blocks[cod_block.at(to)];
    for (std::size_t k = 0; k < src.dim(); ++k) {
      auto image = src.basis[k].then(l.path);
      if (!bq.is_nonzero(image)) continue;
      auto& slot = d[cod.offsets[cod_block.at(to)] + dst.index_of(image)]
                    [dom.offsets[dom_block.at(from)] + k];
      slot = modp::add(slot, 1);
    }
  }
  auto kernel = modp::null_space(d, dom.dim);
  report.first_kernel_dim = kernel.size();
  auto ambient = std::move(dom);

  for (std::size_t step = 0; step < depth; ++step) {
    if (kernel.empty()) {
      report.terminated = true;
      return report;
    }
    OracleStep s;
    s.kernel_dim = kernel.size();
    const auto sources = detail::coordinate_sources(ambient);

    std::vector<modp::Vec> radical;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      for (const auto& x : kernel) radical.push_back(detail::act(bq, ambient, static_cast<ArrowId>(a), x));
    radical = modp::span_basis(std::move(radical), ambient.dim);
    s.radical_dim = radical.size();

    struct Generator {
      VertexId vertex;
      modp::Vec vec;
    };
    std::vector<Generator> gens;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      const auto vid = static_cast<VertexId>(v);
      auto top = modp::span_basis(detail::project(kernel, sources, vid), ambient.dim);
      auto chosen = modp::span_basis(detail::project(radical, sources, vid), ambient.dim);
      const std::size_t want = top.size() - chosen.size();
      std::size_t got = 0;
      std::size_t next = 0;
      std::uniform_int_distribution<std::uint32_t> coef(0, modp::prime - 1);
      while (got < want) {
        modp::Vec candidate;
        if (seed == 0) {
          if (next == top.size()) throw InternalError("oracle: top lift ran out of candidates");
          candidate = top[next++];
        } else {
          candidate.assign(ambient.dim, 0);
          for (const auto& b : top) {
            const auto c = coef(rng);
            for (std::size_t i = 0; i < ambient.dim; ++i)
              candidate[i] = modp::add(candidate[i], modp::mul(c, b[i]));
          }
        }
        auto trial = chosen;
        trial.push_back(candidate);
        if (modp::rank(trial, ambient.dim) == chosen.size() + 1) {
          chosen = modp::span_basis(std::move(trial), ambient.dim);
          gens.push_back({vid, std::move(candidate)});
          ++got;
        }
      }
      if (want > 0) s.covers[vid] = want;
    }

    // Cover map: the basis path u' of P_{v(g)} goes to u' g.
    detail::FlatSum cover;
    for (const auto& g : gens) cover.add(flatten(bq, g.vertex));
    std::vector<modp::Vec> phi(ambient.dim, modp::Vec(cover.dim, 0));
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const auto& block = cover.blocks[gi];
      for (std::size_t k = 0; k < block.dim(); ++k) {
        const auto& prefix = block.basis[k];
        const auto col = cover.offsets[gi] + k;
        for (std::size_t b = 0; b < ambient.blocks.size(); ++b)
          for (std::size_t i = 0; i < ambient.blocks[b].dim(); ++i) {
            const auto c = gens[gi].vec[ambient.offsets[b] + i];
            if (c == 0) continue;
            const auto& u = ambient.blocks[b].basis[i];
            if (prefix.target() != u.source()) continue;
            auto pu = prefix.then(u);
            if (!bq.is_nonzero(pu)) continue;
            auto& slot = phi[ambient.offsets[b] + ambient.blocks[b].index_of(pu)][col];
            slot = modp::add(slot, c);
          }
      }
    }
    s.cover_dim = cover.dim;
    std::vector<modp::Vec> images(cover.dim, modp::Vec(ambient.dim, 0));
    for (std::size_t r = 0; r < ambient.dim; ++r)
      for (std::size_t c = 0; c < cover.dim; ++c) images[c][r] = phi[r][c];
    s.image_rank = modp::rank(images, ambient.dim);
    auto joined = kernel;
    joined.insert(joined.end(), images.begin(), images.end());
    s.exact = s.image_rank == kernel.size() && modp::rank(joined, ambient.dim) == kernel.size();
    report.steps.push_back(std::move(s));

    kernel = modp::null_space(phi, cover.dim);
    ambient = std::move(cover);
  }
  report.terminated = kernel.empty();
  return report;
}

}  // namespace stralg
