#include "gkc/complexes.hpp"

#include <algorithm>
#include <numeric>

#include "gkc/errors.hpp"
#include "gkc/parallel.hpp"

namespace gkc {

long ChainComplexQ::dim(int degree) const {
  for (const auto& block : degrees)
    if (block.degree == degree) return static_cast<long>(block.classes.size());
  return 0;
}

std::size_t ChainComplexQ::total_dim() const {
  std::size_t t = 0;
  for (const auto& block : degrees) t += block.classes.size();
  return t;
}

void ChainComplexQ::verify_d2() const {
  if (!d2_is_zero()) throw consistency_error("d^2 != 0 in complex " + kind);
}

bool ChainComplexQ::d2_is_zero() const {
  for (std::size_t i = 0; i + 1 < diff.size(); ++i)
    if (!multiply(diff[i + 1], diff[i]).is_zero()) return false;
  return true;
}

std::vector<GraphClass> surviving_classes(const std::vector<GraphClass>& level) {
  std::vector<GraphClass> out;
  for (const auto& cls : level)
    if (!cls.aut.orientation_reversing) out.push_back(cls);
  return out;
}

bool is_reduced_class(const GraphClass& cls) {
  const auto& g = cls.rep;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.weight(v) != 0) return false;
  for (auto [a, b] : g.edges())
    if (g.vertex_of(a) == g.vertex_of(b)) return false;
  return true;
}

namespace {

// Signed contraction-incidence differential between two key-sorted levels.
// Rows are driven in parallel; each row only depends on its own class.
SparseMatrixZ contraction_differential(const std::vector<GraphClass>& src,
                                       const std::vector<GraphClass>& dst, Mode mode) {
  SparseMatrixZ d(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  std::vector<std::vector<std::pair<int, int>>> row_entries(dst.size());
  parallel_for(dst.size(), [&](std::size_t r) {
    const auto& target = dst[r].rep;
    for (int e = 0; e < target.num_edges(); ++e) {
      auto contracted = contract_edge(target, e);
      auto a = analyze(contracted, mode);
      auto it = std::lower_bound(
          src.begin(), src.end(), a.key,
          [](const GraphClass& c, const CanonicalKey& k) { return c.key < k; });
      if (it == src.end() || it->key != a.key) continue;
      const int sign = ((e % 2) ? -1 : 1) * iso_sign(mode, contracted, a.rep, a.to_rep);
      row_entries[r].emplace_back(static_cast<int>(it - src.begin()), sign);
    }
  });
  for (std::size_t r = 0; r < row_entries.size(); ++r)
    for (auto [c, v] : row_entries[r]) d.add(static_cast<int>(r), c, v);
  d.finalize();
  return d;
}

ChainComplexQ build_contraction_complex(const GraphBasis& basis, bool reduced,
                                        const std::string& kind) {
  ChainComplexQ out;
  out.kind = kind;
  out.g = basis.g;
  out.n = basis.n;
  out.mode = basis.mode;
  const int offset = basis.mode == Mode::hairy ? basis.n : 0;
  out.grading = basis.mode == Mode::hairy ? "edges+hairs" : "edges";

  for (int k = 0; k <= basis.max_edges; ++k) {
    DegreeBlock block;
    block.degree = k + offset;
    if (k < static_cast<int>(basis.by_edges.size())) {
      auto classes = surviving_classes(basis.by_edges[k]);
      if (reduced) {
        classes.erase(std::remove_if(classes.begin(), classes.end(),
                                     [](const GraphClass& c) { return !is_reduced_class(c); }),
                      classes.end());
      }
      block.classes = std::move(classes);
    }
    out.degrees.push_back(std::move(block));
  }
  for (std::size_t i = 0; i + 1 < out.degrees.size(); ++i)
    out.diff.push_back(contraction_differential(out.degrees[i].classes,
                                                out.degrees[i + 1].classes, basis.mode));
  return out;
}

}  // namespace

ChainComplexQ build_weight0_gk(const GraphBasis& basis) {
  return build_contraction_complex(basis, false, "w0gk");
}

ChainComplexQ build_weight0_gk(int g, int n, Mode mode, const std::string& cache_dir) {
  return build_weight0_gk(enumerate_cached(g, n, mode, -1, cache_dir));
}

ChainComplexQ build_reduced_hairy_gc(const GraphBasis& basis) {
  return build_contraction_complex(basis, true, "hgc");
}

ChainComplexQ build_reduced_hairy_gc(int g, int n, Mode mode, const std::string& cache_dir) {
  return build_reduced_hairy_gc(enumerate_cached(g, n, mode, -1, cache_dir));
}

ChiMap build_chi(const GraphBasis& src_hairy, const GraphBasis& dst_hairy) {
  if (src_hairy.mode != Mode::hairy || dst_hairy.mode != Mode::hairy)
    throw parameter_error("build_chi: hairy bases required");
  if (dst_hairy.n != src_hairy.n + 1 || dst_hairy.g != src_hairy.g)
    throw parameter_error("build_chi: bases must differ by one hair");

  ChiMap chi;
  chi.g = src_hairy.g;
  chi.n = src_hairy.n;
  const int levels = static_cast<int>(src_hairy.by_edges.size());
  chi.src.resize(levels);
  chi.dst.resize(levels);
  chi.by_edges.resize(levels);
  for (int k = 0; k < levels; ++k) {
    chi.src[k] = surviving_classes(src_hairy.by_edges[k]);
    if (k < static_cast<int>(dst_hairy.by_edges.size()))
      chi.dst[k] = surviving_classes(dst_hairy.by_edges[k]);

    const auto& src = chi.src[k];
    const auto& dst = chi.dst[k];
    SparseMatrixZ d(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    std::vector<std::vector<std::pair<int, int>>> col_entries(src.size());
    parallel_for(src.size(), [&](std::size_t c) {
      const auto& g = src[c].rep;
      const int base_sign = ((g.num_edges() + g.num_hairs()) % 2) ? -1 : 1;
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        auto grown = add_hair(g, v);
        auto a = analyze(grown, Mode::hairy);
        auto it = std::lower_bound(
            dst.begin(), dst.end(), a.key,
            [](const GraphClass& cls, const CanonicalKey& k2) { return cls.key < k2; });
        if (it == dst.end() || it->key != a.key) continue;
        const int sign = base_sign * iso_sign(Mode::hairy, grown, a.rep, a.to_rep);
        col_entries[c].emplace_back(static_cast<int>(it - dst.begin()), sign);
      }
    });
    for (std::size_t c = 0; c < col_entries.size(); ++c)
      for (auto [r, v] : col_entries[c]) d.add(r, static_cast<int>(c), v);
    d.finalize();
    chi.by_edges[k] = std::move(d);
  }
  return chi;
}

ChiMap build_chi(int g, int n, const std::string& cache_dir) {
  auto src = enumerate_cached(g, n, Mode::hairy, -1, cache_dir);
  auto dst = enumerate_cached(g, n + 1, Mode::hairy, -1, cache_dir);
  return build_chi(src, dst);
}

TotalComplexQ build_total_delta_chi(int g, int max_total_degree, const std::string& cache_dir) {
  if (max_total_degree < 1) throw parameter_error("build_total_delta_chi: need degree bound >= 1");
  if (g < 0) throw parameter_error("build_total_delta_chi: g >= 0");
  const int D = max_total_degree;
  const int m_min = std::max(1, 3 - 2 * g);

  // reduced hairy classes, indexed by (hairs m, edges k)
  std::map<std::pair<int, int>, std::vector<GraphClass>> blocks;
  for (int m = m_min; m <= D; ++m) {
    const int ke = std::min(3 * g - 3 + m, D - m);
    if (ke < 0) continue;
    auto basis = enumerate_cached(g, m, Mode::hairy, ke, cache_dir);
    for (int k = 0; k <= ke && k < static_cast<int>(basis.by_edges.size()); ++k) {
      auto classes = surviving_classes(basis.by_edges[k]);
      classes.erase(std::remove_if(classes.begin(), classes.end(),
                                   [](const GraphClass& c) { return !is_reduced_class(c); }),
                    classes.end());
      if (!classes.empty()) blocks[{m, k}] = std::move(classes);
    }
  }

  TotalComplexQ out;
  out.g = g;
  out.max_total_degree = D;
  auto& cx = out.complex;
  cx.kind = "total";
  cx.g = g;
  cx.n = -1;
  cx.mode = Mode::hairy;
  cx.grading = "edges+hairs";
  cx.unreliable_degrees.insert(D);

  // degree blocks: per total degree, (m,k) blocks in ascending m
  struct Placed {
    int m, k, offset;
  };
  std::map<int, std::vector<Placed>> layout;
  const int t_min = m_min;
  for (int t = t_min; t <= D; ++t) {
    DegreeBlock block;
    block.degree = t;
    auto& places = layout[t];
    for (int m = m_min; m <= t; ++m) {
      const int k = t - m;
      auto it = blocks.find({m, k});
      if (it == blocks.end()) continue;
      places.push_back({m, k, static_cast<int>(block.classes.size())});
      block.classes.insert(block.classes.end(), it->second.begin(), it->second.end());
    }
    cx.degrees.push_back(std::move(block));
  }

  auto find_place = [&](int t, int m) -> const Placed* {
    auto it = layout.find(t);
    if (it == layout.end()) return nullptr;
    for (const auto& p : it->second)
      if (p.m == m) return &p;
    return nullptr;
  };

  for (int t = t_min; t + 1 <= D; ++t) {
    const auto& src_block = cx.degrees[t - t_min];
    const auto& dst_block = cx.degrees[t + 1 - t_min];
    SparseMatrixZ d(static_cast<int>(dst_block.classes.size()),
                    static_cast<int>(src_block.classes.size()));
    // delta: (m, k) -> (m, k+1), row-driven per destination place
    for (const auto& dp : layout[t + 1]) {
      const auto* sp = find_place(t, dp.m);
      if (!sp) continue;
      const auto& src = blocks[{sp->m, sp->k}];
      const auto& dst = blocks[{dp.m, dp.k}];
      auto block = contraction_differential(src, dst, Mode::hairy);
      for (int r = 0; r < block.rows(); ++r)
        for (const auto& [c, v] : block.row(r)) d.add(dp.offset + r, sp->offset + c, v);
    }
    // chi: (m, k) -> (m+1, k), column-driven per source place
    for (const auto& sp : layout[t]) {
      const auto* dp = find_place(t + 1, sp.m + 1);
      if (!dp) continue;
      const auto& src = blocks[{sp.m, sp.k}];
      const auto& dst = blocks[{dp->m, dp->k}];
      std::vector<std::vector<std::pair<int, int>>> col_entries(src.size());
      parallel_for(src.size(), [&](std::size_t c) {
        const auto& graph = src[c].rep;
        const int base_sign = ((graph.num_edges() + graph.num_hairs()) % 2) ? -1 : 1;
        for (Vertex v = 0; v < graph.num_vertices(); ++v) {
          auto grown = add_hair(graph, v);
          auto a = analyze(grown, Mode::hairy);
          auto it = std::lower_bound(
              dst.begin(), dst.end(), a.key,
              [](const GraphClass& cls, const CanonicalKey& k2) { return cls.key < k2; });
          if (it == dst.end() || it->key != a.key) continue;
          const int sign = base_sign * iso_sign(Mode::hairy, grown, a.rep, a.to_rep);
          col_entries[c].emplace_back(static_cast<int>(it - dst.begin()), sign);
        }
      });
      for (std::size_t c = 0; c < col_entries.size(); ++c)
        for (auto [r, v] : col_entries[c]) d.add(dp->offset + r, sp->offset + static_cast<int>(c), v);
    }
    d.finalize();
    cx.diff.push_back(std::move(d));
  }
  return out;
}

namespace {

struct Partition {
  std::vector<int> parts;  // descending
  long class_size = 0;
  int sign = 1;
};

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      Partition p;
      p.parts = cur;
      out.push_back(p);
      return;
    }
    for (int next = std::min(rest, maxpart); next >= 1; --next) {
      cur.push_back(next);
      self(self, rest - next, next);
      cur.pop_back();
    }
  };
  rec(rec, n, n);

  long nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  for (auto& p : out) {
    std::map<int, int> mult;
    for (int part : p.parts) mult[part]++;
    long denom = 1;
    for (auto [j, m] : mult) {
      for (int i = 0; i < m; ++i) denom *= j;
      for (int i = 2; i <= m; ++i) denom *= i;
    }
    p.class_size = nfact / denom;
    p.sign = ((n - static_cast<int>(p.parts.size())) % 2) ? -1 : 1;
  }
  return out;
}

// label permutation with the given cycle type on 1..n
std::vector<int> cycle_type_permutation(int n, const std::vector<int>& parts) {
  std::vector<int> sigma(n + 1);
  int next = 1;
  for (int part : parts) {
    for (int i = 0; i < part; ++i)
      sigma[next + i] = (i + 1 == part) ? next : next + i + 1;
    next += part;
  }
  return sigma;
}

}  // namespace

AntiinvariantsResult antiinvariants_dim(const GraphBasis& labeled, const GraphBasis& hairy,
                                        int degree) {
  if (labeled.mode != Mode::labeled || hairy.mode != Mode::hairy)
    throw parameter_error("antiinvariants_dim: need a labeled and a hairy basis");
  const int n = labeled.n;
  AntiinvariantsResult res;

  if (degree >= 0 && degree < static_cast<int>(hairy.by_edges.size()))
    res.hairy_surviving =
        static_cast<long>(surviving_classes(hairy.by_edges[degree]).size());

  std::vector<GraphClass> classes;
  if (degree >= 0 && degree < static_cast<int>(labeled.by_edges.size()))
    classes = surviving_classes(labeled.by_edges[degree]);

  mpq_class dim = 0;
  long nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  for (const auto& p : partitions_of(n)) {
    const auto sigma = cycle_type_permutation(n, p.parts);
    long character = 0;
    for (const auto& cls : classes) {
      const auto& rep = cls.rep;
      std::vector<int> labels(rep.num_half_edges(), kNoLabel);
      for (HalfEdge h : rep.hairs()) labels[h] = sigma[rep.label(h)];
      StableGraph relabeled(rep.weights(), rep.vertex_map(), rep.pairing(), labels);
      auto a = analyze(relabeled, Mode::labeled);
      if (a.key != cls.key) continue;
      character += iso_sign_edges(relabeled, a.rep, a.to_rep);
    }
    dim += mpq_class(p.class_size * p.sign * character, nfact);
  }
  mpq_class canonical_dim = dim;
  canonical_dim.canonicalize();
  if (canonical_dim.get_den() != 1 || canonical_dim < 0)
    throw consistency_error("antiinvariants_dim: non-integral character sum");
  res.labeled_sign_isotypic = static_cast<long>(canonical_dim.get_num().get_si());

  if (res.labeled_sign_isotypic != res.hairy_surviving)
    throw consistency_error("antiinvariants_dim: labeled/hairy routes disagree");
  return res;
}

AntiinvariantsResult antiinvariants_dim(int g, int n, int degree, const std::string& cache_dir) {
  auto labeled = enumerate_cached(g, n, Mode::labeled, -1, cache_dir);
  auto hairy = enumerate_cached(g, n, Mode::hairy, -1, cache_dir);
  return antiinvariants_dim(labeled, hairy, degree);
}

BettiReport betti_table(const ChainComplexQ& c, const RankOptions& opts) {
  c.verify_d2();
  BettiReport report;
  report.certified = true;
  report.unreliable_degrees = c.unreliable_degrees;

  std::vector<RankResult> ranks(c.diff.size());
  for (std::size_t i = 0; i < c.diff.size(); ++i) {
    ranks[i] = rank_exact(c.diff[i], opts);
    if (!ranks[i].certified) report.certified = false;
  }

  for (std::size_t i = 0; i < c.degrees.size(); ++i) {
    const int deg = c.degrees[i].degree;
    const long dim = static_cast<long>(c.degrees[i].classes.size());
    const long rank_out = i < ranks.size() ? ranks[i].rank : 0;
    const long rank_in = i > 0 ? ranks[i - 1].rank : 0;
    report.dims[deg] = dim;
    if (i < ranks.size()) report.ranks[deg] = rank_out;
    report.betti[deg] = dim - rank_out - rank_in;
  }
  for (auto [deg, dim] : report.dims) {
    const long sign = (deg % 2 == 0) ? 1 : -1;
    report.euler_dims += sign * dim;
    report.euler_betti += sign * report.betti[deg];
  }
  if (report.euler_dims != report.euler_betti)
    throw consistency_error("betti_table: Euler characteristic routes disagree");
  return report;
}

long euler_characteristic(const ChainComplexQ& c) {
  long chi = 0;
  for (const auto& block : c.degrees)
    chi += ((block.degree % 2 == 0) ? 1 : -1) * static_cast<long>(block.classes.size());
  return chi;
}

}  // namespace gkc
