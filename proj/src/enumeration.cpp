#include "gkc/enumeration.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "gkc/errors.hpp"
#include "gkc/parallel.hpp"

namespace gkc {

std::size_t GraphBasis::total_classes() const {
  std::size_t t = 0;
  for (const auto& level : by_edges) t += level.size();
  return t;
}

const GraphClass* GraphBasis::find(int edges, const CanonicalKey& key) const {
  const int i = index_of(edges, key);
  return i < 0 ? nullptr : &by_edges[edges][i];
}

int GraphBasis::index_of(int edges, const CanonicalKey& key) const {
  if (edges < 0 || edges >= static_cast<int>(by_edges.size())) return -1;
  const auto& level = by_edges[edges];
  auto it = std::lower_bound(level.begin(), level.end(), key,
                             [](const GraphClass& c, const CanonicalKey& k) { return c.key < k; });
  if (it == level.end() || it->key != key) return -1;
  return static_cast<int>(it - level.begin());
}

namespace {

// All one-edge expansions of `g` (inverses of contract_edge): split a vertex
// distributing its incident half-edges and weight over the two ends of a new
// edge, or trade one unit of weight for a loop.
void expansions(const StableGraph& g, std::vector<StableGraph>& out) {
  out.clear();
  const int H = g.num_half_edges();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto& inc = g.incident(v);
    const int deg = static_cast<int>(inc.size());
    const int w = g.weight(v);

    // weight-to-loop expansion
    if (w >= 1) {
      auto weights = g.weights();
      weights[v] -= 1;
      auto vertex_of = g.vertex_map();
      auto pairing = g.pairing();
      auto labels = g.labels();
      labels.resize(H, kNoLabel);
      vertex_of.push_back(v);
      vertex_of.push_back(v);
      pairing.push_back(H + 1);
      pairing.push_back(H);
      labels.push_back(kNoLabel);
      labels.push_back(kNoLabel);
      out.emplace_back(std::move(weights), std::move(vertex_of), std::move(pairing),
                       std::move(labels));
    }

    // vertex splittings: S stays at v, the rest moves to a new vertex joined
    // to v by a new edge. (w1,S) and its mirror give isomorphic graphs, so
    // mirrors are skipped: w1 <= w2, and for w1 == w2 the first incident
    // half-edge must stay (or deg == 0).
    for (int w1 = 0; 2 * w1 <= w; ++w1) {
      const int w2 = w - w1;
      for (std::uint32_t mask = 0; mask < (1u << deg); ++mask) {
        if (w1 == w2 && deg > 0 && !(mask & 1u)) continue;
        const int k1 = __builtin_popcount(mask);
        const int k2 = deg - k1;
        if (2 * w1 - 2 + k1 + 1 <= 0 || 2 * w2 - 2 + k2 + 1 <= 0) continue;

        auto weights = g.weights();
        weights[v] = w1;
        weights.push_back(w2);
        const Vertex nv = static_cast<Vertex>(weights.size()) - 1;
        auto vertex_of = g.vertex_map();
        auto pairing = g.pairing();
        auto labels = g.labels();
        labels.resize(H, kNoLabel);
        for (int t = 0; t < deg; ++t)
          if (!(mask & (1u << t))) vertex_of[inc[t]] = nv;
        vertex_of.push_back(v);
        vertex_of.push_back(nv);
        pairing.push_back(H + 1);
        pairing.push_back(H);
        labels.push_back(kNoLabel);
        labels.push_back(kNoLabel);
        out.emplace_back(std::move(weights), std::move(vertex_of), std::move(pairing),
                         std::move(labels));
      }
    }
  }
}

template <bool Parallel>
GraphBasis enumerate_impl(int g, int n, Mode mode, int max_edges) {
  if (2 * g - 2 + n <= 0) throw parameter_error("enumerate_graphs: need 2g-2+n > 0");
  if (max_edges < 0) max_edges = 3 * g - 3 + n;

  GraphBasis basis;
  basis.g = g;
  basis.n = n;
  basis.mode = mode;
  basis.max_edges = max_edges;
  basis.by_edges.assign(max_edges + 1, {});

  {
    auto a = analyze(corolla(g, n, mode == Mode::labeled), mode);
    basis.by_edges[0].push_back(GraphClass{a.rep, a.key, a.aut});
  }

  for (int k = 0; k < max_edges; ++k) {
    const auto& level = basis.by_edges[k];
    std::map<CanonicalKey, GraphClass> next;
    std::mutex merge_mutex;
    auto work = [&](std::size_t i) {
      std::vector<StableGraph> cand;
      expansions(level[i].rep, cand);
      std::vector<std::pair<CanonicalKey, GraphClass>> found;
      for (const auto& c : cand) {
        auto a = analyze(c, mode);
        found.emplace_back(a.key, GraphClass{a.rep, a.key, a.aut});
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      for (auto& [key, cls] : found) next.emplace(key, std::move(cls));
    };
    if constexpr (Parallel)
      parallel_for(level.size(), work);
    else
      serial_for(level.size(), work);
    auto& out = basis.by_edges[k + 1];
    out.reserve(next.size());
    for (auto& [key, cls] : next) out.push_back(std::move(cls));
    // map iteration is already key-sorted
  }
  return basis;
}

}  // namespace

GraphBasis enumerate_graphs(int g, int n, Mode mode, int max_edges) {
  return enumerate_impl<true>(g, n, mode, max_edges);
}

GraphBasis enumerate_graphs_serial(int g, int n, Mode mode, int max_edges) {
  return enumerate_impl<false>(g, n, mode, max_edges);
}

mpq_class top_degree_mass(const GraphBasis& basis) {
  mpq_class sum = 0;
  if (basis.by_edges.empty()) return sum;
  for (const auto& cls : basis.by_edges.back())
    sum += mpq_class(1, static_cast<unsigned long>(cls.aut.order));
  return sum;
}

StrataPoset strata_poset(const GraphBasis& basis) {
  StrataPoset poset;
  poset.basis = &basis;
  for (int k = 1; k < static_cast<int>(basis.by_edges.size()); ++k) {
    for (int i = 0; i < static_cast<int>(basis.by_edges[k].size()); ++i) {
      const auto& cls = basis.by_edges[k][i];
      std::map<int, int> mult;
      for (int e = 0; e < cls.rep.num_edges(); ++e) {
        auto contracted = contract_edge(cls.rep, e);
        const auto key = canonical_key(contracted, basis.mode);
        const int j = basis.index_of(k - 1, key);
        if (j < 0) throw consistency_error("strata_poset: contraction left the basis");
        mult[j]++;
      }
      auto& covers = poset.covers[{k, i}];
      for (auto [j, m] : mult) covers.push_back({{k - 1, j}, m});
    }
  }
  return poset;
}

}  // namespace gkc
