#include "gkc/canonical.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <tuple>

#include "gkc/errors.hpp"

namespace gkc {

const char* mode_name(Mode m) { return m == Mode::labeled ? "labeled" : "hairy"; }

namespace {

// Vertex-level view of the multigraph: weights, loop counts, edge
// multiplicities, and hair data (sorted label lists in labeled mode, bare
// counts in hairy mode).
struct VertexView {
  int v = 0;
  int weight = 0;
  int loops = 0;
  std::vector<int> hair_labels;  // sorted; empty in hairy mode
  int hair_count = 0;
};

struct MultiView {
  int n = 0;
  std::vector<VertexView> vx;
  std::vector<std::vector<int>> mult;  // n x n, loops excluded

  explicit MultiView(const StableGraph& g, Mode mode) : n(g.num_vertices()) {
    vx.resize(n);
    mult.assign(n, std::vector<int>(n, 0));
    for (int v = 0; v < n; ++v) {
      vx[v].v = v;
      vx[v].weight = g.weight(v);
    }
    for (auto [a, b] : g.edges()) {
      const int u = g.vertex_of(a), w = g.vertex_of(b);
      if (u == w)
        vx[u].loops++;
      else {
        mult[u][w]++;
        mult[w][u]++;
      }
    }
    for (HalfEdge h : g.hairs()) {
      const int v = g.vertex_of(h);
      vx[v].hair_count++;
      if (mode == Mode::labeled) vx[v].hair_labels.push_back(g.label(h));
    }
    for (auto& x : vx) std::sort(x.hair_labels.begin(), x.hair_labels.end());
  }
};

// Color refinement on the vertex view. Colors are ranks of invariant
// signatures, so they are relabeling-invariant; cells are listed in
// signature order.
struct Refiner {
  const MultiView& mv;
  std::vector<int> color;

  explicit Refiner(const MultiView& m) : mv(m), color(m.n, 0) {
    using Sig0 = std::tuple<int, int, int, std::vector<int>>;
    std::vector<Sig0> sig(mv.n);
    for (int v = 0; v < mv.n; ++v)
      sig[v] = {mv.vx[v].weight, mv.vx[v].loops, mv.vx[v].hair_count, mv.vx[v].hair_labels};
    assign_ranks(sig);
    refine();
  }

  template <typename Sig>
  void assign_ranks(const std::vector<Sig>& sig) {
    std::vector<Sig> sorted(sig);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < mv.n; ++v)
      color[v] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
  }

  void refine() {
    using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
    for (;;) {
      std::vector<Sig> sig(mv.n);
      for (int v = 0; v < mv.n; ++v) {
        std::vector<std::pair<int, int>> nb;
        for (int u = 0; u < mv.n; ++u)
          if (mv.mult[v][u] > 0) nb.emplace_back(color[u], mv.mult[v][u]);
        std::sort(nb.begin(), nb.end());
        sig[v] = {color[v], std::move(nb)};
      }
      const auto before = color;
      assign_ranks(sig);
      if (color == before) break;
    }
  }

  // Individualize v: give it a color strictly before its current cell.
  void individualize(int v) {
    for (int u = 0; u < mv.n; ++u)
      color[u] = 2 * color[u] + (u == v ? 0 : 1);
    std::vector<int> flat(color);
    assign_ranks(flat);
    refine();
  }
};

void append_int(std::string& s, int x) {
  s.push_back(static_cast<char>((x >> 8) & 0xff));
  s.push_back(static_cast<char>(x & 0xff));
}

// Code of a discrete ordering: uniquely encodes the weighted multigraph with
// hair data, read off in position order.
std::string code_of(const MultiView& mv, const std::vector<int>& pos, Mode mode) {
  // pos[v] = position of vertex v; invert.
  std::vector<int> at(mv.n);
  for (int v = 0; v < mv.n; ++v) at[pos[v]] = v;
  std::string code;
  append_int(code, mv.n);
  for (int i = 0; i < mv.n; ++i) {
    const auto& x = mv.vx[at[i]];
    append_int(code, x.weight);
    append_int(code, x.loops);
    append_int(code, x.hair_count);
    if (mode == Mode::labeled) {
      for (int l : x.hair_labels) append_int(code, l);
    }
    for (int j = 0; j < i; ++j) append_int(code, mv.mult[at[i]][at[j]]);
  }
  return code;
}

struct Search {
  const MultiView& mv;
  Mode mode;
  std::string best;
  std::vector<std::vector<int>> best_orders;  // pos arrays achieving best

  Search(const MultiView& m, Mode md) : mv(m), mode(md) {}

  void run() { descend(Refiner(mv)); }

  void descend(const Refiner& r) {
    // cells in color order
    std::vector<std::vector<int>> cells;
    {
      const int cmax = *std::max_element(r.color.begin(), r.color.end());
      cells.assign(cmax + 1, {});
      for (int v = 0; v < mv.n; ++v) cells[r.color[v]].push_back(v);
    }
    int branch_cell = -1;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].size() > 1) {
        branch_cell = static_cast<int>(c);
        break;
      }
    if (branch_cell < 0) {
      std::vector<int> pos(mv.n);
      for (int v = 0; v < mv.n; ++v) pos[v] = r.color[v];
      auto code = code_of(mv, pos, mode);
      if (best.empty() || code < best) {
        best = std::move(code);
        best_orders.assign(1, pos);
      } else if (code == best) {
        best_orders.push_back(pos);
      }
      return;
    }
    for (int v : cells[branch_cell]) {
      Refiner child = r;
      child.individualize(v);
      descend(child);
    }
  }
};

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

int perm_sign(const std::vector<int>& p) {
  int sign = 1;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace

int iso_sign_edges(const StableGraph& a, const StableGraph& b, const std::vector<int>& hmap) {
  std::vector<int> slot_of_b(b.num_half_edges(), -1);
  for (int i = 0; i < b.num_edges(); ++i) {
    slot_of_b[b.edges()[i].first] = i;
    slot_of_b[b.edges()[i].second] = i;
  }
  std::vector<int> p(a.num_edges());
  for (int i = 0; i < a.num_edges(); ++i) {
    const int s = slot_of_b[hmap[a.edges()[i].first]];
    if (s < 0) throw structural_error("iso_sign_edges: map does not send edges to edges");
    p[i] = s;
  }
  return perm_sign(p);
}

int iso_sign_hairs(const StableGraph& a, const StableGraph& b, const std::vector<int>& hmap) {
  std::vector<int> slot_of_b(b.num_half_edges(), -1);
  for (int i = 0; i < b.num_hairs(); ++i) slot_of_b[b.hairs()[i]] = i;
  std::vector<int> p(a.num_hairs());
  for (int i = 0; i < a.num_hairs(); ++i) {
    const int s = slot_of_b[hmap[a.hairs()[i]]];
    if (s < 0) throw structural_error("iso_sign_hairs: map does not send hairs to hairs");
    p[i] = s;
  }
  return perm_sign(p);
}

int iso_sign(Mode mode, const StableGraph& a, const StableGraph& b,
             const std::vector<int>& hmap) {
  int s = iso_sign_edges(a, b, hmap);
  if (mode == Mode::hairy) s *= iso_sign_hairs(a, b, hmap);
  return s;
}

namespace {

// Canonical representative from a winning vertex order. Half-edges are laid
// out edge by edge in lexicographic (i,j) position order (loops first at
// (i,i)), then hairs grouped by vertex position, labeled hairs sorted by
// label. The construction depends only on the code, so isomorphic inputs
// share one representative.
struct RepLayout {
  StableGraph rep;
  // canonical edge layout bookkeeping for building input->rep maps
  // bucket (i<=j) -> list of first-half-edge ids in rep, in order
  std::map<std::pair<int, int>, std::vector<int>> edge_bucket;
  // vertex position -> hair half-edge ids in rep, in order
  std::vector<std::vector<int>> hair_bucket;
};

RepLayout build_rep(const MultiView& mv, const std::vector<int>& pos, Mode mode) {
  const int n = mv.n;
  std::vector<int> at(n);
  for (int v = 0; v < n; ++v) at[pos[v]] = v;

  std::vector<int> weights(n);
  for (int i = 0; i < n; ++i) weights[i] = mv.vx[at[i]].weight;

  RepLayout out;
  std::vector<Vertex> vertex_of;
  std::vector<HalfEdge> pairing;
  std::vector<int> labels;
  auto new_half = [&](Vertex v, int lbl) {
    vertex_of.push_back(v);
    pairing.push_back(kNoPartner);
    labels.push_back(lbl);
    return static_cast<HalfEdge>(vertex_of.size()) - 1;
  };
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < mv.vx[at[i]].loops; ++l) {
      const HalfEdge a = new_half(i, kNoLabel);
      const HalfEdge b = new_half(i, kNoLabel);
      pairing[a] = b;
      pairing[b] = a;
      out.edge_bucket[{i, i}].push_back(a);
    }
    for (int j = i + 1; j < n; ++j) {
      for (int m = 0; m < mv.mult[at[i]][at[j]]; ++m) {
        const HalfEdge a = new_half(i, kNoLabel);
        const HalfEdge b = new_half(j, kNoLabel);
        pairing[a] = b;
        pairing[b] = a;
        out.edge_bucket[{i, j}].push_back(a);
      }
    }
  }
  out.hair_bucket.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& x = mv.vx[at[i]];
    if (mode == Mode::labeled) {
      for (int l : x.hair_labels) out.hair_bucket[i].push_back(new_half(i, l));
    } else {
      for (int c = 0; c < x.hair_count; ++c) out.hair_bucket[i].push_back(new_half(i, kNoLabel));
    }
  }
  out.rep = StableGraph(std::move(weights), std::move(vertex_of), std::move(pairing),
                        std::move(labels));
  return out;
}

// Half-edge map input -> rep induced by the vertex order. Parallel edges in
// a bucket are matched in input slot order; such choices differ by local
// automorphisms, which only matters for orientation-reversing classes.
std::vector<int> build_half_edge_map(const StableGraph& g, const RepLayout& layout,
                                     const std::vector<int>& pos, Mode mode) {
  std::vector<int> hmap(g.num_half_edges(), -1);
  std::map<std::pair<int, int>, int> used;
  for (auto [a, b] : g.edges()) {
    int i = pos[g.vertex_of(a)];
    int j = pos[g.vertex_of(b)];
    HalfEdge first = a, second = b;
    if (i > j) {
      std::swap(i, j);
      std::swap(first, second);
    }
    const auto& bucket = layout.edge_bucket.at({i, j});
    const int t = used[{i, j}]++;
    const HalfEdge ra = bucket[t];
    const HalfEdge rb = layout.rep.partner(ra);
    hmap[first] = ra;
    hmap[second] = rb;
  }
  // hairs per vertex: labeled matches by label, hairy by incidence order
  std::vector<std::vector<char>> taken(layout.hair_bucket.size());
  for (std::size_t i = 0; i < layout.hair_bucket.size(); ++i)
    taken[i].assign(layout.hair_bucket[i].size(), 0);
  for (HalfEdge h : g.hairs()) {
    const int i = pos[g.vertex_of(h)];
    const auto& bucket = layout.hair_bucket[i];
    HalfEdge target = -1;
    for (std::size_t t = 0; t < bucket.size(); ++t) {
      if (taken[i][t]) continue;
      if (mode == Mode::labeled && layout.rep.label(bucket[t]) != g.label(h)) continue;
      target = bucket[t];
      taken[i][t] = 1;
      break;
    }
    if (target < 0) throw structural_error("hair matching failed");
    hmap[h] = target;
  }
  return hmap;
}

// Extend a vertex-level automorphism of the representative to half-edges.
std::vector<int> extend_vertex_auto(const StableGraph& rep, const RepLayout& layout,
                                    const std::vector<int>& vperm, Mode mode) {
  std::vector<int> hmap(rep.num_half_edges(), -1);
  std::map<std::pair<int, int>, int> used;
  for (auto [a, b] : rep.edges()) {
    int i = vperm[rep.vertex_of(a)];
    int j = vperm[rep.vertex_of(b)];
    HalfEdge first = a, second = b;
    if (i > j) {
      std::swap(i, j);
      std::swap(first, second);
    }
    const auto& bucket = layout.edge_bucket.at({i, j});
    const int t = used[{i, j}]++;
    hmap[first] = bucket[t];
    hmap[second] = rep.partner(bucket[t]);
  }
  std::vector<std::vector<char>> taken(layout.hair_bucket.size());
  for (std::size_t i = 0; i < layout.hair_bucket.size(); ++i)
    taken[i].assign(layout.hair_bucket[i].size(), 0);
  for (HalfEdge h : rep.hairs()) {
    const int i = vperm[rep.vertex_of(h)];
    const auto& bucket = layout.hair_bucket[i];
    HalfEdge target = -1;
    for (std::size_t t = 0; t < bucket.size(); ++t) {
      if (taken[i][t]) continue;
      if (mode == Mode::labeled && rep.label(bucket[t]) != rep.label(h)) continue;
      target = bucket[t];
      taken[i][t] = 1;
      break;
    }
    if (target < 0) throw structural_error("hair matching failed");
    hmap[h] = target;
  }
  return hmap;
}

}  // namespace

GraphAnalysis analyze(const StableGraph& g, Mode mode) {
  if (!is_connected(g)) throw structural_error("analyze: disconnected graph");
  MultiView mv(g, mode);
  Search search(mv, mode);
  search.run();

  const auto& pos0 = search.best_orders.front();
  RepLayout layout = build_rep(mv, pos0, mode);

  GraphAnalysis out;
  out.key = search.best;
  out.key.push_back(mode == Mode::labeled ? 'L' : 'H');
  out.rep = layout.rep;
  out.to_rep = build_half_edge_map(g, layout, pos0, mode);

  // Automorphisms. Vertex-level group = {pos0^-1 . pos : pos achieving the
  // best code}; local kernel = parallel swaps, loop moves, hair swaps.
  AutData aut;
  std::vector<int> at0(mv.n);
  for (int v = 0; v < mv.n; ++v) at0[pos0[v]] = v;

  std::uint64_t local = 1;
  const StableGraph& rep = out.rep;
  auto identity_perm = [&rep]() {
    std::vector<int> p(rep.num_half_edges());
    std::iota(p.begin(), p.end(), 0);
    return p;
  };
  // local generators on the representative; adjacent transpositions generate
  // the full symmetric group of each parallel bucket
  for (const auto& [bucket, halves] : layout.edge_bucket) {
    const bool loop = bucket.first == bucket.second;
    for (std::size_t t = 0; t + 1 < halves.size(); ++t) {
      auto p = identity_perm();
      std::swap(p[halves[t]], p[halves[t + 1]]);
      std::swap(p[rep.partner(halves[t])], p[rep.partner(halves[t + 1])]);
      aut.generators.push_back(std::move(p));
    }
    local *= factorial(static_cast<int>(halves.size()));
    if (loop) {
      for (HalfEdge h : halves) {
        auto p = identity_perm();
        std::swap(p[h], p[rep.partner(h)]);
        aut.generators.push_back(std::move(p));
      }
      local <<= halves.size();  // independent flips
    }
  }
  if (mode == Mode::hairy) {
    for (const auto& bucket : layout.hair_bucket) {
      for (std::size_t t = 0; t + 1 < bucket.size(); ++t) {
        auto p = identity_perm();
        std::swap(p[bucket[t]], p[bucket[t + 1]]);
        aut.generators.push_back(std::move(p));
      }
      local *= factorial(static_cast<int>(bucket.size()));
    }
  }
  // vertex-level elements as position permutations of the representative
  for (const auto& pos : search.best_orders) {
    std::vector<int> vperm(mv.n);  // rep position -> rep position
    bool identity = true;
    for (int i = 0; i < mv.n; ++i) {
      vperm[i] = pos[at0[i]];
      if (vperm[i] != i) identity = false;
    }
    if (!identity) aut.generators.push_back(extend_vertex_auto(rep, layout, vperm, mode));
  }
  aut.order = local * static_cast<std::uint64_t>(search.best_orders.size());
  for (const auto& p : aut.generators)
    if (iso_sign(mode, rep, rep, p) < 0) {
      aut.orientation_reversing = true;
      break;
    }
  out.aut = std::move(aut);
  return out;
}

CanonicalKey canonical_key(const StableGraph& g, Mode mode) { return analyze(g, mode).key; }

AutData automorphism_group(const StableGraph& g, Mode mode) { return analyze(g, mode).aut; }

bool orientation_reversing(const StableGraph& g, Mode mode) {
  return analyze(g, mode).aut.orientation_reversing;
}

}  // namespace gkc
