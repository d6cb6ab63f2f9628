#include "gkc/graph.hpp"

#include <algorithm>
#include <numeric>

#include "gkc/errors.hpp"

namespace gkc {

StableGraph::StableGraph(std::vector<int> weights, std::vector<Vertex> vertex_of,
                         std::vector<HalfEdge> pairing, std::vector<int> labels)
    : weights_(std::move(weights)),
      vertex_of_(std::move(vertex_of)),
      pairing_(std::move(pairing)),
      labels_(std::move(labels)) {
  const int h = num_half_edges();
  if (static_cast<int>(pairing_.size()) != h)
    throw structural_error("pairing/vertex_of size mismatch");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != h)
    throw structural_error("labels size mismatch");
  for (HalfEdge a = 0; a < h; ++a) {
    if (vertex_of_[a] < 0 || vertex_of_[a] >= num_vertices())
      throw structural_error("half-edge attached to missing vertex");
    const HalfEdge b = pairing_[a];
    if (b == kNoPartner) continue;
    if (b < 0 || b >= h || b == a || pairing_[b] != a)
      throw structural_error("pairing is not a fixed-point-free involution");
  }
  for (int w : weights_)
    if (w < 0) throw structural_error("negative vertex weight");

  incident_.resize(num_vertices());
  for (HalfEdge a = 0; a < h; ++a) {
    incident_[vertex_of_[a]].push_back(a);
    if (pairing_[a] == kNoPartner)
      hairs_.push_back(a);
    else if (a < pairing_[a])
      edges_.emplace_back(a, pairing_[a]);
  }
}

int StableGraph::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0);
}

Vertex GraphBuilder::add_vertex(int weight) {
  weights_.push_back(weight);
  return static_cast<Vertex>(weights_.size()) - 1;
}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
  const HalfEdge a = static_cast<HalfEdge>(vertex_of_.size());
  vertex_of_.push_back(u);
  vertex_of_.push_back(v);
  pairing_.push_back(a + 1);
  pairing_.push_back(a);
  labels_.push_back(kNoLabel);
  labels_.push_back(kNoLabel);
}

void GraphBuilder::add_hair(Vertex v, int label) {
  vertex_of_.push_back(v);
  pairing_.push_back(kNoPartner);
  labels_.push_back(label);
}

StableGraph GraphBuilder::build() const {
  return StableGraph(weights_, vertex_of_, pairing_, labels_);
}

bool is_connected(const StableGraph& g) {
  const int n = g.num_vertices();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (HalfEdge h : g.incident(v)) {
      const HalfEdge p = g.partner(h);
      if (p == kNoPartner) continue;
      const Vertex u = g.vertex_of(p);
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n;
}

bool is_stable(const StableGraph& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (2 * g.weight(v) - 2 + g.n_v(v) <= 0) return false;
  return true;
}

int genus(const StableGraph& g) {
  if (!is_connected(g)) throw structural_error("genus of a disconnected graph");
  const int b1 = g.num_edges() - g.num_vertices() + 1;
  return b1 + g.total_weight();
}

namespace {

// Renumber half-edges after deleting `removed` (sorted), keeping order.
std::vector<int> compaction_map(int old_count, const std::vector<HalfEdge>& removed) {
  std::vector<int> map(old_count, 0);
  std::size_t r = 0;
  int next = 0;
  for (HalfEdge h = 0; h < old_count; ++h) {
    if (r < removed.size() && removed[r] == h) {
      map[h] = -1;
      ++r;
    } else {
      map[h] = next++;
    }
  }
  return map;
}

}  // namespace

StableGraph contract_edge(const StableGraph& g, int edge_slot) {
  if (edge_slot < 0 || edge_slot >= g.num_edges())
    throw structural_error("contract_edge: no such edge");
  const auto [a, b] = g.edges()[edge_slot];
  const Vertex u = g.vertex_of(a);
  const Vertex v = g.vertex_of(b);

  std::vector<int> weights;
  std::vector<int> vmap(g.num_vertices());  // old vertex -> new vertex
  if (u == v) {
    weights = g.weights();
    weights[u] += 1;
    std::iota(vmap.begin(), vmap.end(), 0);
  } else {
    const Vertex keep = std::min(u, v), drop = std::max(u, v);
    weights.reserve(g.num_vertices() - 1);
    for (Vertex w = 0; w < g.num_vertices(); ++w) {
      if (w == drop) continue;
      weights.push_back(g.weight(w));
      vmap[w] = static_cast<int>(weights.size()) - 1;
    }
    vmap[drop] = vmap[keep];
    weights[vmap[keep]] += g.weight(drop);
  }

  const auto hmap = compaction_map(g.num_half_edges(), {std::min(a, b), std::max(a, b)});
  std::vector<Vertex> vertex_of(g.num_half_edges() - 2);
  std::vector<HalfEdge> pairing(g.num_half_edges() - 2);
  std::vector<int> labels(g.num_half_edges() - 2, kNoLabel);
  for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
    if (hmap[h] < 0) continue;
    vertex_of[hmap[h]] = vmap[g.vertex_of(h)];
    pairing[hmap[h]] = g.partner(h) == kNoPartner ? kNoPartner : hmap[g.partner(h)];
    labels[hmap[h]] = g.label(h);
  }
  StableGraph out(std::move(weights), std::move(vertex_of), std::move(pairing),
                  std::move(labels));
  if (!is_stable(out)) throw move_forbidden_error("contraction yields an unstable graph");
  return out;
}

StableGraph add_hair(const StableGraph& g, Vertex v, int label) {
  if (v < 0 || v >= g.num_vertices()) throw structural_error("add_hair: no such vertex");
  auto vertex_of = g.vertex_map();
  auto pairing = g.pairing();
  auto labels = g.labels();
  labels.resize(vertex_of.size(), kNoLabel);
  vertex_of.push_back(v);
  pairing.push_back(kNoPartner);
  labels.push_back(label);
  return StableGraph(g.weights(), std::move(vertex_of), std::move(pairing), std::move(labels));
}

StableGraph forget_hair(const StableGraph& g, int hair_slot) {
  if (hair_slot < 0 || hair_slot >= g.num_hairs())
    throw structural_error("forget_hair: no such hair");
  const HalfEdge h = g.hairs()[hair_slot];
  const auto hmap = compaction_map(g.num_half_edges(), {h});
  std::vector<Vertex> vertex_of(g.num_half_edges() - 1);
  std::vector<HalfEdge> pairing(g.num_half_edges() - 1);
  std::vector<int> labels(g.num_half_edges() - 1, kNoLabel);
  for (HalfEdge a = 0; a < g.num_half_edges(); ++a) {
    if (hmap[a] < 0) continue;
    vertex_of[hmap[a]] = g.vertex_of(a);
    pairing[hmap[a]] = g.partner(a) == kNoPartner ? kNoPartner : hmap[g.partner(a)];
    labels[hmap[a]] = g.label(a);
  }
  StableGraph out(g.weights(), std::move(vertex_of), std::move(pairing), std::move(labels));
  if (!is_stable(out)) throw move_forbidden_error("forgetting this hair destabilizes its vertex");
  return out;
}

StableGraph corolla(int g, int n, bool labeled) {
  if (2 * g - 2 + n <= 0) throw parameter_error("corolla: 2g-2+n must be positive");
  GraphBuilder b;
  const Vertex v = b.add_vertex(g);
  for (int i = 1; i <= n; ++i) b.add_hair(v, labeled ? i : kNoLabel);
  return b.build();
}

}  // namespace gkc
