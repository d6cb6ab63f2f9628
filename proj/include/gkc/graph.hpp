#pragma once

#include <utility>
#include <vector>

namespace gkc {

using HalfEdge = int;
using Vertex = int;

constexpr HalfEdge kNoPartner = -1;
constexpr int kNoLabel = 0;

// Stable weighted marked graph in half-edge form. Half-edges carry the
// incidence (vertex_of) and a fixed-point-free pairing on a subset of them;
// paired orbits are edges, unpaired half-edges are hairs. Vertices carry a
// nonnegative integer weight. Hairs optionally carry marking labels 1..n
// (labeled mode); label 0 means unlabeled.
//
// Values are immutable after construction; all operations return new graphs.
class StableGraph {
 public:
  StableGraph() = default;

  // weights[v] per vertex; pairing[h] = partner half-edge or kNoPartner;
  // vertex_of[h] per half-edge; labels[h] = marking label or kNoLabel
  // (labels may be empty when the graph has no marked hairs).
  StableGraph(std::vector<int> weights, std::vector<Vertex> vertex_of,
              std::vector<HalfEdge> pairing, std::vector<int> labels = {});

  int num_vertices() const { return static_cast<int>(weights_.size()); }
  int num_half_edges() const { return static_cast<int>(vertex_of_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_hairs() const { return static_cast<int>(hairs_.size()); }

  int weight(Vertex v) const { return weights_[v]; }
  Vertex vertex_of(HalfEdge h) const { return vertex_of_[h]; }
  HalfEdge partner(HalfEdge h) const { return pairing_[h]; }
  bool is_hair(HalfEdge h) const { return pairing_[h] == kNoPartner; }
  int label(HalfEdge h) const { return labels_.empty() ? kNoLabel : labels_[h]; }

  // Edges as (a,b) with a<b, sorted by a. The position of an edge in this
  // list is its orientation slot; all sign transport refers to it.
  const std::vector<std::pair<HalfEdge, HalfEdge>>& edges() const { return edges_; }
  // Hairs in increasing half-edge order; position = hair slot.
  const std::vector<HalfEdge>& hairs() const { return hairs_; }
  // Half-edges attached to v in increasing order (edge halves and hairs).
  const std::vector<HalfEdge>& incident(Vertex v) const { return incident_[v]; }
  // n_v = number of incident half-edges (valence plus marking count).
  int n_v(Vertex v) const { return static_cast<int>(incident_[v].size()); }

  int total_weight() const;
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<Vertex>& vertex_map() const { return vertex_of_; }
  const std::vector<HalfEdge>& pairing() const { return pairing_; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  std::vector<int> weights_;
  std::vector<Vertex> vertex_of_;
  std::vector<HalfEdge> pairing_;
  std::vector<int> labels_;
  std::vector<std::pair<HalfEdge, HalfEdge>> edges_;
  std::vector<HalfEdge> hairs_;
  std::vector<std::vector<HalfEdge>> incident_;
};

// Incremental construction helper.
class GraphBuilder {
 public:
  Vertex add_vertex(int weight);
  void add_edge(Vertex u, Vertex v);
  void add_hair(Vertex v, int label = kNoLabel);
  StableGraph build() const;

 private:
  std::vector<int> weights_;
  std::vector<Vertex> vertex_of_;
  std::vector<HalfEdge> pairing_;
  std::vector<int> labels_;
};

bool is_connected(const StableGraph& g);

// Per-vertex stability 2w(v)-2+n_v > 0.
bool is_stable(const StableGraph& g);

// b1 + total weight. Throws structural_error on disconnected input.
int genus(const StableGraph& g);

// Contract edge `edge_slot` (index into g.edges()). A non-loop edge merges
// its endpoints with weights added; a loop is removed and its vertex weight
// raised by one. Surviving half-edges keep their relative order, so edge and
// hair slots of untouched coordinates are preserved. Genus and markings are
// preserved. Throws move_forbidden_error if the result would be unstable.
StableGraph contract_edge(const StableGraph& g, int edge_slot);

// Attach one new hair at v; the new half-edge gets the largest index and
// thus the last hair slot.
StableGraph add_hair(const StableGraph& g, Vertex v, int label = kNoLabel);

// Remove hair `hair_slot` (index into g.hairs()). No stabilization cascade
// is performed: if the vertex drops below the stability bound this throws
// move_forbidden_error.
StableGraph forget_hair(const StableGraph& g, int hair_slot);

// One-vertex graph of weight g with n hairs labeled 1..n (labeled) or
// unlabeled (hairy). Throws parameter_error unless 2g-2+n > 0.
StableGraph corolla(int g, int n, bool labeled);

}  // namespace gkc
