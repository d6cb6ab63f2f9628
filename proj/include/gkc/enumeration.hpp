#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gkc/canonical.hpp"
#include "gkc/graph.hpp"

namespace gkc {

// One isomorphism class: canonical representative, key, automorphism data.
struct GraphClass {
  StableGraph rep;
  CanonicalKey key;
  AutData aut;

  int num_edges() const { return rep.num_edges(); }
  int num_hairs() const { return rep.num_hairs(); }
};

// All classes for fixed (g, n, mode), grouped by edge count and sorted by
// canonical key within each group. Deterministic regardless of thread count.
struct GraphBasis {
  int g = 0;
  int n = 0;
  Mode mode = Mode::labeled;
  int max_edges = 0;
  std::vector<std::vector<GraphClass>> by_edges;  // index = edge count

  std::size_t total_classes() const;
  const GraphClass* find(int edges, const CanonicalKey& key) const;
  int index_of(int edges, const CanonicalKey& key) const;  // -1 if absent
};

// Exhaustive enumeration by inverse contractions (vertex splittings and
// weight-to-loop expansions) starting from the one-vertex graph, deduplicated
// by canonical key. max_edges defaults to 3g-3+n, the top stratum dimension.
// Throws parameter_error unless 2g-2+n > 0.
GraphBasis enumerate_graphs(int g, int n, Mode mode, int max_edges = -1);

// Serial reference twin of enumerate_graphs; used by tests and the benchmark.
GraphBasis enumerate_graphs_serial(int g, int n, Mode mode, int max_edges = -1);

// Sum of 1/|Aut| over top-degree classes (a logged sanity statistic).
mpq_class top_degree_mass(const GraphBasis& basis);

// Covers Gamma -> Gamma/e with multiplicity = number of edges of Gamma whose
// contraction lands in the target class (counted before sign).
struct StrataPoset {
  const GraphBasis* basis = nullptr;
  // (edge count k, class index) -> list of ((k-1, class index), multiplicity)
  std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, int>>> covers;
};

StrataPoset strata_poset(const GraphBasis& basis);

// --- persistent cache ---------------------------------------------------

// Versioned, checksummed binary records keyed by (g, n, mode, code version).
// A corrupt or missing file makes load_basis return nullopt after reporting
// a checksum_error through the optional error slot.
std::string cache_file_name(int g, int n, Mode mode, int max_edges);
void save_basis(const std::string& path, const GraphBasis& basis);
std::optional<GraphBasis> load_basis(const std::string& path, std::string* error = nullptr);

// Load from `cache_dir` when possible, otherwise enumerate and store.
// Empty cache_dir disables caching. Set via --cache-dir or GKC_CACHE_DIR.
GraphBasis enumerate_cached(int g, int n, Mode mode, int max_edges = -1,
                            const std::string& cache_dir = {});

}  // namespace gkc
