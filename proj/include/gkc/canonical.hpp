#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gkc/graph.hpp"

namespace gkc {

// labeled: isomorphisms preserve marking labels pointwise.
// hairy: hairs are unlabeled and may be permuted.
enum class Mode { labeled, hairy };

const char* mode_name(Mode m);

using CanonicalKey = std::string;

struct AutData {
  std::uint64_t order = 1;
  // Half-edge permutations of the canonical representative, generating the
  // automorphism group (vertex-level generators plus local moves: parallel
  // edge swaps, loop swaps, loop flips, hair swaps in hairy mode).
  std::vector<std::vector<int>> generators;
  // True iff some automorphism acts by -1 on det(E) (labeled) resp.
  // det(E) x det(hairs) (hairy). Such classes are zero in the complexes.
  bool orientation_reversing = false;
};

struct GraphAnalysis {
  CanonicalKey key;
  StableGraph rep;           // canonical representative
  std::vector<int> to_rep;   // half-edge map: input -> rep
  AutData aut;               // automorphisms of rep
};

// Canonical form, relabeling, and automorphism data in one pass.
// Isomorphic inputs (within one mode) get identical keys and identical
// representatives. The half-edge map realizes an isomorphism input -> rep
// and is the only sign-transport channel used by the complexes.
GraphAnalysis analyze(const StableGraph& g, Mode mode);

CanonicalKey canonical_key(const StableGraph& g, Mode mode);

AutData automorphism_group(const StableGraph& g, Mode mode);

// True iff some automorphism reverses the orientation line of the class.
bool orientation_reversing(const StableGraph& g, Mode mode);

// Sign of the edge-slot permutation induced by the half-edge isomorphism
// hmap: a -> b (both graphs' edge lists are slot-ordered).
int iso_sign_edges(const StableGraph& a, const StableGraph& b, const std::vector<int>& hmap);
int iso_sign_hairs(const StableGraph& a, const StableGraph& b, const std::vector<int>& hmap);
int iso_sign(Mode mode, const StableGraph& a, const StableGraph& b,
             const std::vector<int>& hmap);

}  // namespace gkc
