#pragma once

#include <set>
#include <string>
#include <vector>

#include "gkc/enumeration.hpp"
#include "gkc/linalg.hpp"

namespace gkc {

// Basis classes of one cochain degree, key-sorted.
struct DegreeBlock {
  int degree = 0;
  std::vector<GraphClass> classes;
};

// Graded basis of oriented graph classes plus exact integer differentials.
// degrees[i+1].degree == degrees[i].degree + 1 and diff[i] maps degree i to
// i+1 (rows = target classes, cols = source classes).
//
// Orientation convention: every class is the canonical representative with
// its intrinsic edge order (and hair order in hairy mode). The coefficient
// of a one-edge contraction cover is (-1)^(edge slot) times the sign of the
// canonical transport isomorphism; a new hair contributes
// (-1)^(edges + hairs) times the transport sign.
struct ChainComplexQ {
  std::string kind;           // w0gk | hgc | total | ...
  int g = 0;
  int n = 0;
  Mode mode = Mode::labeled;
  std::string grading;        // "edges" or "edges+hairs"
  std::vector<DegreeBlock> degrees;
  std::vector<SparseMatrixZ> diff;  // size = degrees.size()-1 (or 0)
  std::set<int> unreliable_degrees;

  int min_degree() const { return degrees.empty() ? 0 : degrees.front().degree; }
  int max_degree() const { return degrees.empty() ? -1 : degrees.back().degree; }
  long dim(int degree) const;
  std::size_t total_dim() const;

  // d_{k+1} . d_k == 0 for all k; throws consistency_error when violated.
  void verify_d2() const;
  bool d2_is_zero() const;
};

// Orientation-surviving classes of one enumeration level.
std::vector<GraphClass> surviving_classes(const std::vector<GraphClass>& level);

// Loopless and all vertex weights zero (>= trivalent follows from stability).
bool is_reduced_class(const GraphClass& cls);

// Weight-zero Getzler-Kapranov complex over the full stable-graph poset.
// Labeled mode: degree = |E|, orientation det(E). Hairy mode: degree =
// |E| + hairs, orientation det(E) x det(hairs).
ChainComplexQ build_weight0_gk(const GraphBasis& basis);
ChainComplexQ build_weight0_gk(int g, int n, Mode mode = Mode::labeled,
                               const std::string& cache_dir = {});

// Reduced hairy graph complex: same differential restricted to loopless,
// weight-zero classes.
ChainComplexQ build_reduced_hairy_gc(const GraphBasis& basis);
ChainComplexQ build_reduced_hairy_gc(int g, int n, Mode mode = Mode::labeled,
                                     const std::string& cache_dir = {});

// Hair insertion chi: block per edge count from the n-hair to the
// (n+1)-hair basis (hairy mode). The appended hair takes the last hair slot
// before canonical transport.
struct ChiMap {
  int g = 0;
  int n = 0;  // source hair count
  std::vector<std::vector<GraphClass>> src;  // surviving, by edge count
  std::vector<std::vector<GraphClass>> dst;
  std::vector<SparseMatrixZ> by_edges;       // src[k] -> dst[k]
};

ChiMap build_chi(const GraphBasis& src_hairy, const GraphBasis& dst_hairy);
ChiMap build_chi(int g, int n, const std::string& cache_dir = {});

// Total delta+chi complex over the reduced hairy bases with >= 1 hair
// (>= 3 hairs when g = 0), in total degrees |E|+hairs <= max_total_degree.
// The top degree is flagged unreliable, never silently reported.
struct TotalComplexQ {
  int g = 0;
  int max_total_degree = 0;
  ChainComplexQ complex;
};

TotalComplexQ build_total_delta_chi(int g, int max_total_degree,
                                    const std::string& cache_dir = {});

// Dimension of the sign-isotypic part of the Sigma_n action on the labeled
// degree-k basis, and the count of orientation-surviving unlabeled classes.
// The two must agree; mismatch throws consistency_error.
struct AntiinvariantsResult {
  long labeled_sign_isotypic = 0;
  long hairy_surviving = 0;
};

AntiinvariantsResult antiinvariants_dim(const GraphBasis& labeled, const GraphBasis& hairy,
                                        int degree);
AntiinvariantsResult antiinvariants_dim(int g, int n, int degree,
                                        const std::string& cache_dir = {});

// Betti numbers from certified (or modular) ranks; asserts d^2 = 0 first.
BettiReport betti_table(const ChainComplexQ& c, const RankOptions& opts = {});

// Alternating sum of dimensions.
long euler_characteristic(const ChainComplexQ& c);

}  // namespace gkc
