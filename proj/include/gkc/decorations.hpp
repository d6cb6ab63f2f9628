#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gkc {

// Dense rational operator matrix, rows = target basis, cols = source basis.
struct MatQ {
  int rows = 0;
  int cols = 0;
  std::vector<mpq_class> a;  // row-major

  MatQ() = default;
  MatQ(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  static MatQ identity(int n);

  mpq_class& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const mpq_class& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  MatQ operator*(const MatQ& o) const;
  bool operator==(const MatQ& o) const = default;
  bool is_identity() const;
};

// Kronecker product acting on (a x b) index pairs: row = ra*b.rows + rb.
MatQ kronecker(const MatQ& a, const MatQ& b);

struct DecorationGenerator {
  std::string id;
  int weight = 0;
  bool operator==(const DecorationGenerator&) const = default;
};

// Graded vector space attached to one (g, n) with its Sigma_n action given
// on adjacent transpositions s_1..s_{n-1}.
struct DecorationBlock {
  int g = 0;
  int n = 0;
  std::vector<DecorationGenerator> basis;
  std::vector<MatQ> transpositions;

  int dim() const { return static_cast<int>(basis.size()); }
  bool operator==(const DecorationBlock&) const = default;
};

// Graded decoration data with symmetric-group actions and single-edge
// co-composition maps: the combinatorial shadow of a graded modular
// cooperad, given at cohomology level (zero internal differential).
//
// Conventions (see docs/decoration-format.md):
//   nonloop (g1,n1|g2,n2): V(g1+g2, n1+n2) -> V(g1,n1+1) (x) V(g2,n2+1);
//   source legs 1..n1 feed factor one in order, legs n1+1..n1+n2 feed factor
//   two; each factor's new leg occupies its last slot. Tensor index of the
//   target = a * dim2 + b.
//   loop (g,n): V(g,n) -> V(g-1, n+2), new legs in the last two slots.
//   forgetful (g,n): V(g,n) -> V(g,n+1), optional section for hairy
//   decorated data; validated for shape and equivariance but unused by the
//   weight-graded builders here.
struct DecorationSystem {
  std::string name;
  int max_weight = 0;
  std::map<std::pair<int, int>, DecorationBlock> blocks;
  std::map<std::array<int, 4>, MatQ> nonloop;
  std::map<std::pair<int, int>, MatQ> loop;
  std::map<std::pair<int, int>, MatQ> forgetful;

  bool has_block(int g, int n) const { return blocks.count({g, n}) > 0; }
  const DecorationBlock& block(int g, int n) const;

  bool operator==(const DecorationSystem&) const = default;
};

// ρ(sigma) on a block: content at slot i moves to slot sigma[i] (0-based);
// composed from the stored adjacent transpositions.
MatQ leg_action(const DecorationBlock& block, const std::vector<int>& sigma);

// One weight-0 generator per stable (g', n') in range; identity actions and
// co-compositions. Reproduces the weight-0 complex exactly.
DecorationSystem trivial_decoration(int max_g, int max_n);

// Schema-versioned JSON with exact "p/q" rationals; unknown fields rejected.
DecorationSystem load_decoration(const std::string& path);
void save_decoration(const std::string& path, const DecorationSystem& d);
std::string decoration_to_string(const DecorationSystem& d);
DecorationSystem decoration_from_string(const std::string& text, const std::string& where);

// Routing of one source slot through a split: factor 0 or 1, and the slot it
// occupies in that factor's final leg order.
struct LegRoute {
  int factor = 0;
  int slot = 0;
};

// Aligned single-edge co-composition. Splits V(g1+g2, n1+n2) into
// V(g1, n1+1) (x) V(g2, n2+1) where n1 = #source slots routed to factor 0.
// route[i] gives the final position of source slot i; the new edge legs land
// at new_slot0 / new_slot1 of their factors. Uses the (g1,n1|g2,n2) entry or
// the swapped one when only that is stored. Target index = a * dim1 + b.
MatQ aligned_split(const DecorationSystem& d, int g0, int g1,
                   const std::vector<LegRoute>& route, int new_slot0, int new_slot1);

// Aligned loop co-composition V(g, n) -> V(g-1, n+2): route[i] = final slot
// of source slot i; the two loop legs land at slots new_a and new_b.
MatQ aligned_loop(const DecorationSystem& d, int g, const std::vector<int>& route, int new_a,
                  int new_b);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Symmetric-group relations, weight homogeneity, leg equivariance of the
// co-compositions, loop symmetry, and the two-edge compatibility identities
// that d^2 = 0 needs (checked with the same slot-alignment machinery the
// assembly uses).
ValidationReport validate_decoration(const DecorationSystem& d);

}  // namespace gkc
