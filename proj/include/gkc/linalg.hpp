#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gkc {

// Sparse integer matrix in triplet-per-row form: no duplicate positions, no
// stored zeros. Rows index the target basis of a differential.
class SparseMatrixZ {
 public:
  SparseMatrixZ() = default;
  SparseMatrixZ(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const;

  void add(int r, int c, const mpz_class& v);  // accumulates; drops zeros on finalize
  void finalize();                             // sort columns, merge, drop zeros

  const std::vector<std::pair<int, mpz_class>>& row(int r) const { return data_[r]; }

  bool is_zero() const;
  SparseMatrixZ transposed() const;

  bool operator==(const SparseMatrixZ& o) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<std::pair<int, mpz_class>>> data_;
};

// a*b over the integers, exact.
SparseMatrixZ multiply(const SparseMatrixZ& a, const SparseMatrixZ& b);

// Sparse rational matrix for the decorated complexes.
class SparseMatrixQ {
 public:
  SparseMatrixQ() = default;
  SparseMatrixQ(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const;

  void add(int r, int c, const mpq_class& v);
  void finalize();

  const std::vector<std::pair<int, mpq_class>>& row(int r) const { return data_[r]; }

  bool is_zero() const;
  // Row-scaled integer matrix (same rank, same kernel).
  SparseMatrixZ cleared_denominators() const;
  // Exact integer content if every entry is integral, else nullopt shape.
  bool is_integral() const;
  SparseMatrixZ to_integer() const;  // throws unless is_integral()

  bool operator==(const SparseMatrixQ& o) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<std::pair<int, mpq_class>>> data_;
};

SparseMatrixQ multiply(const SparseMatrixQ& a, const SparseMatrixQ& b);

// Rank mod p by sparse elimination (p < 2^62).
int rank_mod_p(const SparseMatrixZ& m, std::uint64_t p);

// Exact rank over Q by sparse fraction-free elimination with gcd-normalized
// integer rows and Markowitz-style pivoting.
int rank_exact_elimination(const SparseMatrixZ& m);

struct RankOptions {
  bool certified = true;  // acceptance runs always certify
  int primes = 2;         // modular probes
};

struct RankResult {
  int rank = 0;
  bool certified = false;
  bool modular_agreed = true;
};

// Modular rank at `primes` deterministic pseudo-random 62-bit primes; a
// disagreement, or certified mode, triggers the exact elimination.
RankResult rank_exact(const SparseMatrixZ& m, const RankOptions& opts = {});

// Degree -> data table for a cochain complex. chi is computed from dims and
// independently from Betti numbers; both are stored and must agree.
struct BettiReport {
  std::map<int, long> dims;
  std::map<int, long> ranks;  // rank of d_k (degree k -> k+1)
  std::map<int, long> betti;
  long euler_dims = 0;
  long euler_betti = 0;
  bool certified = false;
  std::set<int> unreliable_degrees;  // truncation boundary, never silent

  bool operator==(const BettiReport& o) const;
};

}  // namespace gkc
