#include "gkc/linalg.hpp"

#include <algorithm>
#include <limits>

#include "gkc/errors.hpp"
#include "gkc/parallel.hpp"

namespace gkc {

std::size_t SparseMatrixZ::nnz() const {
  std::size_t t = 0;
  for (const auto& r : data_) t += r.size();
  return t;
}

void SparseMatrixZ::add(int r, int c, const mpz_class& v) {
  if (v == 0) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw structural_error("sparse matrix index out of range");
  data_[r].emplace_back(c, v);
}

void SparseMatrixZ::finalize() {
  for (auto& row : data_) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, mpz_class>> merged;
    for (auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.emplace_back(c, v);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second == 0; }),
                 merged.end());
    row = std::move(merged);
  }
}

bool SparseMatrixZ::is_zero() const {
  for (const auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

SparseMatrixZ SparseMatrixZ::transposed() const {
  SparseMatrixZ t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.add(c, r, v);
  t.finalize();
  return t;
}

SparseMatrixZ multiply(const SparseMatrixZ& a, const SparseMatrixZ& b) {
  if (a.cols() != b.rows()) throw structural_error("multiply: shape mismatch");
  SparseMatrixZ out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    std::map<int, mpz_class> acc;
    for (const auto& [k, va] : a.row(r))
      for (const auto& [c, vb] : b.row(k)) acc[c] += va * vb;
    for (auto& [c, v] : acc)
      if (v != 0) out.add(r, c, v);
  }
  out.finalize();
  return out;
}

std::size_t SparseMatrixQ::nnz() const {
  std::size_t t = 0;
  for (const auto& r : data_) t += r.size();
  return t;
}

void SparseMatrixQ::add(int r, int c, const mpq_class& v) {
  if (v == 0) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw structural_error("sparse matrix index out of range");
  data_[r].emplace_back(c, v);
}

void SparseMatrixQ::finalize() {
  for (auto& row : data_) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, mpq_class>> merged;
    for (auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.emplace_back(c, v);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second == 0; }),
                 merged.end());
    row = std::move(merged);
  }
}

bool SparseMatrixQ::is_zero() const {
  for (const auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

SparseMatrixZ SparseMatrixQ::cleared_denominators() const {
  SparseMatrixZ out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    mpz_class scale = 1;
    for (const auto& [c, v] : data_[r])
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& [c, v] : data_[r])
      out.add(r, c, mpz_class(v.get_num() * (scale / v.get_den())));
  }
  out.finalize();
  return out;
}

bool SparseMatrixQ::is_integral() const {
  for (const auto& row : data_)
    for (const auto& [c, v] : row)
      if (v.get_den() != 1) return false;
  return true;
}

SparseMatrixZ SparseMatrixQ::to_integer() const {
  if (!is_integral()) throw structural_error("to_integer: non-integral entries");
  SparseMatrixZ out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) out.add(r, c, v.get_num());
  out.finalize();
  return out;
}

SparseMatrixQ multiply(const SparseMatrixQ& a, const SparseMatrixQ& b) {
  if (a.cols() != b.rows()) throw structural_error("multiply: shape mismatch");
  SparseMatrixQ out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    std::map<int, mpq_class> acc;
    for (const auto& [k, va] : a.row(r))
      for (const auto& [c, vb] : b.row(k)) acc[c] += va * vb;
    for (auto& [c, v] : acc)
      if (v != 0) out.add(r, c, v);
  }
  out.finalize();
  return out;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Deterministic 62-bit prime stream (splitmix64 over a fixed seed), so
// repeated runs see the same primes and reports stay byte-identical.
std::uint64_t nth_prime_62(int index) {
  std::uint64_t state = 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(index) * 0xbf58476d1ce4e5b9ull;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  for (;;) {
    std::uint64_t cand = (next() | (1ull << 61) | 1ull) & ((1ull << 62) - 1);
    if (is_prime_u64(cand)) return cand;
  }
}

// Shared sparse elimination skeleton. Rows are sorted column lists; pivoting
// picks a lightest column, then a row minimizing fill (preferring unit pivot
// entries in the exact case).
template <typename Entry, typename EliminateRow>
int eliminate(std::vector<std::vector<Entry>> rows, int cols, EliminateRow&& eliminate_row,
              bool prefer_unit) {
  const int m = static_cast<int>(rows.size());
  std::vector<char> done(m, 0);
  std::vector<int> col_count(cols, 0);
  std::vector<std::set<int>> col_rows(cols);
  std::set<std::pair<int, int>> queue;  // (count, col), active columns only

  auto queue_update = [&](int c, int delta) {
    if (col_count[c] > 0) queue.erase({col_count[c], c});
    col_count[c] += delta;
    if (col_count[c] > 0) queue.insert({col_count[c], c});
  };
  for (int r = 0; r < m; ++r)
    for (const auto& e : rows[r]) {
      queue_update(e.first, 1);
      col_rows[e.first].insert(r);
    }

  int rank = 0;
  while (!queue.empty()) {
    const int pc = queue.begin()->second;

    int pr = -1;
    bool pr_unit = false;
    for (int r : col_rows[pc]) {
      bool unit = false;
      if (prefer_unit) {
        for (const auto& e : rows[r])
          if (e.first == pc) {
            unit = e.second == 1 || e.second == -1;
            break;
          }
      }
      if (pr < 0 || (unit && !pr_unit) ||
          (unit == pr_unit && rows[r].size() < rows[pr].size())) {
        pr = r;
        pr_unit = unit;
      }
    }

    ++rank;
    done[pr] = 1;
    for (const auto& e : rows[pr]) {
      queue_update(e.first, -1);
      col_rows[e.first].erase(pr);
    }

    const auto victims = col_rows[pc];
    for (int r : victims) {
      if (done[r]) continue;
      for (const auto& e : rows[r]) {
        queue_update(e.first, -1);
        col_rows[e.first].erase(r);
      }
      eliminate_row(rows[r], rows[pr], pc);
      for (const auto& e : rows[r]) {
        queue_update(e.first, 1);
        col_rows[e.first].insert(r);
      }
    }
  }
  return rank;
}

}  // namespace

int rank_mod_p(const SparseMatrixZ& m, std::uint64_t p) {
  using Entry = std::pair<int, std::uint64_t>;
  std::vector<std::vector<Entry>> rows(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) {
      // unsigned long is 64-bit here; floor remainder is nonnegative
      std::uint64_t x = mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
      if (x != 0) rows[r].emplace_back(c, x);
    }

  auto eliminate_row = [p](std::vector<Entry>& target, const std::vector<Entry>& pivot_row,
                           int pivot_col) {
    std::uint64_t tv = 0, pv = 0;
    for (const auto& e : target)
      if (e.first == pivot_col) tv = e.second;
    for (const auto& e : pivot_row)
      if (e.first == pivot_col) pv = e.second;
    // target -= (tv/pv) * pivot_row
    const std::uint64_t factor = mulmod(tv, powmod(pv, p - 2, p), p);
    std::vector<Entry> out;
    out.reserve(target.size() + pivot_row.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot_row.size()) {
      if (j == pivot_row.size() || (i < target.size() && target[i].first < pivot_row[j].first)) {
        out.push_back(target[i++]);
      } else if (i == target.size() || pivot_row[j].first < target[i].first) {
        const std::uint64_t sub = mulmod(factor, pivot_row[j].second, p);
        if (sub) out.emplace_back(pivot_row[j].first, p - sub);
        ++j;
      } else {
        const std::uint64_t sub = mulmod(factor, pivot_row[j].second, p);
        const std::uint64_t val = (target[i].second + p - sub) % p;
        if (val) out.emplace_back(target[i].first, val);
        ++i;
        ++j;
      }
    }
    target = std::move(out);
  };
  return eliminate<Entry>(std::move(rows), m.cols(), eliminate_row, false);
}

int rank_exact_elimination(const SparseMatrixZ& m) {
  using Entry = std::pair<int, mpz_class>;
  std::vector<std::vector<Entry>> rows(m.rows());
  for (int r = 0; r < m.rows(); ++r) rows[r] = m.row(r);

  auto eliminate_row = [](std::vector<Entry>& target, const std::vector<Entry>& pivot_row,
                          int pivot_col) {
    mpz_class tv = 0, pv = 0;
    for (const auto& e : target)
      if (e.first == pivot_col) tv = e.second;
    for (const auto& e : pivot_row)
      if (e.first == pivot_col) pv = e.second;
    // fraction-free update: target <- pv*target - tv*pivot_row, then strip gcd
    std::vector<Entry> out;
    out.reserve(target.size() + pivot_row.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot_row.size()) {
      if (j == pivot_row.size() || (i < target.size() && target[i].first < pivot_row[j].first)) {
        out.emplace_back(target[i].first, pv * target[i].second);
        ++i;
      } else if (i == target.size() || pivot_row[j].first < target[i].first) {
        out.emplace_back(pivot_row[j].first, -tv * pivot_row[j].second);
        ++j;
      } else {
        mpz_class val = pv * target[i].second - tv * pivot_row[j].second;
        if (val != 0) out.emplace_back(target[i].first, std::move(val));
        ++i;
        ++j;
      }
    }
    mpz_class g = 0;
    for (const auto& e : out) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) break;
    }
    if (g > 1)
      for (auto& e : out) e.second /= g;
    target = std::move(out);
  };
  return eliminate<Entry>(std::move(rows), m.cols(), eliminate_row, true);
}

RankResult rank_exact(const SparseMatrixZ& m, const RankOptions& opts) {
  RankResult res;
  if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) {
    res.rank = 0;
    res.certified = true;
    return res;
  }
  std::vector<int> modular(std::max(opts.primes, 1), -1);
  parallel_for(modular.size(), [&](std::size_t i) {
    modular[i] = rank_mod_p(m, nth_prime_62(static_cast<int>(i)));
  });
  res.modular_agreed =
      std::all_of(modular.begin(), modular.end(), [&](int r) { return r == modular[0]; });
  if (opts.certified || !res.modular_agreed) {
    res.rank = rank_exact_elimination(m);
    res.certified = true;
  } else {
    res.rank = modular[0];
    res.certified = false;
  }
  return res;
}

bool BettiReport::operator==(const BettiReport& o) const {
  return dims == o.dims && ranks == o.ranks && betti == o.betti && euler_dims == o.euler_dims &&
         euler_betti == o.euler_betti && certified == o.certified &&
         unreliable_degrees == o.unreliable_degrees;
}

}  // namespace gkc
