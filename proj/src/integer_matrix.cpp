#include "hbtop/integer_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hbtop {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix dimensions do not match");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (auto [r, v] : columns[c]) m(r, c) = static_cast<long>(v);
  return m;
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

// ---------------------------------------------------------------------------
// Dense Smith normal form.

namespace {

class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, bool track) : a_(m), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(m.rows());
      v_ = IntMatrix::identity(m.cols());
    }
  }

  std::vector<Integer> run() {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    std::vector<Integer> factors;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!move_smallest(t, t, m, t, n)) break;
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t) == 0) continue;
          Integer q = a_(i, t) / a_(t, t);
          if (q != 0) add_row(i, t, -q);
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j) == 0) continue;
          Integer q = a_(t, j) / a_(t, t);
          if (q != 0) add_col(j, t, -q);
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          move_smallest_in_cross(t);
          continue;
        }
        // Row and column t are clear; enforce divisibility of the rest.
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a_(i, j) % a_(t, t) != 0) {
              add_row(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      if (a_(t, t) < 0) negate_row(t);
      factors.push_back(a_(t, t));
    }
    return factors;
  }

  IntMatrix& a() { return a_; }
  IntMatrix& u() { return u_; }
  IntMatrix& v() { return v_; }

 private:
  // Moves the entry of least absolute value in the block to (t, t).
  bool move_smallest(std::size_t t, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    bool found = false;
    std::size_t br = 0, bc = 0;
    Integer best;
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        if (!found || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
          best = x;
          br = i;
          bc = j;
          found = true;
          if (abs(best) == 1) goto done;
        }
      }
  done:
    if (!found) return false;
    swap_rows(t, br);
    swap_cols(t, bc);
    return true;
  }

  void move_smallest_in_cross(std::size_t t) {
    std::size_t br = t, bc = t;
    Integer best = abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && mpz_cmpabs(a_(i, t).get_mpz_t(), best.get_mpz_t()) < 0) {
        best = abs(a_(i, t));
        br = i;
        bc = t;
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && mpz_cmpabs(a_(t, j).get_mpz_t(), best.get_mpz_t()) < 0) {
        best = abs(a_(t, j));
        br = t;
        bc = j;
      }
    swap_rows(t, br);
    swap_cols(t, bc);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    if (track_)
      for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_(i, c), u_(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    if (track_)
      for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
  }

  // row_dst += k * row_src
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (a_(src, c) != 0) a_(dst, c) += k * a_(src, c);
    if (track_)
      for (std::size_t c = 0; c < u_.cols(); ++c)
        if (u_(src, c) != 0) u_(dst, c) += k * u_(src, c);
  }

  // col_dst += k * col_src
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (a_(r, src) != 0) a_(r, dst) += k * a_(r, src);
    if (track_)
      for (std::size_t r = 0; r < v_.rows(); ++r)
        if (v_(r, src) != 0) v_(r, dst) += k * v_(r, src);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    if (track_)
      for (std::size_t c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix v_;
  bool track_;
};

struct Overflow {};

inline std::int64_t checked_sub_mul(std::int64_t a, std::int64_t k, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(k, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
  return out;
}

// Sparse elimination of unit pivots. Returns the number of unit factors and
// leaves the residual block in `rest`.
std::size_t eliminate_units(const SparseIntMatrix& m, IntMatrix& rest) {
  using Entry = SparseIntMatrix::Entry;
  std::vector<std::vector<Entry>> cols = m.columns;
  std::vector<std::vector<std::uint32_t>> row_cols(m.rows);
  std::vector<std::size_t> row_count(m.rows, 0);
  for (std::uint32_t c = 0; c < cols.size(); ++c)
    for (auto [r, v] : cols[c]) {
      row_cols[r].push_back(c);
      ++row_count[r];
    }
  std::vector<bool> col_alive(cols.size(), true);
  std::vector<bool> row_alive(m.rows, true);
  std::size_t units = 0;

  auto value_at = [&](std::uint32_t c, std::uint32_t r) -> std::int64_t {
    const auto& col = cols[c];
    auto it = std::lower_bound(col.begin(), col.end(), Entry{r, 0},
                               [](const Entry& x, const Entry& y) { return x.first < y.first; });
    return it != col.end() && it->first == r ? it->second : 0;
  };

  std::vector<Entry> merged;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::uint32_t> order;
    for (std::uint32_t c = 0; c < cols.size(); ++c)
      if (col_alive[c] && !cols[c].empty()) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return cols[x].size() < cols[y].size(); });
    for (std::uint32_t c : order) {
      if (!col_alive[c] || cols[c].empty()) continue;
      std::uint32_t pivot_row = 0;
      std::int64_t unit = 0;
      std::size_t best = static_cast<std::size_t>(-1);
      for (auto [r, v] : cols[c])
        if ((v == 1 || v == -1) && row_count[r] < best) {
          best = row_count[r];
          pivot_row = r;
          unit = v;
        }
      if (unit == 0) continue;

      // Clear the pivot row: col_j -= (a_rj * unit) * col_c.
      auto targets = row_cols[pivot_row];
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      const auto& pivot_col = cols[c];
      for (std::uint32_t j : targets) {
        if (j == c || !col_alive[j]) continue;
        std::int64_t a = value_at(j, pivot_row);
        if (a == 0) continue;
        std::int64_t k = checked_sub_mul(0, a, -unit);
        auto& col = cols[j];
        merged.clear();
        std::size_t x = 0, y = 0;
        while (x < col.size() || y < pivot_col.size()) {
          if (y == pivot_col.size() || (x < col.size() && col[x].first < pivot_col[y].first)) {
            merged.push_back(col[x++]);
          } else if (x == col.size() || pivot_col[y].first < col[x].first) {
            std::int64_t v = checked_sub_mul(0, k, pivot_col[y].second);
            row_cols[pivot_col[y].first].push_back(j);
            ++row_count[pivot_col[y].first];
            merged.emplace_back(pivot_col[y++].first, v);
          } else {
            std::int64_t v = checked_sub_mul(col[x].second, k, pivot_col[y].second);
            if (v != 0)
              merged.emplace_back(col[x].first, v);
            else
              --row_count[col[x].first];
            ++x;
            ++y;
          }
        }
        col.swap(merged);
      }
      for (auto [r, v] : cols[c]) --row_count[r];
      col_alive[c] = false;
      row_alive[pivot_row] = false;
      row_cols[pivot_row].clear();
      cols[c].clear();
      ++units;
      progress = true;
    }
  }

  std::vector<std::size_t> row_map(m.rows, static_cast<std::size_t>(-1));
  std::vector<std::uint32_t> live_cols;
  std::size_t live_rows = 0;
  for (std::uint32_t c = 0; c < cols.size(); ++c) {
    if (!col_alive[c] || cols[c].empty()) continue;
    live_cols.push_back(c);
    for (auto [r, v] : cols[c])
      if (row_map[r] == static_cast<std::size_t>(-1)) row_map[r] = live_rows++;
  }
  rest = IntMatrix(live_rows, live_cols.size());
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    for (auto [r, v] : cols[live_cols[j]]) rest(row_map[r], j) = static_cast<long>(v);
  return units;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithWorker w(m, true);
  SmithForm out;
  out.factors = w.run();
  out.D = std::move(w.a());
  out.U = std::move(w.u());
  out.V = std::move(w.v());
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  SmithWorker w(m, false);
  return w.run();
}

std::vector<Integer> invariant_factors(const SparseIntMatrix& m) {
  IntMatrix rest;
  std::size_t units = 0;
  try {
    units = eliminate_units(m, rest);
  } catch (const Overflow&) {
    return invariant_factors(m.to_dense());
  }
  std::vector<Integer> factors(units, Integer(1));
  for (auto& f : invariant_factors(rest)) factors.push_back(std::move(f));
  return factors;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace hbtop
