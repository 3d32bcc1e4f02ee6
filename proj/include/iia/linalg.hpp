#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "iia/rational.hpp"

namespace iia {

// Dense row-major matrix over the scalar S. Row vectors double as subspace
// bases; all cohomology-facing code keeps bases in reduced row echelon form so
// results are canonical and runs are reproducible.
template <class S>
using Mat = std::vector<std::vector<S>>;

namespace detail {

// Pivot selection: exact scalars take the first nonzero entry (gives the
// canonical RREF); floating point takes the largest magnitude above eps.
template <class S>
int pick_pivot(const Mat<S>& m, int row_begin, int col, const S& eps) {
  int n = static_cast<int>(m.size());
  if (is_zero(eps)) {
    for (int r = row_begin; r < n; ++r)
      if (!is_zero(m[r][col])) return r;
    return -1;
  }
  int best = -1;
  S best_abs = eps;
  for (int r = row_begin; r < n; ++r) {
    S a = abs_val(m[r][col]);
    if (best_abs < a) {
      best_abs = a;
      best = r;
    }
  }
  return best;
}

}  // namespace detail

// In-place reduced row echelon form. Returns pivot column list (rank = size).
template <class S>
std::vector<int> rref(Mat<S>& m, const S& eps = S(0)) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = detail::pick_pivot(m, r, c, eps);
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    S inv = S(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    m[r][c] = S(1);
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      S f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      m[i][c] = S(0);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);  // drop zero rows; rows above r are reduced, rest eliminated
  return pivots;
}

// Row space basis in canonical RREF (zero rows dropped).
template <class S>
Mat<S> row_space(Mat<S> m, const S& eps = S(0)) {
  rref(m, eps);
  return m;
}

// Basis of {x : M x = 0}, returned as RREF rows of length cols(M).
template <class S>
Mat<S> nullspace(const Mat<S>& m, const S& eps = S(0)) {
  if (m.empty()) throw std::invalid_argument("nullspace of empty matrix");
  int cols = static_cast<int>(m[0].size());
  Mat<S> work = m;
  std::vector<int> pivots = rref(work, eps);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat<S> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(cols, S(0));
    v[f] = S(1);
    for (size_t r = 0; r < work.size(); ++r) v[pivots[r]] = -work[r][f];
    basis.push_back(std::move(v));
  }
  rref(basis, eps);
  return basis;
}

// Reduce v against an RREF basis; the remainder is v minus its projection onto
// the row span (exact elimination on pivot coordinates).
template <class S>
std::vector<S> reduce_against(const Mat<S>& rref_basis, std::vector<S> v) {
  for (const auto& row : rref_basis) {
    int pc = -1;
    for (size_t c = 0; c < row.size(); ++c) {
      if (!is_zero(row[c])) {
        pc = static_cast<int>(c);
        break;
      }
    }
    if (pc < 0) continue;
    if (is_zero(v[pc])) continue;
    S f = v[pc];
    for (size_t c = pc; c < v.size(); ++c) v[c] -= f * row[c];
  }
  return v;
}

template <class S>
bool in_row_span(const Mat<S>& rref_basis, const std::vector<S>& v, const S& eps = S(0)) {
  std::vector<S> r = reduce_against(rref_basis, v);
  if (is_zero(eps)) {
    for (const auto& x : r)
      if (!is_zero(x)) return false;
    return true;
  }
  for (const auto& x : r)
    if (eps < abs_val(x)) return false;
  return true;
}

// Coordinates of v in an RREF basis, or nothing if v lies outside the span.
template <class S>
std::optional<std::vector<S>> coords_in_rref_basis(const Mat<S>& basis, std::vector<S> v) {
  std::vector<S> coords(basis.size(), S(0));
  for (size_t r = 0; r < basis.size(); ++r) {
    int pc = -1;
    for (size_t c = 0; c < basis[r].size(); ++c) {
      if (!is_zero(basis[r][c])) {
        pc = static_cast<int>(c);
        break;
      }
    }
    if (pc < 0) continue;
    coords[r] = v[pc];
    if (is_zero(coords[r])) continue;
    for (size_t c = pc; c < v.size(); ++c) v[c] -= coords[r] * basis[r][c];
  }
  for (const auto& x : v)
    if (!is_zero(x)) return std::nullopt;
  return coords;
}

// Intersection of two row spaces, as RREF rows. Solves sum a_i u_i = sum b_j w_j.
template <class S>
Mat<S> row_space_intersection(const Mat<S>& u, const Mat<S>& w) {
  if (u.empty() || w.empty()) return {};
  size_t n = u[0].size();
  size_t p = u.size(), q = w.size();
  Mat<S> system(n, std::vector<S>(p + q, S(0)));
  for (size_t c = 0; c < n; ++c) {
    for (size_t i = 0; i < p; ++i) system[c][i] = u[i][c];
    for (size_t j = 0; j < q; ++j) system[c][p + j] = -w[j][c];
  }
  Mat<S> combos = nullspace(system);
  Mat<S> out;
  for (const auto& ab : combos) {
    std::vector<S> x(n, S(0));
    for (size_t i = 0; i < p; ++i)
      for (size_t c = 0; c < n; ++c) x[c] += ab[i] * u[i][c];
    out.push_back(std::move(x));
  }
  rref(out);
  return out;
}

// Canonical representatives of Z/B: reduce each Z row mod B, then RREF the
// remainders. Every output row lies in Z (row operations stay inside Z).
template <class S>
Mat<S> quotient_reps(const Mat<S>& z_rref, const Mat<S>& b_rref) {
  Mat<S> reduced;
  for (const auto& z : z_rref) reduced.push_back(reduce_against(b_rref, z));
  rref(reduced);
  return reduced;
}

// Solve sum_j x_j col_j = v exactly. Throws if inconsistent; free coordinates
// of an underdetermined system are set to zero.
template <class S>
std::vector<S> solve_columns(const Mat<S>& columns, const std::vector<S>& v) {
  if (columns.empty()) throw std::invalid_argument("solve_columns with no columns");
  size_t n = columns[0].size();
  size_t k = columns.size();
  Mat<S> aug(n, std::vector<S>(k + 1, S(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = columns[j][i];
    aug[i][k] = v[i];
  }
  std::vector<int> pivots = rref(aug);
  std::vector<S> x(k, S(0));
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == static_cast<int>(k)) throw std::runtime_error("solve_columns: inconsistent system");
    x[pivots[r]] = aug[r][k];
  }
  return x;
}

// M * v with M row-major.
template <class S>
std::vector<S> mat_apply(const Mat<S>& m, const std::vector<S>& v) {
  std::vector<S> out(m.size(), S(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!is_zero(m[i][j]) && !is_zero(v[j])) out[i] += m[i][j] * v[j];
  return out;
}

// Rows of `rows` pushed through the linear map M (i.e. image coordinates).
template <class S>
Mat<S> apply_to_rows(const Mat<S>& m, const Mat<S>& rows) {
  Mat<S> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(mat_apply(m, r));
  return out;
}

// Basis of {x in span(rows) : M x = 0}: nullspace combinations of the rows.
template <class S>
Mat<S> kernel_in_subspace(const Mat<S>& m, const Mat<S>& rows) {
  if (rows.empty()) return {};
  Mat<S> images = apply_to_rows(m, rows);
  // combos: coefficients y with sum_i y_i images_i = 0
  size_t target = images[0].size();
  Mat<S> system(target, std::vector<S>(rows.size(), S(0)));
  for (size_t j = 0; j < images.size(); ++j)
    for (size_t i = 0; i < target; ++i) system[i][j] = images[j][i];
  Mat<S> combos = nullspace(system);
  Mat<S> out;
  for (const auto& y : combos) {
    std::vector<S> x(rows[0].size(), S(0));
    for (size_t j = 0; j < rows.size(); ++j)
      for (size_t c = 0; c < x.size(); ++c) x[c] += y[j] * rows[j][c];
    out.push_back(std::move(x));
  }
  rref(out);
  return out;
}

}  // namespace iia
