#pragma once

// Exact dense linear algebra over Z and Q: echelon forms, integer normal
// forms, kernels and solvers. Everything is deterministic (fixed pivot
// scan order) so callers can freeze outputs in golden tests.

#include "torelli/common.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace torelli {

// Reduced row echelon form over the fraction field. Returns the pivot
// columns; A is replaced by its RREF.
template <class Scalar>
std::vector<Index> rref_in_place(Mat<Scalar>& a) {
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index p = -1;
    for (Index i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    a.row(p).swap(a.row(r));
    Scalar inv = Scalar(1) / a(r, c);
    a.row(r) *= inv;
    for (Index i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) a.row(i) -= a(i, c) * a.row(r);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Derived>
Index rank_over_q(const Eigen::MatrixBase<Derived>& a) {
  Mat<Rat> m = a.template cast<Rat>();
  return static_cast<Index>(rref_in_place(m).size());
}

// Basis of the rational kernel, returned as primitive integer columns.
// Deterministic: one column per free variable, in column order.
template <class Derived>
IMat kernel_basis_over_q(const Eigen::MatrixBase<Derived>& a) {
  Mat<Rat> m = a.template cast<Rat>();
  const Index n = m.cols();
  std::vector<Index> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(n, false);
  for (Index c : pivots) is_pivot[c] = true;
  IMat basis(n, n - static_cast<Index>(pivots.size()));
  Index col = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec<Rat> v = Vec<Rat>::Zero(n);
    v(f) = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v(pivots[r]) = -m(static_cast<Index>(r), f);
    Int lcm_den = 1;
    for (Index i = 0; i < n; ++i)
      lcm_den = boost::multiprecision::lcm(lcm_den, Int(denominator(v(i))));
    IVec w(n);
    for (Index i = 0; i < n; ++i) w(i) = Int(numerator(v(i))) * (lcm_den / Int(denominator(v(i))));
    Int g = 0;
    for (Index i = 0; i < n; ++i) g = boost::multiprecision::gcd(g, w(i));
    if (g > 1) w /= g;
    basis.col(col++) = w;
  }
  return basis;
}

// Fraction-free determinant (Bareiss).
template <class Derived>
Int det_exact(const Eigen::MatrixBase<Derived>& a) {
  IMat m = a.template cast<Int>();
  const Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det_exact: matrix not square");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index p = -1;
      for (Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct RowHermite {
  IMat h;                      // h = u * a, in row Hermite normal form
  IMat u;                      // unimodular
  std::vector<Index> pivot_cols;  // pivot column of row r, for r < rank
};

// Row-style Hermite normal form with transform. Pivots positive, entries
// above a pivot reduced into [0, pivot).
inline RowHermite row_hermite(const IMat& a) {
  RowHermite out;
  out.h = a;
  out.u = IMat::Identity(a.rows(), a.rows());
  IMat& h = out.h;
  IMat& u = out.u;
  Index r = 0;
  for (Index c = 0; c < h.cols() && r < h.rows(); ++c) {
    // gcd-reduce column c below row r
    while (true) {
      Index p = -1;
      for (Index i = r; i < h.rows(); ++i) {
        if (h(i, c) != 0 && (p < 0 || abs(h(i, c)) < abs(h(p, c)))) p = i;
      }
      if (p < 0) break;
      if (p != r) { h.row(p).swap(h.row(r)); u.row(p).swap(u.row(r)); }
      bool clean = true;
      for (Index i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(r, c);  // truncated is fine inside the loop
        if (q != 0) { h.row(i) -= q * h.row(r); u.row(i) -= q * u.row(r); }
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) { h.row(r) = -h.row(r); u.row(r) = -u.row(r); }
    for (Index i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) { h.row(i) -= q * h.row(r); u.row(i) -= q * u.row(r); }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

struct ColHermite {
  IMat h;                      // h = a * u, column Hermite normal form
  IMat u;                      // unimodular
  std::vector<Index> pivot_rows;  // pivot row of column j, for j < rank
};

inline ColHermite col_hermite(const IMat& a) {
  RowHermite t = row_hermite(IMat(a.transpose()));
  return ColHermite{t.h.transpose(), t.u.transpose(), t.pivot_cols};
}

// Canonical representative of v modulo the column lattice of `sub`
// (residues reduced against the column Hermite form, pivot rows in order).
inline IVec reduce_mod_column_lattice(const ColHermite& ch, IVec v) {
  for (size_t j = 0; j < ch.pivot_rows.size(); ++j) {
    Index p = ch.pivot_rows[j];
    const Int& d = ch.h(p, static_cast<Index>(j));
    Int q = floor_div(v(p), d);
    if (q != 0) v -= q * ch.h.col(static_cast<Index>(j));
  }
  return v;
}

// Elementary divisors (Smith normal form diagonal), nonzero entries only.
inline std::vector<Int> smith_divisors(IMat m) {
  std::vector<Int> divisors;
  Index top = 0;
  while (top < m.rows() && top < m.cols()) {
    // locate minimal nonzero |entry| in the trailing block
    Index pi = -1, pj = -1;
    for (Index i = top; i < m.rows(); ++i)
      for (Index j = top; j < m.cols(); ++j)
        if (m(i, j) != 0 && (pi < 0 || abs(m(i, j)) < abs(m(pi, pj)))) { pi = i; pj = j; }
    if (pi < 0) break;
    m.row(top).swap(m.row(pi));
    m.col(top).swap(m.col(pj));
    bool restart = false;
    for (Index i = top + 1; i < m.rows() && !restart; ++i) {
      if (m(i, top) == 0) continue;
      Int q = m(i, top) / m(top, top);
      m.row(i) -= q * m.row(top);
      if (m(i, top) != 0) restart = true;  // smaller remainder became the pivot candidate
    }
    if (restart) continue;
    for (Index j = top + 1; j < m.cols() && !restart; ++j) {
      if (m(top, j) == 0) continue;
      Int q = m(top, j) / m(top, top);
      m.col(j) -= q * m.col(top);
      if (m(top, j) != 0) restart = true;
    }
    if (restart) continue;
    // divisibility sweep
    bool divides_all = true;
    for (Index i = top + 1; i < m.rows() && divides_all; ++i)
      for (Index j = top + 1; j < m.cols(); ++j)
        if (m(i, j) % m(top, top) != 0) {
          m.row(top) += m.row(i);
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    divisors.push_back(abs(m(top, top)));
    ++top;
  }
  return divisors;
}

// Solve a x = b over Z for a of full column rank; nullopt when b is not in
// the column lattice. Throws if a is column-rank-deficient (callers here
// only solve against injective maps).
inline std::optional<IVec> solve_integer(const IMat& a, const IVec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_integer: shape mismatch");
  RowHermite rh = row_hermite(a);
  if (static_cast<Index>(rh.pivot_cols.size()) != a.cols())
    throw std::logic_error("solve_integer: matrix is column-rank-deficient");
  IVec c = rh.u * b;
  const Index m = a.cols();
  IVec x = IVec::Zero(m);
  for (Index r = m - 1; r >= 0; --r) {
    Int rhs = c(r);
    for (Index j = r + 1; j < m; ++j) rhs -= rh.h(r, j) * x(j);
    const Int& piv = rh.h(r, rh.pivot_cols[static_cast<size_t>(r)]);
    if (rhs % piv != 0) return std::nullopt;
    x(r) = rhs / piv;
  }
  for (Index r = m; r < a.rows(); ++r)
    if (c(r) != 0) return std::nullopt;
  return x;
}

// Basis of the saturated integer kernel lattice {x : a x = 0}: the columns
// of the column-Hermite transform over the zero columns of the form.
inline IMat integer_kernel_basis(const IMat& a) {
  ColHermite ch = col_hermite(a);
  Index r = static_cast<Index>(ch.pivot_rows.size());
  return ch.u.rightCols(a.cols() - r);
}

struct SkewNormalForm {
  IMat u;                   // unimodular, u^T g u block-diagonal
  std::vector<Int> blocks;  // d_1 | d_2 | ... for blocks [[0,d],[-d,0]]
};

// Congruence normal form of a skew-symmetric integer matrix.
inline SkewNormalForm skew_normal_form(IMat g) {
  const Index n = g.rows();
  if (g.cols() != n) throw std::invalid_argument("skew_normal_form: matrix not square");
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j)
      if (g(i, j) != -g(j, i))
        throw std::invalid_argument("skew_normal_form: matrix not skew-symmetric");
  SkewNormalForm out;
  out.u = IMat::Identity(n, n);
  auto swap_rc = [&](Index s, Index t) {
    if (s == t) return;
    g.row(s).swap(g.row(t));
    g.col(s).swap(g.col(t));
    out.u.col(s).swap(out.u.col(t));
  };
  auto add_rc = [&](Index t, Index s, const Int& q) {
    // column t += q * column s, congruently
    g.col(t) += q * g.col(s);
    g.row(t) += q * g.row(s);
    out.u.col(t) += q * out.u.col(s);
  };
  Index k = 0;
  while (k + 1 < n) {
    Index pi = -1, pj = -1;
    for (Index i = k; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (g(i, j) != 0 && (pi < 0 || abs(g(i, j)) < abs(g(pi, pj)))) { pi = i; pj = j; }
    if (pi < 0) break;
    swap_rc(k, pi);  // pj > pi >= k, so pj is unaffected by this swap
    swap_rc(k + 1, pj);
    if (g(k, k + 1) < 0) { g.row(k + 1) = -g.row(k + 1); g.col(k + 1) = -g.col(k + 1); out.u.col(k + 1) = -out.u.col(k + 1); }
    bool clean = true;
    for (Index t = k + 2; t < n; ++t) {
      if (g(k, t) != 0) {
        Int q = g(k, t) / g(k, k + 1);
        add_rc(t, k + 1, -q);
        if (g(k, t) != 0) clean = false;
      }
      if (g(k + 1, t) != 0) {
        Int q = g(k + 1, t) / g(k + 1, k);
        add_rc(t, k, -q);
        if (g(k + 1, t) != 0) clean = false;
      }
    }
    if (!clean) continue;  // remainders may now be smaller than the pivot
    out.blocks.push_back(g(k, k + 1));
    k += 2;
  }
  return out;
}

inline IVec primitive_part(IVec v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = boost::multiprecision::gcd(g, v(i));
  if (g > 1) v /= g;
  return v;
}

}  // namespace torelli
