// Compile-time field contexts (QCtx, FpCtx, QuadCtx) and dense exact linear
// algebra over them: matrix arithmetic, rank, nullspace, solving, inversion.
// The F_p context keeps residues in uint64 and delays reduction inside dot
// products; this is the fast path for the 64-dimensional operator calculus.
#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "bioct/fields.hpp"

namespace bioct {

// --------------------------------------------------------------------------
// Field contexts
// --------------------------------------------------------------------------

struct QCtx {
  using Elt = Rat;
  FieldPtr desc() const { return field_Q(); }
  Elt zero() const { return Rat(0); }
  Elt one() const { return Rat(1); }
  Elt from_int(long long n) const { return Rat(n); }
  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt inv(const Elt& a) const {
    if (a == 0) throw FieldError(FieldErrorCode::DivisionByZero, "1/0");
    return 1 / a;
  }
  bool is_zero(const Elt& a) const { return a == 0; }
  bool eq(const Elt& a, const Elt& b) const { return a == b; }
  Scalar to_scalar(const Elt& a) const { return make_rat(a); }
  Elt from_scalar(const Scalar& s) const { return std::get<Rat>(s.v); }
};

struct FpCtx {
  std::uint64_t p;
  using Elt = std::uint64_t;
  FieldPtr desc() const { return field_Fp(p); }
  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt from_int(long long n) const { return fp_reduce(n, p); }
  Elt add(Elt a, Elt b) const { Elt s = a + b; return s >= p ? s - p : s; }
  Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p - b; }
  Elt mul(Elt a, Elt b) const { return fp_mul(a, b, p); }
  Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
  Elt inv(Elt a) const { return fp_inv(a, p); }
  bool is_zero(Elt a) const { return a == 0; }
  bool eq(Elt a, Elt b) const { return a == b; }
  Scalar to_scalar(Elt a) const { return Scalar{desc(), a}; }
  Elt from_scalar(const Scalar& s) const { return std::get<std::uint64_t>(s.v); }
};

// Quadratic extension of a base context: elements a + b*sqrt(d).
template <class B>
struct QuadCtx {
  B base;
  typename B::Elt d;
  struct Elt {
    typename B::Elt a, b;
  };
  FieldPtr desc() const { return field_quad(base.desc(), base.to_scalar(d)); }
  Elt zero() const { return {base.zero(), base.zero()}; }
  Elt one() const { return {base.one(), base.zero()}; }
  Elt from_int(long long n) const { return {base.from_int(n), base.zero()}; }
  Elt add(const Elt& x, const Elt& y) const {
    return {base.add(x.a, y.a), base.add(x.b, y.b)};
  }
  Elt sub(const Elt& x, const Elt& y) const {
    return {base.sub(x.a, y.a), base.sub(x.b, y.b)};
  }
  Elt mul(const Elt& x, const Elt& y) const {
    return {base.add(base.mul(x.a, y.a), base.mul(d, base.mul(x.b, y.b))),
            base.add(base.mul(x.a, y.b), base.mul(x.b, y.a))};
  }
  Elt neg(const Elt& x) const { return {base.neg(x.a), base.neg(x.b)}; }
  Elt inv(const Elt& x) const {
    auto n = base.sub(base.mul(x.a, x.a), base.mul(d, base.mul(x.b, x.b)));
    auto ni = base.inv(n);
    return {base.mul(x.a, ni), base.neg(base.mul(x.b, ni))};
  }
  bool is_zero(const Elt& x) const {
    return base.is_zero(x.a) && base.is_zero(x.b);
  }
  bool eq(const Elt& x, const Elt& y) const {
    return base.eq(x.a, y.a) && base.eq(x.b, y.b);
  }
  Elt conj(const Elt& x) const { return {x.a, base.neg(x.b)}; }
  typename B::Elt norm(const Elt& x) const {
    return base.sub(base.mul(x.a, x.a), base.mul(d, base.mul(x.b, x.b)));
  }
  typename B::Elt trace(const Elt& x) const { return base.add(x.a, x.a); }
  Scalar to_scalar(const Elt& x) const {
    return make_quad(desc(), base.to_scalar(x.a), base.to_scalar(x.b));
  }
  Elt from_scalar(const Scalar& s) const {
    const auto& q = std::get<QuadVal>(s.v);
    return {base.from_scalar(*q.a), base.from_scalar(*q.b)};
  }
};

// --------------------------------------------------------------------------
// Vectors and matrices
// --------------------------------------------------------------------------

template <class F>
using Vec = std::vector<typename F::Elt>;

template <class F>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<typename F::Elt> a;  // row-major
  Mat() = default;
  Mat(int r, int c, typename F::Elt fill)
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}
  typename F::Elt& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const typename F::Elt& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
};

template <class F>
Mat<F> mat_zero(const F& f, int r, int c) {
  return Mat<F>(r, c, f.zero());
}

template <class F>
Mat<F> mat_identity(const F& f, int n) {
  Mat<F> m(n, n, f.zero());
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

template <class F>
Mat<F> mat_add(const F& f, const Mat<F>& x, const Mat<F>& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Mat<F> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.add(r.a[i], y.a[i]);
  return r;
}

template <class F>
Mat<F> mat_sub(const F& f, const Mat<F>& x, const Mat<F>& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Mat<F> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.sub(r.a[i], y.a[i]);
  return r;
}

template <class F>
Mat<F> mat_scale(const F& f, const typename F::Elt& c, const Mat<F>& x) {
  Mat<F> r = x;
  for (auto& e : r.a) e = f.mul(c, e);
  return r;
}

template <class F>
Mat<F> mat_neg(const F& f, const Mat<F>& x) {
  Mat<F> r = x;
  for (auto& e : r.a) e = f.neg(e);
  return r;
}

template <class F>
bool mat_is_zero(const F& f, const Mat<F>& x) {
  for (const auto& e : x.a)
    if (!f.is_zero(e)) return false;
  return true;
}

template <class F>
bool mat_eq(const F& f, const Mat<F>& x, const Mat<F>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!f.eq(x.a[i], y.a[i])) return false;
  return true;
}

// Generic matmul.
template <class F>
Mat<F> mat_mul(const F& f, const Mat<F>& x, const Mat<F>& y) {
  assert(x.cols == y.rows);
  Mat<F> r(x.rows, y.cols, f.zero());
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const auto& xik = x.at(i, k);
      if (f.is_zero(xik)) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(xik, y.at(k, j)));
    }
  return r;
}

// F_p fast path: accumulate raw products, reduce per row sweep.  Values are
// < p <= ~2^20 in practice, so p^2 * 64 fits easily in uint64.
inline Mat<FpCtx> mat_mul(const FpCtx& f, const Mat<FpCtx>& x,
                          const Mat<FpCtx>& y) {
  assert(x.cols == y.rows);
  Mat<FpCtx> r(x.rows, y.cols, 0);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(y.cols));
  // safe chunk: how many p^2 terms fit in uint64
  const std::uint64_t cap = ~0ULL / (f.p * f.p) - 1;
  for (int i = 0; i < x.rows; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t pending = 0;
    for (int k = 0; k < x.cols; ++k) {
      std::uint64_t xik = x.at(i, k);
      if (!xik) continue;
      const std::uint64_t* yk = &y.a[static_cast<std::size_t>(k) * y.cols];
      for (int j = 0; j < y.cols; ++j) acc[j] += xik * yk[j];
      if (++pending >= cap) {
        for (auto& v : acc) v %= f.p;
        pending = 0;
      }
    }
    for (int j = 0; j < y.cols; ++j) r.at(i, j) = acc[j] % f.p;
  }
  return r;
}

template <class F>
Vec<F> mat_vec(const F& f, const Mat<F>& x, const Vec<F>& v) {
  assert(static_cast<std::size_t>(x.cols) == v.size());
  Vec<F> r(x.rows, f.zero());
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (!f.is_zero(x.at(i, j)))
        r[i] = f.add(r[i], f.mul(x.at(i, j), v[j]));
  return r;
}

template <class F>
Mat<F> mat_transpose(const Mat<F>& x) {
  Mat<F> r;
  r.rows = x.cols;
  r.cols = x.rows;
  r.a.resize(x.a.size());
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

// Row-reduce in place; returns rank.  Records pivot columns if requested.
template <class F>
int row_reduce(const F& f, Mat<F>& m, std::vector<int>* pivots = nullptr) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int sel = -1;
    for (int i = rank; i < m.rows; ++i)
      if (!f.is_zero(m.at(i, col))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(rank, j));
    auto piv = f.inv(m.at(rank, col));
    for (int j = col; j < m.cols; ++j) m.at(rank, j) = f.mul(piv, m.at(rank, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank) continue;
      auto c = m.at(i, col);
      if (f.is_zero(c)) continue;
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(rank, j)));
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

template <class F>
int mat_rank(const F& f, Mat<F> m) {
  return row_reduce(f, m);
}

// Nullspace basis (as rows of the returned matrix).
template <class F>
Mat<F> nullspace(const F& f, Mat<F> m) {
  int n = m.cols;
  std::vector<int> pivots;
  int rank = row_reduce(f, m, &pivots);
  std::vector<bool> is_piv(n, false);
  for (int c : pivots) is_piv[c] = true;
  Mat<F> ns(n - rank, n, f.zero());
  int row = 0;
  for (int freec = 0; freec < n; ++freec) {
    if (is_piv[freec]) continue;
    ns.at(row, freec) = f.one();
    for (int r = 0; r < rank; ++r)
      ns.at(row, pivots[r]) = f.neg(m.at(r, freec));
    ++row;
  }
  return ns;
}

// Solve m x = b; returns empty optional if inconsistent.  m need not be square.
template <class F>
std::optional<Vec<F>> solve(const F& f, Mat<F> m, Vec<F> b) {
  assert(static_cast<std::size_t>(m.rows) == b.size());
  // augmented elimination
  Mat<F> aug(m.rows, m.cols + 1, f.zero());
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  std::vector<int> pivots;
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int sel = -1;
    for (int i = rank; i < m.rows; ++i)
      if (!f.is_zero(aug.at(i, col))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != rank)
      for (int j = 0; j <= m.cols; ++j) std::swap(aug.at(sel, j), aug.at(rank, j));
    auto piv = f.inv(aug.at(rank, col));
    for (int j = col; j <= m.cols; ++j) aug.at(rank, j) = f.mul(piv, aug.at(rank, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank) continue;
      auto c = aug.at(i, col);
      if (f.is_zero(c)) continue;
      for (int j = col; j <= m.cols; ++j)
        aug.at(i, j) = f.sub(aug.at(i, j), f.mul(c, aug.at(rank, j)));
    }
    pivots.push_back(col);
    ++rank;
  }
  for (int i = rank; i < m.rows; ++i)
    if (!f.is_zero(aug.at(i, m.cols))) return std::nullopt;
  Vec<F> x(m.cols, f.zero());
  for (int r = 0; r < rank; ++r) x[pivots[r]] = aug.at(r, m.cols);
  return x;
}

// Inverse of a square matrix; empty optional when singular.
template <class F>
std::optional<Mat<F>> mat_inverse(const F& f, const Mat<F>& m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  Mat<F> aug(n, 2 * n, f.zero());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  int rank = row_reduce(f, aug);
  if (rank < n) return std::nullopt;
  Mat<F> inv(n, n, f.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

template <class F>
typename F::Elt mat_det(const F& f, Mat<F> m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  auto det = f.one();
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int i = col; i < n; ++i)
      if (!f.is_zero(m.at(i, col))) { sel = i; break; }
    if (sel < 0) return f.zero();
    if (sel != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m.at(col, col));
    auto piv = f.inv(m.at(col, col));
    for (int i = col + 1; i < n; ++i) {
      auto c = f.mul(piv, m.at(i, col));
      if (f.is_zero(c)) continue;
      for (int j = col; j < n; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(col, j)));
    }
  }
  return det;
}

// --------------------------------------------------------------------------
// Incremental rank accumulator: feeds long vectors one at a time, keeping a
// reduced pivot basis.  Used for operator-span dimensions (vectors of length
// dim^2) with early exit.
// --------------------------------------------------------------------------

template <class F>
struct RankAccumulator {
  const F& f;
  int n;  // vector length
  std::vector<Vec<F>> rows;   // reduced, each with a leading 1
  std::vector<int> lead;      // leading column per row
  explicit RankAccumulator(const F& ctx, int length) : f(ctx), n(length) {}
  int rank() const { return static_cast<int>(rows.size()); }
  // Returns true if v was independent (rank grew).
  bool add(Vec<F> v) {
    reduce(v);
    int lc = -1;
    for (int j = 0; j < n; ++j)
      if (!f.is_zero(v[j])) { lc = j; break; }
    if (lc < 0) return false;
    auto piv = f.inv(v[lc]);
    for (int j = lc; j < n; ++j) v[j] = f.mul(piv, v[j]);
    // back-substitute into existing rows
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto c = rows[r][lc];
      if (f.is_zero(c)) continue;
      for (int j = lc; j < n; ++j)
        rows[r][j] = f.sub(rows[r][j], f.mul(c, v[j]));
    }
    // keep rows ordered by leading column
    std::size_t pos = 0;
    while (pos < lead.size() && lead[pos] < lc) ++pos;
    rows.insert(rows.begin() + pos, std::move(v));
    lead.insert(lead.begin() + pos, lc);
    return true;
  }
  // Reduce v against the pivot rows (v becomes the residual).
  void reduce(Vec<F>& v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto c = v[lead[r]];
      if (f.is_zero(c)) continue;
      const auto& row = rows[r];
      for (int j = lead[r]; j < n; ++j) v[j] = f.sub(v[j], f.mul(c, row[j]));
    }
  }
  bool contains(Vec<F> v) const {
    reduce(v);
    for (const auto& e : v)
      if (!f.is_zero(e)) return false;
    return true;
  }
};

template <class F>
Vec<F> mat_flatten(const Mat<F>& m) {
  return m.a;
}

}  // namespace bioct
