// Small dense matrices over an arbitrary exact coefficient ring.
// Ranks are tiny (<= 4 in every paper example), so determinants and
// inverses use cofactor expansion / adjugates, which stay valid over
// non-field rings as long as the determinant is invertible.
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace dmkh {

template <typename T>
struct Mat {
  int n = 0, m = 0;
  std::vector<T> a;  // row-major

  Mat() = default;
  Mat(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
  const T& operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * m + j];
  }

  static Mat identity(int r, const T& one) {
    Mat I(r, r);
    for (int i = 0; i < r; ++i) I(i, i) = one;
    return I;
  }

  Mat operator+(const Mat& o) const {
    Mat r(n, m);
    for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] + o.a[k];
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r(n, m);
    for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] - o.a[k];
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (m != o.n) throw std::invalid_argument("Mat: shape mismatch");
    Mat r(n, o.m);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < m; ++k) {
        const T& x = (*this)(i, k);
        for (int j = 0; j < o.m; ++j) r(i, j) = r(i, j) + x * o(k, j);
      }
    return r;
  }
  Mat scaled(const T& s) const {
    Mat r(n, m);
    for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] * s;
    return r;
  }
  Mat map(const std::function<T(const T&)>& f) const {
    Mat r(n, m);
    for (size_t k = 0; k < a.size(); ++k) r.a[k] = f(a[k]);
    return r;
  }
  bool operator==(const Mat& o) const { return n == o.n && m == o.m && a == o.a; }

  Mat minor_at(int row, int col) const {
    Mat r(n - 1, m - 1);
    for (int i = 0, ri = 0; i < n; ++i) {
      if (i == row) continue;
      for (int j = 0, rj = 0; j < m; ++j) {
        if (j == col) continue;
        r(ri, rj) = (*this)(i, j);
        ++rj;
      }
      ++ri;
    }
    return r;
  }
};

template <typename T>
T mat_det(const Mat<T>& M) {
  if (M.n != M.m) throw std::invalid_argument("Mat: det of non-square");
  if (M.n == 0) throw std::invalid_argument("Mat: det of empty");
  if (M.n == 1) return M(0, 0);
  if (M.n == 2) return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  T acc = M(0, 0) * mat_det(M.minor_at(0, 0));
  for (int j = 1; j < M.m; ++j) {
    T term = M(0, j) * mat_det(M.minor_at(0, j));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Adjugate inverse; requires T::inv() on the determinant.
template <typename T>
Mat<T> mat_inv(const Mat<T>& M) {
  if (M.n == 1) {
    Mat<T> r(1, 1);
    r(0, 0) = M(0, 0).inv();
    return r;
  }
  T det = mat_det(M);
  T dinv = det.inv();
  Mat<T> r(M.n, M.n);
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j) {
      T cof = mat_det(M.minor_at(j, i));
      r(i, j) = ((i + j) % 2 == 0) ? cof * dinv : -(cof * dinv);
    }
  return r;
}

}  // namespace dmkh
