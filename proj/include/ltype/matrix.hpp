#pragma once

#include "ltype/numeric.hpp"

#include <cstddef>
#include <initializer_list>

namespace ltype {

template <class T>
struct Mat {
  std::size_t nr = 0, nc = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : nr(r), nc(c), a(r * c) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    nr = rows.size();
    nc = nr ? rows.begin()->size() : 0;
    a.reserve(nr * nc);
    for (const auto& row : rows) {
      if (row.size() != nc) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) a.push_back(x);
    }
  }

  T& operator()(std::size_t r, std::size_t c) { return a[r * nc + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a[r * nc + c]; }

  bool operator==(const Mat& o) const { return nr == o.nr && nc == o.nc && a == o.a; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(a.begin() + r * nc, a.begin() + (r + 1) * nc);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(nr);
    for (std::size_t r = 0; r < nr; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_row(std::size_t r, const std::vector<T>& v) {
    for (std::size_t c = 0; c < nc; ++c) (*this)(r, c) = v[c];
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Mat transposed() const {
    Mat m(nc, nr);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) m(c, r) = (*this)(r, c);
    return m;
  }
};

using MatI = Mat<Int>;
using MatQ = Mat<Rat>;

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  if (x.nc != y.nr) throw std::invalid_argument("matrix product shape mismatch");
  Mat<T> z(x.nr, y.nc);
  for (std::size_t i = 0; i < x.nr; ++i)
    for (std::size_t k = 0; k < x.nc; ++k) {
      const T& v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.nc; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

template <class T>
std::vector<T> operator*(const Mat<T>& m, const std::vector<T>& v) {
  if (m.nc != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<T> out(m.nr);
  for (std::size_t i = 0; i < m.nr; ++i) {
    T s = T(0);
    for (std::size_t j = 0; j < m.nc; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

MatQ to_rat_mat(const MatI& m);
// scales each row separately to integers (for functional matrices)
MatI rows_to_integer(const MatQ& m);

}  // namespace ltype
