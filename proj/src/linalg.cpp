#include "ltype/linalg.hpp"

#include <algorithm>

namespace ltype {

MatQ to_rat_mat(const MatI& m) {
  MatQ out(m.nr, m.nc);
  for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = Rat(m.a[i]);
  return out;
}

MatI rows_to_integer(const MatQ& m) {
  MatI out(m.nr, m.nc);
  for (std::size_t r = 0; r < m.nr; ++r) {
    VecI row = scale_to_integer(m.row(r));
    out.set_row(r, row);
  }
  return out;
}

// fraction-free row elimination (Bareiss), returns rank
static std::size_t bareiss_rank(MatI m) {
  std::size_t rank = 0;
  Int prev = 1;
  std::size_t nr = m.nr, nc = m.nc;
  std::size_t col = 0;
  for (std::size_t row = 0; row < nr && col < nc; ++col) {
    std::size_t piv = row;
    while (piv < nr && m(piv, col) == 0) ++piv;
    if (piv == nr) continue;
    if (piv != row)
      for (std::size_t c = col; c < nc; ++c) std::swap(m(row, c), m(piv, c));
    for (std::size_t r = row + 1; r < nr; ++r) {
      for (std::size_t c = col + 1; c < nc; ++c) {
        Int t = m(row, col) * m(r, c) - m(r, col) * m(row, c);
        mpz_divexact(m(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(r, col) = 0;
    }
    prev = m(row, col);
    ++row;
    ++rank;
  }
  return rank;
}

std::size_t rank_of(const MatI& m) { return bareiss_rank(m); }

std::size_t rank_of(const MatQ& m) { return bareiss_rank(rows_to_integer(m)); }

std::size_t rank_of_rows(const std::vector<VecI>& rows, std::size_t ncols) {
  MatI m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return bareiss_rank(m);
}

Int det(const MatI& min) {
  if (min.nr != min.nc) throw std::invalid_argument("det: not square");
  std::size_t n = min.nr;
  if (n == 0) return 1;
  MatI m = min;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(piv, c));
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        Int t = m(k, k) * m(r, c) - m(r, k) * m(k, c);
        mpz_divexact(m(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(r, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

Rat det(const MatQ& min) {
  if (min.nr != min.nc) throw std::invalid_argument("det: not square");
  // scale each row to integers and divide the integer determinant back out
  std::size_t n = min.nr;
  if (n == 0) return 1;
  MatI m(n, n);
  Rat scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    Int l = 1;
    for (std::size_t c = 0; c < n; ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), min(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) {
      Rat s = min(r, c) * Rat(l);
      m(r, c) = s.get_num();
    }
    scale *= Rat(l);
  }
  return Rat(det(m)) / scale;
}

std::vector<std::size_t> rref(MatQ& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.nc && row < m.nr; ++col) {
    std::size_t piv = row;
    while (piv < m.nr && m(piv, col) == 0) ++piv;
    if (piv == m.nr) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.nc; ++c) std::swap(m(row, c), m(piv, c));
    Rat inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.nc; ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.nr; ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rat f = m(r, col);
      for (std::size_t c = col; c < m.nc; ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<VecQ> nullspace(const MatQ& min) {
  MatQ m = min;
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.nc, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<VecQ> basis;
  for (std::size_t f = 0; f < m.nc; ++f) {
    if (is_pivot[f]) continue;
    VecQ v(m.nc, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<VecQ> solve(const MatQ& a, const VecQ& b) {
  if (a.nr != b.size()) throw std::invalid_argument("solve: shape mismatch");
  MatQ m(a.nr, a.nc + 1);
  for (std::size_t r = 0; r < a.nr; ++r) {
    for (std::size_t c = 0; c < a.nc; ++c) m(r, c) = a(r, c);
    m(r, a.nc) = b[r];
  }
  std::vector<std::size_t> pivots = rref(m);
  if (!pivots.empty() && pivots.back() == a.nc) return std::nullopt;  // 0 = 1 row
  VecQ x(a.nc, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m(r, a.nc);
  return x;
}

MatQ inverse(const MatQ& min) {
  if (min.nr != min.nc) throw std::invalid_argument("inverse: not square");
  std::size_t n = min.nr;
  MatQ m(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = min(r, c);
    m(r, n + r) = 1;
  }
  std::vector<std::size_t> pivots = rref(m);
  if (pivots.size() != n || pivots[n - 1] != n - 1)
    throw std::invalid_argument("inverse: singular matrix");
  MatQ out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(r, n + c);
  return out;
}

MatI column_echelon_transform(const MatI& min) {
  MatI a = min;
  MatI v = MatI::identity(min.nc);
  std::size_t nc = min.nc;
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.nr; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < nc; ++r) std::swap(v(r, i), v(r, j));
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
    // col_dst -= q * col_src
    if (q == 0) return;
    for (std::size_t r = 0; r < a.nr; ++r) a(r, dst) -= q * a(r, src);
    for (std::size_t r = 0; r < nc; ++r) v(r, dst) -= q * v(r, src);
  };
  std::size_t pos = 0;
  for (std::size_t row = 0; row < a.nr && pos < nc; ++row) {
    bool any = false;
    for (std::size_t j = pos; j < nc; ++j)
      if (a(row, j) != 0) {
        any = true;
        break;
      }
    if (!any) continue;
    // gcd elimination across columns pos..nc-1 on this row
    while (true) {
      std::size_t best = nc;
      for (std::size_t j = pos; j < nc; ++j) {
        if (a(row, j) == 0) continue;
        if (best == nc || mpz_cmpabs(a(row, j).get_mpz_t(), a(row, best).get_mpz_t()) < 0) best = j;
      }
      col_swap(pos, best);
      bool done = true;
      for (std::size_t j = pos + 1; j < nc; ++j) {
        if (a(row, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(row, j).get_mpz_t(), a(row, pos).get_mpz_t());
        col_axpy(j, pos, q);
        if (a(row, j) != 0) done = false;
      }
      if (done) break;
    }
    ++pos;
  }
  return v;
}

bool RankTracker::add_row(VecQ row) {
  if (row.size() != ncols) throw std::invalid_argument("RankTracker: row size");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Rat& f = row[pivots[i]];
    if (f != 0) {
      Rat fv = f;
      for (std::size_t c = 0; c < ncols; ++c) row[c] -= fv * basis[i][c];
    }
  }
  std::size_t p = 0;
  while (p < ncols && row[p] == 0) ++p;
  if (p == ncols) return false;
  Rat inv = 1 / row[p];
  for (std::size_t c = 0; c < ncols; ++c) row[c] *= inv;
  // keep basis ordered by pivot column
  std::size_t at = 0;
  while (at < pivots.size() && pivots[at] < p) ++at;
  basis.insert(basis.begin() + at, std::move(row));
  pivots.insert(pivots.begin() + at, p);
  return true;
}

bool RankTracker::in_span(VecQ row) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Rat& f = row[pivots[i]];
    if (f != 0) {
      Rat fv = f;
      for (std::size_t c = 0; c < ncols; ++c) row[c] -= fv * basis[i][c];
    }
  }
  for (const Rat& x : row)
    if (x != 0) return false;
  return true;
}

}  // namespace ltype
