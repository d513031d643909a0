#include "ltype/quadform.hpp"

namespace ltype {

QuadForm::QuadForm(MatQ g) : dim(g.nr), m(std::move(g)) {
  if (m.nr != m.nc) throw std::invalid_argument("QuadForm: not square");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (m(i, j) != m(j, i)) throw std::invalid_argument("QuadForm: not symmetric");
}

QuadForm QuadForm::zero(std::size_t d) { return QuadForm(MatQ(d, d)); }

QuadForm QuadForm::identity(std::size_t d) { return QuadForm(MatQ::identity(d)); }

Rat QuadForm::eval(const VecI& x) const { return eval(to_rat_vec(x)); }

Rat QuadForm::eval(const VecQ& x) const {
  if (x.size() != dim) throw std::invalid_argument("QuadForm::eval: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    s += m(i, i) * x[i] * x[i];
    for (std::size_t j = i + 1; j < dim; ++j) {
      if (x[j] == 0) continue;
      s += 2 * m(i, j) * x[i] * x[j];
    }
  }
  return s;
}

VecQ QuadForm::apply(const VecQ& x) const { return m * x; }

VecQ QuadForm::apply(const VecI& x) const { return m * to_rat_vec(x); }

VecQ form_to_vec(const QuadForm& q) {
  std::size_t d = q.dim;
  VecQ v;
  v.reserve(form_space_dim(d));
  for (std::size_t i = 0; i < d; ++i) v.push_back(q.m(i, i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) v.push_back(q.m(i, j));
  return v;
}

QuadForm vec_to_form(std::size_t d, const VecQ& v) {
  if (v.size() != form_space_dim(d)) throw std::invalid_argument("vec_to_form: size mismatch");
  MatQ m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = v[i];
  std::size_t k = d;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      m(i, j) = v[k];
      m(j, i) = v[k];
      ++k;
    }
  return QuadForm(std::move(m));
}

Rat FormFunctional::pair(const QuadForm& q) const {
  if (q.dim != d) throw std::invalid_argument("FormFunctional::pair: dim mismatch");
  return pair_vec(form_to_vec(q));
}

Rat FormFunctional::pair_vec(const VecQ& formvec) const {
  if (formvec.size() != c.size())
    throw std::invalid_argument("FormFunctional::pair_vec: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < d; ++i) s += Rat(c[i]) * formvec[i];
  for (std::size_t i = d; i < c.size(); ++i) s += 2 * Rat(c[i]) * formvec[i];
  return s;
}

FormFunctional rank_one_functional(const VecI& v) {
  std::size_t d = v.size();
  VecI c;
  c.reserve(form_space_dim(d));
  for (std::size_t i = 0; i < d; ++i) c.push_back(v[i] * v[i]);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) c.push_back(v[i] * v[j]);
  return FormFunctional(d, std::move(c));
}

VecI functional_weighted_coeffs(const FormFunctional& f) {
  VecI out = f.c;
  for (std::size_t i = f.d; i < out.size(); ++i) out[i] *= 2;
  return out;
}

VecQ functional_weighted_coeffs_rat(const FormFunctional& f) {
  return to_rat_vec(functional_weighted_coeffs(f));
}

MatQ conjugate(const MatQ& q, const MatI& a) {
  MatQ ar = to_rat_mat(a);
  return ar.transposed() * q * ar;
}

QuadForm conjugate(const QuadForm& q, const MatI& a) {
  if (a.nr != q.dim || a.nc != q.dim) throw std::invalid_argument("conjugate: shape mismatch");
  return QuadForm(conjugate(q.m, a));
}

bool is_unimodular(const MatI& a) {
  if (a.nr != a.nc) return false;
  Int d = det(a);
  return d == 1 || d == -1;
}

MatQ gram_action_matrix(const MatI& a) {
  std::size_t d = a.nr;
  if (a.nc != d) throw std::invalid_argument("gram_action_matrix: not square");
  std::size_t dd = form_space_dim(d);
  // index helpers for the (diagonal first, then i<j) coordinate order
  auto idx = [d](std::size_t i, std::size_t j) -> std::size_t {
    if (i == j) return i;
    if (i > j) std::swap(i, j);
    // offset of pair (i,j), i<j
    return d + (i * (2 * d - i - 1)) / 2 + (j - i - 1);
  };
  MatQ m(dd, dd);
  // (A^T Q A)_{ij} = sum_{k<=l} q_kl * (A_ki A_lj + [k!=l] A_li A_kj)
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      std::size_t row = idx(i, j);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k; l < d; ++l) {
          Int coef = a(k, i) * a(l, j);
          if (k != l) coef += a(l, i) * a(k, j);
          if (coef != 0) m(row, idx(k, l)) += Rat(coef);
        }
    }
  return m;
}

std::size_t rank(const QuadForm& q) { return rank_of(q.m); }

// symmetric Schur-complement elimination; psd iff no negative pivot appears and
// every zero diagonal pivot has a zero residual row
static bool psd_test(const QuadForm& q, bool strict) {
  std::size_t d = q.dim;
  MatQ m = q.m;
  for (std::size_t k = 0; k < d; ++k) {
    if (m(k, k) < 0) return false;
    if (m(k, k) == 0) {
      if (strict) return false;
      for (std::size_t j = k + 1; j < d; ++j)
        if (m(k, j) != 0) return false;
      continue;
    }
    for (std::size_t r = k + 1; r < d; ++r) {
      if (m(r, k) == 0) continue;
      Rat f = m(r, k) / m(k, k);
      for (std::size_t c = k + 1; c < d; ++c) m(r, c) -= f * m(k, c);
      m(r, k) = 0;
    }
    for (std::size_t c = k + 1; c < d; ++c) m(k, c) = 0;
    // restore symmetry of the trailing block
    for (std::size_t r = k + 1; r < d; ++r)
      for (std::size_t c = r + 1; c < d; ++c) m(c, r) = m(r, c);
  }
  return true;
}

bool is_pd(const QuadForm& q) { return q.dim > 0 && psd_test(q, true); }

bool is_psd(const QuadForm& q) { return psd_test(q, false); }

KernelSplit kernel_split(const QuadForm& q) {
  if (!is_psd(q)) throw std::invalid_argument("kernel_split: form is not positive semidefinite");
  std::size_t d = q.dim;
  std::size_t r = rank(q);
  if (r == d) return KernelSplit{MatI::identity(d), q};
  // scale the whole matrix by one common denominator; kernel is unchanged
  Int l = 1;
  for (const Rat& x : q.m.a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  MatI mi(d, d);
  for (std::size_t i = 0; i < d * d; ++i) {
    Rat s = q.m.a[i] * Rat(l);
    mi.a[i] = s.get_num();
  }
  MatI u = column_echelon_transform(mi);
  MatQ g = conjugate(q.m, u);
  MatQ b(r, r);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i < r && j < r)
        b(i, j) = g(i, j);
      else if (g(i, j) != 0)
        throw std::logic_error("kernel_split: transform failed to isolate the kernel");
    }

  // greedy size reduction of the block basis; the echelon complement can be
  // arbitrarily skewed, which cripples later enumeration over the block
  auto nearest = [](const Rat& x) {
    Rat s = x + Rat(1, 2);
    Int t;
    mpz_fdiv_q(t.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    return t;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (i == j) continue;
        Int t = nearest(b(i, j) / b(j, j));
        if (t == 0) continue;
        Rat nd = b(i, i) - 2 * Rat(t) * b(i, j) + Rat(t) * Rat(t) * b(j, j);
        if (nd >= b(i, i)) continue;
        for (std::size_t k = 0; k < d; ++k) u(k, i) -= t * u(k, j);
        for (std::size_t k = 0; k < r; ++k) {
          if (k == i) continue;
          b(i, k) -= Rat(t) * b(j, k);
          b(k, i) = b(i, k);
        }
        b(i, i) = nd;
        changed = true;
      }
  }
  for (std::size_t i = 0; i + 1 < r; ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < r; ++j)
      if (b(j, j) < b(best, best)) best = j;
    if (best != i) {
      for (std::size_t k = 0; k < d; ++k) std::swap(u(k, i), u(k, best));
      for (std::size_t k = 0; k < r; ++k) std::swap(b(i, k), b(best, k));
      for (std::size_t k = 0; k < r; ++k) std::swap(b(k, i), b(k, best));
    }
  }

  QuadForm block(std::move(b));
  if (!is_pd(block)) throw std::logic_error("kernel_split: leading block is not positive definite");
  return KernelSplit{std::move(u), std::move(block)};
}

}  // namespace ltype
