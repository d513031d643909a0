#pragma once

#include "ltype/linalg.hpp"

namespace ltype {

// symmetric rational matrix interpreted as the Gram matrix of a quadratic form
struct QuadForm {
  std::size_t dim = 0;
  MatQ m;

  QuadForm() = default;
  explicit QuadForm(MatQ g);
  static QuadForm zero(std::size_t d);
  static QuadForm identity(std::size_t d);

  Rat operator()(std::size_t i, std::size_t j) const { return m(i, j); }
  Rat eval(const VecI& x) const;   // x^T Q x
  Rat eval(const VecQ& x) const;
  VecQ apply(const VecQ& x) const;  // Q x
  VecQ apply(const VecI& x) const;
  bool operator==(const QuadForm& o) const { return dim == o.dim && m == o.m; }
};

// number of independent entries of a symmetric d x d matrix
inline std::size_t form_space_dim(std::size_t d) { return d * (d + 1) / 2; }

// coordinates (q_11, ..., q_dd, q_12, q_13, ..., q_{d-1,d})
VecQ form_to_vec(const QuadForm& q);
QuadForm vec_to_form(std::size_t d, const VecQ& v);

// functional with weight 1 on diagonal coordinates and 2 off the diagonal,
// so that pairing the rank-one functional of v with Q gives Q[v]
struct FormFunctional {
  std::size_t d = 0;
  VecI c;  // length d(d+1)/2, same coordinate order as form_to_vec

  FormFunctional() = default;
  FormFunctional(std::size_t dim, VecI coeffs) : d(dim), c(std::move(coeffs)) {}
  Rat pair(const QuadForm& q) const;
  Rat pair_vec(const VecQ& formvec) const;
  bool operator==(const FormFunctional& o) const { return d == o.d && c == o.c; }
};

FormFunctional rank_one_functional(const VecI& v);
// coefficients of the functional against plain form coordinates (off-diagonal doubled)
VecI functional_weighted_coeffs(const FormFunctional& f);
VecQ functional_weighted_coeffs_rat(const FormFunctional& f);

MatQ conjugate(const MatQ& q, const MatI& a);        // A^T Q A
QuadForm conjugate(const QuadForm& q, const MatI& a);
bool is_unimodular(const MatI& a);

// matrix of the map x(Q) -> x(A^T Q A) on form coordinates
MatQ gram_action_matrix(const MatI& a);

std::size_t rank(const QuadForm& q);
bool is_pd(const QuadForm& q);
bool is_psd(const QuadForm& q);

// for psd Q: unimodular U with U^T Q U = diag(B, 0), B positive definite
// of size rank(Q); kernel columns come last
struct KernelSplit {
  MatI u;
  QuadForm block;
};
KernelSplit kernel_split(const QuadForm& q);

}  // namespace ltype
