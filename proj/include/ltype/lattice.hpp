#pragma once

#include "ltype/quadform.hpp"

#include <functional>
#include <map>

namespace ltype {

// decomposition Q[x] = sum_i diag[i] * (x_i + sum_{j>i} l(i,j) x_j)^2 of a
// positive definite form
struct LdlPd {
  std::size_t dim = 0;
  MatQ l;
  VecQ diag;
};

LdlPd ldl_decompose(const QuadForm& q);  // throws unless positive definite

// all nonzero integer vectors v with Q[v] <= c, lexicographically sorted
std::vector<VecI> vectors_below(const QuadForm& q, const Rat& c);

// all lattice vectors closest to the rational point t in the metric of Q
std::vector<VecI> closest_vectors(const QuadForm& q, const VecQ& t);

// squared distance from t to the lattice
Rat closest_distance(const QuadForm& q, const VecQ& t);

// the first k nonzero values taken by Q together with their vector counts
std::map<Rat, std::size_t> norm_profile(const QuadForm& q, std::size_t k);

}  // namespace ltype
