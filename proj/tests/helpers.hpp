#pragma once

#include "ltype/dd.hpp"
#include "ltype/linalg.hpp"
#include "ltype/quadform.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace ltype::testing {

using Rng = std::mt19937;

inline Int rand_int(Rng& rng, int lo, int hi) {
  return Int(std::uniform_int_distribution<int>(lo, hi)(rng));
}

// product of random elementary column operations, so always in GL_d(Z); kept
// mild (few steps, shear +-1) because conjugating a form by a skewed basis
// inflates its entries and with them the vector enumerations in the tests
inline MatI random_unimodular(std::size_t d, Rng& rng, std::size_t steps = 6) {
  MatI u = MatI::identity(d);
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) {
      if (rand_int(rng, 0, 1) == 1)
        for (std::size_t k = 0; k < d; ++k) u(k, i) = -u(k, i);
      continue;
    }
    Int t = rand_int(rng, -1, 1);
    for (std::size_t k = 0; k < d; ++k) u(k, i) += t * u(k, j);
  }
  return u;
}

// B^T B for a random square integer B with nonzero determinant
inline QuadForm random_pd_form(std::size_t d, Rng& rng) {
  for (;;) {
    MatI b(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) b(i, j) = rand_int(rng, -2, 2);
    if (det(b) == 0) continue;
    MatQ m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Int s = 0;
        for (std::size_t k = 0; k < d; ++k) s += b(k, i) * b(k, j);
        m(i, j) = s;
      }
    return QuadForm(std::move(m));
  }
}

// positive semidefinite with prescribed rank, conjugated by a random basis
inline QuadForm random_psd_form(std::size_t d, std::size_t rk, Rng& rng) {
  QuadForm blk = random_pd_form(rk, rng);
  MatQ m(d, d);
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < rk; ++j) m(i, j) = blk.m(i, j);
  MatI u = random_unimodular(d, rng);
  return QuadForm(conjugate(m, u));
}

// every extreme ray of a pointed cone by inspecting all (D-1)-subsets of
// facets: rank D-1, one-dimensional kernel, sign fixed to the feasible side
inline std::vector<VecI> brute_force_rays(const HCone& c) {
  const std::size_t d = c.ambient;
  std::set<VecI> out;
  std::vector<std::size_t> idx(c.facets.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<bool> pickmask(c.facets.size(), false);
  if (c.facets.size() + 1 < d) return {};
  std::fill(pickmask.begin(), pickmask.begin() + static_cast<long>(d - 1), true);
  std::sort(pickmask.begin(), pickmask.end());
  do {
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < pickmask.size(); ++i)
      if (pickmask[i]) sub.push_back(i);
    MatQ m(sub.size(), d);
    for (std::size_t r = 0; r < sub.size(); ++r)
      for (std::size_t k = 0; k < d; ++k) m(r, k) = Rat(c.facets[sub[r]][k]);
    std::vector<VecQ> kern = nullspace(m);
    if (kern.size() != 1) continue;
    VecI dir = primitive_direction(kern[0]);
    bool ok_pos = true, ok_neg = true;
    for (const VecI& f : c.facets) {
      Int s = 0;
      for (std::size_t k = 0; k < d; ++k) s += f[k] * dir[k];
      if (s < 0) ok_pos = false;
      if (s > 0) ok_neg = false;
    }
    if (!ok_pos && !ok_neg) continue;
    if (ok_neg && !ok_pos)
      for (Int& x : dir) x = -x;
    out.insert(dir);
  } while (std::next_permutation(pickmask.begin(), pickmask.end()));
  return {out.begin(), out.end()};
}

// random cone kept only when pointed and with at least one ray
inline HCone random_pointed_cone(std::size_t d, std::size_t nfacets, Rng& rng) {
  for (;;) {
    HCone c;
    c.ambient = d;
    for (std::size_t i = 0; i < nfacets; ++i) {
      VecI f(d);
      bool zero = true;
      for (std::size_t k = 0; k < d; ++k) {
        f[k] = rand_int(rng, -3, 3);
        if (f[k] != 0) zero = false;
      }
      if (zero) f[0] = 1;
      make_primitive_signed(f);
      c.facets.push_back(std::move(f));
    }
    if (rank_of_rows(c.facets, d) != d) continue;  // not pointed
    std::vector<VecI> rays = brute_force_rays(c);
    if (rays.empty()) continue;
    return c;
  }
}

inline std::vector<VecI> ray_dirs(const std::vector<Ray>& rays) {
  std::vector<VecI> v;
  v.reserve(rays.size());
  for (const Ray& r : rays) v.push_back(r.dir);
  std::sort(v.begin(), v.end(), VecILess{});
  return v;
}

}  // namespace ltype::testing
