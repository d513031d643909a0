#pragma once

#include <vector>

#include "ltype/polytope.hpp"
#include "ltype/quadform.hpp"

namespace ltype {

// full-dimensional Delone cell with its empty-sphere certificate
struct DeloneCell {
  std::vector<VecI> vertices;  // lattice points on the sphere, sorted
  VecQ center;                 // circumcenter omega
  Rat sq_radius;               // rho = Q[v - omega] for every vertex
};

struct DeloneStar {
  std::size_t dim = 0;
  QuadForm form;
  std::vector<DeloneCell> cells;  // every cell contains the origin; sorted
};

// all Delone cells incident to the origin, each certified by a closest
// vector computation around its center
DeloneStar delone_star(const QuadForm& q);

// re-run the certificates of an existing star against its own form
bool star_certified(const DeloneStar& s);

// Dirichlet-Voronoi polytope in dual coordinates x^t Q; for degenerate
// forms the polytope lives in the rank(Q)-dimensional image
VPolytope dv_polytope(const QuadForm& q);

// same polytope embedded back into the ambient d-dimensional dual space
VPolytope dv_polytope_ambient(const QuadForm& q);

}  // namespace ltype
