#pragma once

#include "ltype/dd.hpp"
#include "ltype/delone.hpp"
#include "ltype/isometry.hpp"

#include <optional>

namespace ltype {

// closed cone of forms sharing the star's Delone subdivision, cut out inside
// the span {equalities = 0} by the irredundant wall inequalities {facets >= 0};
// the witness is a form strictly inside
struct SecondaryCone {
  std::size_t d = 0;
  std::size_t ambient = 0;  // d(d+1)/2
  std::vector<FormFunctional> equalities;
  std::vector<FormFunctional> facets;
  QuadForm witness;
};

// thrown by flip when every form on the far side of the facet is singular
struct DegenerateFacetError : std::runtime_error {
  DegenerateFacetError()
      : std::runtime_error("no neighbor beyond this facet: the wall consists of degenerate forms") {}
};

// lexicographic pulling triangulation of a lattice polytope given by its
// vertices (sorted); simplices come back as sorted vertex lists.  Restricting
// to a face yields the pulling triangulation of that face, so the triangles
// of adjacent cells meet face to face.
std::vector<std::vector<VecI>> pull_triangulation(const std::vector<VecI>& vertices);

SecondaryCone secondary_cone(const DeloneStar& star);

// dimension of the space of coplanarity equalities' solutions for the Delone
// subdivision of the positive definite part of q
std::size_t rigidity_degree(const QuadForm& q);

// a form strictly inside the cone (max-min-slack vertex of a normalized slice)
QuadForm interior_form(const SecondaryCone& cone);

// dyadic rounding of a strictly interior form toward small entries, staying
// strictly interior; returns q unchanged when no rounding validates
QuadForm simplify_form_in_cone(const SecondaryCone& cone, const QuadForm& q);

// the cone restricted to coordinates on the equality kernel
struct ReducedCone {
  MatI nullbasis;  // ambient x n, columns a primitive basis of the kernel
  HCone cone;      // facet functionals in the reduced coordinates
};
ReducedCone reduce_cone(const SecondaryCone& c);

// Delone star of a form just beyond the given facet of the star's cone
DeloneStar flip(const DeloneStar& star, const FormFunctional& facet);

struct FlipResult {
  DeloneStar star;
  SecondaryCone cone;
};
FlipResult flip_ex(const DeloneStar& star, const SecondaryCone& cone, const FormFunctional& facet);

// sum over cells of the rank-one forms of all pairwise vertex differences;
// positive definite, and equivariant under any map between subdivisions
QuadForm characteristic_form(const DeloneStar& s);

// unimodular T carrying the cells of s1 exactly onto the cells of s2, if any
std::optional<MatI> triangulation_isomorphic(const DeloneStar& s1, const DeloneStar& s2);

// the full group of unimodular maps preserving the subdivision
GroupInfo triangulation_automorphisms(const DeloneStar& s);

}  // namespace ltype
