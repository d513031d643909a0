#pragma once

#include "ltype/linalg.hpp"

namespace ltype {

struct HCone {
  std::size_t ambient = 0;
  std::vector<VecI> facets;   // integer functionals; cone = {x : f_i(x) >= 0}
  bool irredundant = false;
};

struct Ray {
  VecI dir;                        // primitive integer direction
  std::vector<std::size_t> incidence;  // sorted input facet indices with f_i(dir) = 0

  bool operator==(const Ray& o) const { return dir == o.dir; }
};

struct NonPointedError : std::runtime_error {
  VecI lineality;
  explicit NonPointedError(VecI v)
      : std::runtime_error("cone is not pointed"), lineality(std::move(v)) {}
};

struct EmptyConeError : std::runtime_error {
  EmptyConeError() : std::runtime_error("cone has no nonzero ray") {}
};

// all extreme rays, lex-sorted primitive directions
std::vector<Ray> dual_description(const HCone& c);

// one extreme ray found by a lexicographic sequence of exact LPs
Ray initial_ray(const HCone& c);

// rays sharing a 2-face with e; e must be extreme
std::vector<Ray> adjacent_rays(const HCone& c, const Ray& e,
                               std::size_t recursion_threshold = 40);

// full ray list via graph traversal, decomposing large projected subcones
std::vector<Ray> enumerate_rays_recursive(const HCone& c, std::size_t threshold = 40);

struct SkeletonGraph {
  std::size_t nodes = 0;
  std::vector<VecI> rays;                            // canonical order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
};

SkeletonGraph skeleton_graph(const HCone& c);

// true iff removing fewer than k vertices never disconnects g
bool vertex_connectivity_at_least(const SkeletonGraph& g, std::size_t k);

// checks the Ray invariants against the cone; throws on violation
void verify_ray(const HCone& c, const Ray& r);

std::vector<std::size_t> ray_incidence(const HCone& c, const VecI& dir);

// facet inequalities (a, a0), meaning a.x + a0 >= 0, of a full-dimensional
// polytope given by (not necessarily irredundant) points
std::vector<std::pair<VecI, Int>> polytope_facet_inequalities(const std::vector<VecQ>& points);

}  // namespace ltype
