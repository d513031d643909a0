#pragma once

#include <utility>
#include <vector>

#include "ltype/numeric.hpp"

namespace ltype {

// polytope as an irredundant vertex list, canonically sorted
struct VPolytope {
  std::size_t ambient = 0;
  std::vector<VecQ> vertices;
};

// hull of an arbitrary point list; filters non-vertices by exact LP
VPolytope make_polytope(std::size_t ambient, std::vector<VecQ> points);

// face of p maximizing f, together with the support value eta(p, f)
std::pair<VPolytope, Rat> support_face(const VPolytope& p, const VecQ& f);

VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b);

// identical normal fans
bool strongly_isomorphic(const VPolytope& a, const VPolytope& b);

}  // namespace ltype
