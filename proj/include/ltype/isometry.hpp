#pragma once

#include "ltype/lattice.hpp"

#include <functional>

namespace ltype {

// first A in GL_d(Z) with A^T Q1 A = Q2, if any (deterministic search order)
std::optional<MatI> find_isometry(const QuadForm& q1, const QuadForm& q2);

// enumerate every A with A^T Q1 A = Q2; return false from the callback to stop
void for_each_isometry(const QuadForm& q1, const QuadForm& q2,
                       const std::function<bool(const MatI&)>& cb);

struct GroupInfo {
  std::vector<MatI> generators;
  Int order;
};

GroupInfo automorphisms(const QuadForm& q);

// basis of the space of symmetric matrices fixed by every generator,
// scaled to primitive integer form vectors
std::vector<QuadForm> fixed_subspace(const std::vector<MatI>& gens, std::size_t d);

struct MatIHash {
  std::size_t operator()(const MatI& m) const { return hash_vec(m.a); }
};

// closure of a generator list inside a finite matrix group
std::vector<MatI> group_closure(const std::vector<MatI>& gens, std::size_t d,
                                std::size_t limit = 0);

}  // namespace ltype
