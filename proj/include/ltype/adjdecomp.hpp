#pragma once

#include <functional>
#include <vector>

#include "ltype/dd.hpp"
#include "ltype/matrix.hpp"

namespace ltype {

// group acting on the ambient space by unimodular integer matrices; every
// generator must permute the facet functionals up to positive scaling
struct SymmetryAction {
  std::size_t ambient = 0;
  std::vector<MatI> generators;
};

struct OrbitRecord {
  Ray rep;                    // lex-smallest primitive direction in the orbit
  std::size_t orbit_size = 1;
  bool treated = false;
};

struct OrbitRegistry {
  std::size_t ambient = 0;
  std::vector<OrbitRecord> orbits;  // sorted by representative direction
  bool complete = false;            // the ray list is provably complete
  bool early_stopped = false;       // stopped by the connectivity bound

  std::size_t total_rays() const;
};

struct AdOptions {
  bool strict_balinski = false;
  std::size_t recursion_threshold = 40;
  // called after every snapshot_every treated orbits, for resumable runs
  std::function<void(const OrbitRegistry&)> snapshot;
  std::size_t snapshot_every = 1;
  const OrbitRegistry* resume_from = nullptr;
};

// orbits of extreme rays, exploring one representative per orbit
OrbitRegistry adjacency_decomposition(const HCone& c, const SymmetryAction& g,
                                      const AdOptions& opt = {});

// all primitive directions in the orbit of dir
std::vector<VecI> ray_orbit(const SymmetryAction& g, const VecI& dir);

// expand every orbit of a complete registry into the full lex-sorted ray list
std::vector<Ray> expand_registry(const HCone& c, const SymmetryAction& g,
                                 const OrbitRegistry& reg);

}  // namespace ltype
