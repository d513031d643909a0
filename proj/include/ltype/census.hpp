#pragma once

#include "ltype/adjdecomp.hpp"
#include "ltype/seccone.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>

namespace ltype {

// Voronoi's principal form of the first kind, (d+1)I - J; its Delone
// subdivision is the simplicial refinement of the cube tiling, so its
// secondary cone is full-dimensional (checked at construction)
QuadForm principal_form(std::size_t d);

struct NeighborLink {
  enum class Kind { Pending, Neighbor, Degenerate };
  Kind kind = Kind::Pending;
  std::size_t id = 0;
  // carries the cells of the flipped star onto the stored star of domain
  // `id`; the actual cone beyond the facet is map^T (that domain's cone) map
  MatI map;
};

struct DomainRecord {
  std::size_t id = 0;
  DeloneStar star;     // star of the witness form
  SecondaryCone cone;  // no equalities: the domain is full-dimensional
  GroupInfo aut;       // subdivision automorphisms
  std::vector<NeighborLink> neighbors;  // parallel to cone.facets
  std::optional<OrbitRegistry> rays;
  std::map<std::size_t, std::size_t> rank_profile;  // form rank -> ray count
};

struct CensusState {
  std::size_t dim = 0;
  std::vector<DomainRecord> domains;
  std::deque<std::pair<std::size_t, std::size_t>> frontier;  // (domain, facet)
  bool complete = false;
  std::vector<QuadForm> rigid_forms;
};

// breadth-first walk of the flip graph from the principal form, keeping one
// representative per equivalence class of subdivisions; with a cap the walk
// stops before inserting a domain past the cap and leaves the frontier intact
CensusState enumerate_domains(std::size_t d, std::size_t max_domains = 0);

// continue a partial walk; true when the frontier has been exhausted
bool resume_enumeration(CensusState& st, std::size_t max_domains = 0);

// extreme rays of one domain's cone by adjacency decomposition under its
// automorphism group acting on form coordinates; fills rays and rank_profile
const OrbitRegistry& domain_rays(CensusState& st, std::size_t id, const AdOptions& opt = {});

void all_domain_rays(CensusState& st, const AdOptions& opt = {});

// nondegenerate extreme rays over all domains, classified up to isometry;
// every representative is re-verified to span a one-dimensional domain
const std::vector<QuadForm>& rigid_census(CensusState& st);

struct DistributionTables {
  std::map<std::size_t, std::size_t> facet_hist;  // facet count -> domains
  std::map<std::size_t, std::size_t> ray_hist;    // ray count -> domains
  // rank_hist[r]: rank-r ray count -> domains, for r = 1..d
  std::vector<std::map<std::size_t, std::size_t>> rank_hist;
};

DistributionTables distribution_tables(CensusState& st);

// ridges of one domain cone (facets of its facet cones), counting those
// whose extreme rays are all nondegenerate
struct RidgeReport {
  std::size_t ridges = 0;
  std::size_t bad = 0;
};
RidgeReport ridge_check(const SecondaryCone& cone);

struct TreeReport {
  std::size_t domains = 0;
  std::size_t ridges = 0;
  std::size_t bad = 0;
  bool pass = false;
};

// every ridge of every domain must contain a degenerate extreme ray
TreeReport tree_check(const CensusState& st);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// checks on the built-in six-dimensional forms; the Minkowski sum check is
// costly and off by default
std::vector<CheckResult> verify_dim6_forms(bool with_minkowski = false);

namespace fixtures {
QuadForm e6_star();
QuadForm r1();
QuadForm r2();
QuadForm d4();
QuadForm a_gram(std::size_t d);  // I + J
}  // namespace fixtures

}  // namespace ltype
