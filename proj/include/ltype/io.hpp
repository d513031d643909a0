#pragma once

#include "ltype/census.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace ltype::io {

// insertion order preserved so that dumps are reproducible
using json = nlohmann::ordered_json;

// integers that fit in 64 bits stay JSON numbers, anything else becomes a
// decimal string; non-integer rationals are "p/q" strings
json int_json(const Int& v);
Int int_from(const json& j);
json rat_json(const Rat& v);
Rat rat_from(const json& j);

json ivec_json(const VecI& v);
VecI ivec_from(const json& j);
json qvec_json(const VecQ& v);
VecQ qvec_from(const json& j);
json imat_json(const MatI& m);
MatI imat_from(const json& j);
json qmat_json(const MatQ& m);
MatQ qmat_from(const json& j);

json form_json(const QuadForm& q);  // ltype.form/1
QuadForm form_from(const json& j);

json star_json(const DeloneStar& s);  // ltype.star/1
DeloneStar star_from(const json& j);

json polytope_json(const VPolytope& p);  // ltype.polytope/1
VPolytope polytope_from(const json& j);

json cone_json(const SecondaryCone& c);  // ltype.secondary-cone/1
SecondaryCone cone_from(const json& j);

struct HConeFile {
  HCone cone;
  std::vector<MatI> group;
};
json hcone_json(const HCone& c, const std::vector<MatI>& group = {});  // ltype.hcone/1
HConeFile hcone_from(const json& j);

json group_json(const std::vector<MatI>& generators);  // ltype.group/1
std::vector<MatI> group_from(const json& j);

json registry_json(const OrbitRegistry& r);  // ltype.registry/1
OrbitRegistry registry_from(const json& j);

json census_json(const CensusState& st);  // ltype.census-state/1
CensusState census_from(const json& j);

// a ".gz" suffix selects gzip on both ends; writes go to a temporary file
// in the same directory followed by a rename
std::string read_text(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& data);
json read_json(const std::string& path);
void write_json_atomic(const std::string& path, const json& j);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& t);
std::string to_aligned(const Table& t);

// L1, L2 and the rank table, columns padded to dense key ranges
std::vector<Table> distribution_output(const DistributionTables& t);

}  // namespace ltype::io
