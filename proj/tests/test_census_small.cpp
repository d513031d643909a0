#include <doctest.h>

#include "helpers.hpp"
#include "ltype/census.hpp"
#include "ltype/io.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>

using namespace ltype;
using namespace ltype::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ltype_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("principal forms") {
  CHECK(principal_form(1).m == MatQ{{1}});
  CHECK(principal_form(2).m == MatQ{{2, -1}, {-1, 2}});
  // same lattice as I + J
  CHECK(find_isometry(principal_form(2), fixtures::a_gram(2)).has_value());
  for (std::size_t d = 1; d <= 4; ++d) {
    DeloneStar s = delone_star(principal_form(d));
    for (const DeloneCell& c : s.cells) CHECK(c.vertices.size() == d + 1);
    CHECK(secondary_cone(s).equalities.empty());
  }
}

TEST_CASE("census in one dimension") {
  CensusState st = enumerate_domains(1);
  CHECK(st.complete);
  REQUIRE(st.domains.size() == 1);
  REQUIRE(st.domains[0].cone.facets.size() == 1);
  CHECK(st.domains[0].neighbors[0].kind == NeighborLink::Kind::Degenerate);
  CHECK(rigid_census(st).size() == 1);
}

TEST_CASE("census in two dimensions") {
  CensusState st = enumerate_domains(2);
  CHECK(st.complete);
  REQUIRE(st.domains.size() == 1);
  const DomainRecord& dom = st.domains[0];
  CHECK(dom.cone.facets.size() == 3);
  CHECK(dom.aut.order == 12);
  domain_rays(st, 0);
  CHECK(st.domains[0].rays->total_rays() == 3);
  CHECK(st.domains[0].rank_profile == std::map<std::size_t, std::size_t>{{1, 3}});
  CHECK(rigid_census(st).empty());

  DistributionTables t = distribution_tables(st);
  CHECK(t.facet_hist == std::map<std::size_t, std::size_t>{{3, 1}});
  CHECK(t.ray_hist == std::map<std::size_t, std::size_t>{{3, 1}});
  REQUIRE(t.rank_hist.size() == 3);  // index 0 unused
  CHECK(t.rank_hist[1] == std::map<std::size_t, std::size_t>{{3, 1}});
  CHECK(t.rank_hist[2] == std::map<std::size_t, std::size_t>{{0, 1}});
}

TEST_CASE("census in three dimensions") {
  CensusState st = enumerate_domains(3);
  CHECK(st.complete);
  REQUIRE(st.domains.size() == 1);
  CHECK(st.domains[0].cone.facets.size() == 6);
  domain_rays(st, 0);
  CHECK(st.domains[0].rays->total_rays() == 6);
  CHECK(st.domains[0].rank_profile == std::map<std::size_t, std::size_t>{{1, 6}});
  CHECK(rigid_census(st).empty());
  TreeReport tree = tree_check(st);
  CHECK(tree.pass);
  CHECK(tree.domains == 1);
}

TEST_CASE("census in four dimensions") {
  CensusState st = enumerate_domains(4);
  CHECK(st.complete);
  REQUIRE(st.domains.size() == 3);
  for (const DomainRecord& dom : st.domains) {
    CHECK(dom.cone.facets.size() == 10);
    CHECK(dom.cone.equalities.empty());
    for (const DeloneCell& c : dom.star.cells) CHECK(c.vertices.size() == 5);
  }
  all_domain_rays(st);
  for (const DomainRecord& dom : st.domains) CHECK(dom.rays->total_rays() == 10);

  const std::vector<QuadForm>& rigid = rigid_census(st);
  REQUIRE(rigid.size() == 1);
  auto iso = find_isometry(rigid[0], fixtures::d4());
  REQUIRE(iso.has_value());
  CHECK(conjugate(rigid[0], *iso) == fixtures::d4());

  VPolytope dv = dv_polytope(rigid[0]);
  CHECK(dv.vertices.size() == 24);
  CHECK(polytope_facet_inequalities(dv.vertices).size() == 24);

  TreeReport tree = tree_check(st);
  CHECK(tree.pass);
  CHECK(tree.domains == 3);
  CHECK(tree.bad == 0);
}

TEST_CASE("neighbor links carry the flip geometry") {
  CensusState st = enumerate_domains(3);
  resume_enumeration(st);
  auto check_links = [&](CensusState& s, std::size_t id) {
    const DomainRecord& dom = s.domains[id];
    for (std::size_t i = 0; i < dom.neighbors.size(); ++i) {
      const NeighborLink& nl = dom.neighbors[i];
      if (nl.kind != NeighborLink::Kind::Neighbor) continue;
      QuadForm other = conjugate(s.domains[nl.id].cone.witness, nl.map);
      CHECK(dom.cone.facets[i].pair(other) < 0);
      DeloneStar flipped = flip(dom.star, dom.cone.facets[i]);
      DeloneStar direct = delone_star(other);
      REQUIRE(direct.cells.size() == flipped.cells.size());
      for (std::size_t k = 0; k < direct.cells.size(); ++k)
        CHECK(direct.cells[k].vertices == flipped.cells[k].vertices);
    }
  };
  check_links(st, 0);
  CensusState st4 = enumerate_domains(4);
  check_links(st4, 0);
  check_links(st4, 1);
}

TEST_CASE("capped runs resume to the identical state") {
  CensusState full = enumerate_domains(4);
  all_domain_rays(full);
  rigid_census(full);
  std::string want = io::census_json(full).dump(2);

  CensusState part = enumerate_domains(4, 1);
  CHECK(!part.complete);
  CHECK(part.domains.size() == 1);
  CHECK(!part.frontier.empty());

  // freeze to json, thaw, continue
  CensusState thawed = io::census_from(io::census_json(part));
  CHECK(resume_enumeration(thawed));
  CHECK(thawed.complete);
  all_domain_rays(thawed);
  rigid_census(thawed);
  CHECK(io::census_json(thawed).dump(2) == want);

  // a second resume is a no-op
  CHECK(resume_enumeration(thawed));
  CHECK(io::census_json(thawed).dump(2) == want);
}

TEST_CASE("json scalar conventions") {
  CHECK(io::int_json(Int(42)).is_number_integer());
  CHECK(io::int_json(Int("9223372036854775807")).is_number_integer());
  io::json big = io::int_json(Int("9223372036854775808"));
  REQUIRE(big.is_string());
  CHECK(io::int_from(big) == Int("9223372036854775808"));
  CHECK(io::int_from(io::json(-7)) == Int(-7));

  CHECK(io::rat_json(Rat(3)) == io::json(3));
  io::json r = io::rat_json(Rat(-3, 7));
  REQUIRE(r.is_string());
  CHECK(r.get<std::string>() == "-3/7");
  CHECK(io::rat_from(r) == Rat(-3, 7));
  CHECK_THROWS(io::rat_from(io::json("1/0")));
}

TEST_CASE("structured round trips") {
  Rng rng(401);
  QuadForm q = random_pd_form(3, rng);
  CHECK(io::form_from(io::form_json(q)) == q);

  DeloneStar s = delone_star(q);
  DeloneStar s2 = io::star_from(io::star_json(s));
  CHECK(s2.form == s.form);
  REQUIRE(s2.cells.size() == s.cells.size());
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    CHECK(s2.cells[i].vertices == s.cells[i].vertices);
    CHECK(s2.cells[i].center == s.cells[i].center);
    CHECK(s2.cells[i].sq_radius == s.cells[i].sq_radius);
  }

  SecondaryCone c = secondary_cone(s);
  SecondaryCone c2 = io::cone_from(io::cone_json(c));
  CHECK(c2.witness == c.witness);
  CHECK(c2.facets == c.facets);
  CHECK(c2.equalities == c.equalities);

  VPolytope p = dv_polytope(q);
  VPolytope p2 = io::polytope_from(io::polytope_json(p));
  CHECK(p2.ambient == p.ambient);
  CHECK(p2.vertices == p.vertices);

  // double dump is byte-stable
  CHECK(io::census_json(io::census_from(io::census_json(enumerate_domains(2)))).dump() ==
        io::census_json(enumerate_domains(2)).dump());
}

TEST_CASE("hcone and registry files") {
  HCone c;
  c.ambient = 3;
  c.facets = {{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}};
  std::vector<MatI> group = {MatI{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
  io::HConeFile hf = io::hcone_from(io::hcone_json(c, group));
  CHECK(hf.cone.ambient == 3);
  CHECK(hf.cone.facets == c.facets);
  REQUIRE(hf.group.size() == 1);
  CHECK(hf.group[0] == group[0]);

  SymmetryAction g{3, group};
  OrbitRegistry reg = adjacency_decomposition(c, g);
  OrbitRegistry reg2 = io::registry_from(io::registry_json(reg));
  CHECK(reg2.complete == reg.complete);
  CHECK(reg2.early_stopped == reg.early_stopped);
  REQUIRE(reg2.orbits.size() == reg.orbits.size());
  for (std::size_t i = 0; i < reg.orbits.size(); ++i) {
    CHECK(reg2.orbits[i].rep.dir == reg.orbits[i].rep.dir);
    CHECK(reg2.orbits[i].rep.incidence == reg.orbits[i].rep.incidence);
    CHECK(reg2.orbits[i].orbit_size == reg.orbits[i].orbit_size);
    CHECK(reg2.orbits[i].treated == reg.orbits[i].treated);
  }
}

TEST_CASE("atomic file io with optional gzip") {
  TempDir tmp;
  io::json j = io::census_json(enumerate_domains(2));

  std::string plain = tmp.file("state.json");
  io::write_json_atomic(plain, j);
  CHECK(io::read_json(plain) == j);
  CHECK(!fs::exists(plain + ".tmp"));

  std::string gz = tmp.file("state.json.gz");
  io::write_json_atomic(gz, j);
  CHECK(io::read_json(gz) == j);
  // really compressed: shorter than the plain dump
  CHECK(fs::file_size(gz) < fs::file_size(plain));

  std::ofstream bad(tmp.file("bad.json"));
  bad << "{ not json";
  bad.close();
  CHECK_THROWS_WITH_AS(io::read_json(tmp.file("bad.json")),
                       doctest::Contains("bad.json"), std::runtime_error);
  CHECK_THROWS(io::read_text(tmp.file("missing.json")));
}

TEST_CASE("tables render as csv and aligned text") {
  io::Table t;
  t.name = "demo";
  t.columns = {"n", "count"};
  t.rows = {{"1", "10"}, {"2", "3"}};
  CHECK(io::to_csv(t) == "n,count\n1,10\n2,3\n");
  std::string aligned = io::to_aligned(t);
  CHECK(aligned.find("n | count") != std::string::npos);

  CensusState st = enumerate_domains(2);
  all_domain_rays(st);
  std::vector<io::Table> out = io::distribution_output(distribution_tables(st));
  REQUIRE(out.size() == 3);
  CHECK(out[0].columns == std::vector<std::string>{"n", "3"});
  CHECK(out[0].rows == std::vector<std::vector<std::string>>{{"L1(n)", "1"}});
}
