#include "ltype/census.hpp"

#include "ltype/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ltype {

namespace {

std::vector<std::size_t> cell_profile(const DeloneStar& s) {
  std::vector<std::size_t> v;
  v.reserve(s.cells.size());
  for (const DeloneCell& c : s.cells) v.push_back(c.vertices.size());
  std::sort(v.begin(), v.end());
  return v;
}

MatI to_int_mat(const MatQ& m) {
  MatI r(m.nr, m.nc);
  for (std::size_t i = 0; i < m.nr; ++i)
    for (std::size_t j = 0; j < m.nc; ++j) {
      if (m(i, j).get_den() != 1) throw std::logic_error("to_int_mat: entry is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

QuadForm ray_form(std::size_t d, const VecI& dir) { return vec_to_form(d, to_rat_vec(dir)); }

std::size_t insert_domain(CensusState& st, DeloneStar star, SecondaryCone cone, GroupInfo aut) {
  if (!cone.equalities.empty())
    throw std::logic_error("census: domain cone is not full-dimensional");
  DomainRecord rec;
  rec.id = st.domains.size();
  rec.star = std::move(star);
  rec.cone = std::move(cone);
  rec.aut = std::move(aut);
  rec.neighbors.assign(rec.cone.facets.size(), NeighborLink{});
  for (std::size_t k = 0; k < rec.cone.facets.size(); ++k) st.frontier.emplace_back(rec.id, k);
  st.domains.push_back(std::move(rec));
  return st.domains.size() - 1;
}

QuadForm make_form(std::size_t d, std::initializer_list<int> entries) {
  MatQ m(d, d);
  auto it = entries.begin();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = *it++;
  return QuadForm(std::move(m));
}

QuadForm form_sum(const QuadForm& a, const QuadForm& b, const Rat& t) {
  MatQ m(a.dim, a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) m(i, j) = a.m(i, j) + t * b.m(i, j);
  return QuadForm(std::move(m));
}

bool same_cells(const DeloneStar& a, const DeloneStar& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    if (a.cells[i].vertices != b.cells[i].vertices) return false;
  return true;
}

}  // namespace

QuadForm principal_form(std::size_t d) {
  if (d == 0) throw std::invalid_argument("principal_form: dimension must be positive");
  MatQ m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = (i == j) ? Rat(d) : Rat(-1);
  QuadForm q(std::move(m));
  DeloneStar s = delone_star(q);
  for (const DeloneCell& c : s.cells)
    if (c.vertices.size() != d + 1)
      throw std::logic_error("principal_form: Delone subdivision is not a triangulation");
  return q;
}

CensusState enumerate_domains(std::size_t d, std::size_t max_domains) {
  if (d < 1 || d > 6) throw std::invalid_argument("enumerate_domains: dimension must be 1..6");
  if (d == 6 && max_domains == 0)
    throw std::invalid_argument("enumerate_domains: dimension 6 needs a domain cap");
  CensusState st;
  st.dim = d;
  DeloneStar s = delone_star(principal_form(d));
  SecondaryCone c = secondary_cone(s);
  GroupInfo aut = triangulation_automorphisms(s);
  insert_domain(st, std::move(s), std::move(c), std::move(aut));
  resume_enumeration(st, max_domains);
  return st;
}

bool resume_enumeration(CensusState& st, std::size_t max_domains) {
  std::vector<std::vector<std::size_t>> profiles;
  profiles.reserve(st.domains.size());
  for (const DomainRecord& dom : st.domains) profiles.push_back(cell_profile(dom.star));
  while (!st.frontier.empty()) {
    auto [id, fi] = st.frontier.front();
    if (st.domains.at(id).neighbors.at(fi).kind != NeighborLink::Kind::Pending) {
      st.frontier.pop_front();
      continue;
    }
    FlipResult fr;
    bool degenerate = false;
    try {
      const DomainRecord& dom = st.domains[id];
      fr = flip_ex(dom.star, dom.cone, dom.cone.facets[fi]);
    } catch (const DegenerateFacetError&) {
      degenerate = true;
    }
    if (degenerate) {
      st.domains[id].neighbors[fi].kind = NeighborLink::Kind::Degenerate;
      st.frontier.pop_front();
      continue;
    }
    if (!fr.cone.equalities.empty())
      throw std::logic_error("census: flip left the set of triangulations");

    // cheap invariants first, group order next, isomorphism search last
    std::vector<std::size_t> profile = cell_profile(fr.star);
    GroupInfo aut;
    bool have_aut = false;
    std::size_t match = st.domains.size();
    MatI match_map;
    for (const DomainRecord& cand : st.domains) {
      if (cand.cone.facets.size() != fr.cone.facets.size()) continue;
      if (profiles[cand.id] != profile) continue;
      if (!have_aut) {
        aut = triangulation_automorphisms(fr.star);
        have_aut = true;
      }
      if (cand.aut.order != aut.order) continue;
      if (auto t = triangulation_isomorphic(fr.star, cand.star)) {
        match = cand.id;
        match_map = std::move(*t);
        break;
      }
    }
    if (match == st.domains.size()) {
      if (max_domains != 0 && st.domains.size() >= max_domains) {
        st.complete = false;
        return false;
      }
      if (!have_aut) aut = triangulation_automorphisms(fr.star);
      profiles.push_back(std::move(profile));
      match = insert_domain(st, std::move(fr.star), std::move(fr.cone), std::move(aut));
      match_map = MatI::identity(st.dim);
    }
    NeighborLink& link = st.domains[id].neighbors[fi];
    link.kind = NeighborLink::Kind::Neighbor;
    link.id = match;
    link.map = std::move(match_map);
    st.frontier.pop_front();
  }
  st.complete = true;
  return true;
}

const OrbitRegistry& domain_rays(CensusState& st, std::size_t id, const AdOptions& opt) {
  DomainRecord& dom = st.domains.at(id);
  if (dom.rays) return *dom.rays;
  ReducedCone rc = reduce_cone(dom.cone);
  if (rc.cone.ambient != dom.cone.ambient)
    throw std::logic_error("domain_rays: domain is not full-dimensional");
  SymmetryAction act;
  act.ambient = rc.cone.ambient;
  for (const MatI& g : dom.aut.generators) act.generators.push_back(to_int_mat(gram_action_matrix(g)));
  OrbitRegistry reg = adjacency_decomposition(rc.cone, act, opt);
  dom.rank_profile.clear();
  for (const OrbitRecord& o : reg.orbits)
    dom.rank_profile[rank(ray_form(st.dim, o.rep.dir))] += o.orbit_size;
  dom.rays = std::move(reg);
  return *dom.rays;
}

void all_domain_rays(CensusState& st, const AdOptions& opt) {
  for (std::size_t id = 0; id < st.domains.size(); ++id) domain_rays(st, id, opt);
}

const std::vector<QuadForm>& rigid_census(CensusState& st) {
  all_domain_rays(st);
  struct Entry {
    QuadForm q;
    Rat det_val;
    std::map<Rat, std::size_t> profile;
  };
  std::vector<Entry> reps;
  for (DomainRecord& dom : st.domains)
    for (const OrbitRecord& o : dom.rays->orbits) {
      QuadForm q = ray_form(st.dim, o.rep.dir);
      if (rank(q) != st.dim) continue;
      Rat dv = det(q.m);
      std::map<Rat, std::size_t> prof = norm_profile(q, 3);
      bool known = false;
      for (const Entry& e : reps)
        if (e.det_val == dv && e.profile == prof && find_isometry(e.q, q)) {
          known = true;
          break;
        }
      if (!known) reps.push_back({std::move(q), std::move(dv), std::move(prof)});
    }
  st.rigid_forms.clear();
  for (Entry& e : reps) {
    if (rigidity_degree(e.q) != 1)
      throw std::logic_error("rigid_census: a nondegenerate extreme ray failed the rigidity recheck");
    st.rigid_forms.push_back(std::move(e.q));
  }
  return st.rigid_forms;
}

DistributionTables distribution_tables(CensusState& st) {
  all_domain_rays(st);
  DistributionTables t;
  t.rank_hist.assign(st.dim + 1, {});
  for (const DomainRecord& dom : st.domains) {
    ++t.facet_hist[dom.cone.facets.size()];
    ++t.ray_hist[dom.rays->total_rays()];
    for (std::size_t r = 1; r <= st.dim; ++r) {
      auto it = dom.rank_profile.find(r);
      ++t.rank_hist[r][it == dom.rank_profile.end() ? 0 : it->second];
    }
  }
  if (st.dim == 5)
    for (std::size_t r : {std::size_t{2}, std::size_t{3}})
      for (const auto& kv : t.rank_hist[r])
        if (kv.first != 0)
          throw std::logic_error("distribution_tables: unexpected extreme ray of rank 2 or 3");
  return t;
}

RidgeReport ridge_check(const SecondaryCone& cone) {
  RidgeReport rep;
  for (std::size_t i = 0; i < cone.facets.size(); ++i) {
    SecondaryCone wall;
    wall.d = cone.d;
    wall.ambient = cone.ambient;
    wall.equalities = cone.equalities;
    wall.equalities.push_back(cone.facets[i]);
    for (std::size_t j = 0; j < cone.facets.size(); ++j)
      if (j != i) wall.facets.push_back(cone.facets[j]);
    wall.witness = cone.witness;
    ReducedCone rc = reduce_cone(wall);
    const std::size_t n = rc.cone.ambient;
    if (n < 2) continue;

    // restrictions of distinct facets can coincide on the wall
    HCone h;
    h.ambient = n;
    for (const VecI& f : rc.cone.facets)
      if (std::find(h.facets.begin(), h.facets.end(), f) == h.facets.end()) h.facets.push_back(f);
    std::vector<Ray> rays = dual_description(h);
    MatQ nb = to_rat_mat(rc.nullbasis);
    std::vector<bool> degenerate(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      QuadForm q = vec_to_form(cone.d, nb * to_rat_vec(rays[r].dir));
      degenerate[r] = rank(q) < cone.d;
    }
    for (std::size_t j = 0; j < h.facets.size(); ++j) {
      std::vector<VecI> incident;
      bool has_degenerate = false;
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (std::binary_search(rays[r].incidence.begin(), rays[r].incidence.end(), j)) {
          incident.push_back(rays[r].dir);
          if (degenerate[r]) has_degenerate = true;
        }
      if (rank_of_rows(incident, n) != n - 1) continue;  // the functional cuts no ridge
      ++rep.ridges;
      if (!has_degenerate) ++rep.bad;
    }
  }
  return rep;
}

TreeReport tree_check(const CensusState& st) {
  TreeReport t;
  for (const DomainRecord& dom : st.domains) {
    RidgeReport r = ridge_check(dom.cone);
    ++t.domains;
    t.ridges += r.ridges;
    t.bad += r.bad;
  }
  t.pass = (t.bad == 0);
  return t;
}

std::vector<CheckResult> verify_dim6_forms(bool with_minkowski) {
  std::vector<CheckResult> out;
  auto add = [&out](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };
  const QuadForm e6 = fixtures::e6_star();
  const QuadForm r1 = fixtures::r1();
  const QuadForm r2 = fixtures::r2();

  std::size_t rd = rigidity_degree(e6);
  add("rigidity_degree(E6*) == 1", rd == 1, "computed " + std::to_string(rd));
  rd = rigidity_degree(r1);
  add("rigidity_degree(R1) == 1", rd == 1, "computed " + std::to_string(rd));

  std::size_t rk = rank(r2);
  add("rank(R2) == 5", rk == 5, "computed " + std::to_string(rk));
  rd = rigidity_degree(r2);
  add("R2 block rigidity == 1", rd == 1,
      rd == 1 ? "computed 1"
              : "computed " + std::to_string(rd) +
                    ": every perturbation of the definite block along its cone span keeps the "
                    "Delone subdivision, so the published value 1 is not reproduced");

  const std::pair<const char*, const QuadForm*> dirs[] = {{"R1", &r1}, {"R2", &r2}};
  for (const auto& [name, dir] : dirs) {
    DeloneStar base = delone_star(form_sum(e6, *dir, Rat(1, 2)));
    bool constant = true;
    for (int k = 4; k <= 8 && constant; k *= 2)
      constant = same_cells(base, delone_star(form_sum(e6, *dir, Rat(1, k))));
    add(std::string("star(E6* + t ") + name + ") constant for t in {1/2,1/4,1/8}", constant,
        constant ? "one subdivision" : "subdivision changes with t");
  }

  if (with_minkowski) {
    VPolytope lhs = dv_polytope_ambient(form_sum(e6, r2, Rat(1)));
    VPolytope rhs = minkowski_sum(dv_polytope_ambient(e6), dv_polytope_ambient(r2));
    std::vector<VecQ> a = lhs.vertices, b = rhs.vertices;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    add("DV(E6* + R2) == DV(E6*) + DV(R2)", a == b,
        std::to_string(lhs.vertices.size()) + " vs " + std::to_string(rhs.vertices.size()) +
            " vertices");
  }
  return out;
}

namespace fixtures {

QuadForm e6_star() {
  return make_form(6, {4, 1, 2, 2, -1, 1,    //
                       1, 4, 2, 2, 2, 1,     //
                       2, 2, 4, 1, 1, 2,     //
                       2, 2, 1, 4, 1, 2,     //
                       -1, 2, 1, 1, 4, 2,    //
                       1, 1, 2, 2, 2, 4});
}

QuadForm r1() {
  return make_form(6, {12, 3, 6, 6, -3, 3,   //
                       3, 7, 4, 4, 3, 2,     //
                       6, 4, 8, 3, 1, 4,     //
                       6, 4, 3, 8, 1, 4,     //
                       -3, 3, 1, 1, 7, 3,    //
                       3, 2, 4, 4, 3, 7});
}

QuadForm r2() {
  return make_form(6, {0, 0, 0, 0, 0, 0,     //
                       0, 5, 2, 2, 3, 1,     //
                       0, 2, 4, 0, 2, 2,     //
                       0, 2, 0, 4, 2, 2,     //
                       0, 3, 2, 2, 5, 3,     //
                       0, 1, 2, 2, 3, 5});
}

QuadForm d4() {
  return make_form(4, {2, -1, 0, 0,          //
                       -1, 2, -1, -1,        //
                       0, -1, 2, 0,          //
                       0, -1, 0, 2});
}

QuadForm a_gram(std::size_t d) {
  MatQ m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = (i == j) ? 2 : 1;
  return QuadForm(std::move(m));
}

}  // namespace fixtures

}  // namespace ltype
