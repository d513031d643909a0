#include "ltype/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ltype::io {

namespace {

bool fits_int64(const Int& v) {
  static const Int lo = Int(INT64_MIN);
  static const Int hi = Int(INT64_MAX);
  return v >= lo && v <= hi;
}

void expect_schema(const json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != schema)
    throw std::runtime_error(std::string("expected schema ") + schema);
}

bool gz_path(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

std::size_t index_from(const json& j) { return j.get<std::size_t>(); }

}  // namespace

json int_json(const Int& v) {
  if (fits_int64(v)) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

Int int_from(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::runtime_error("expected an integer or a decimal string");
}

json rat_json(const Rat& v) {
  if (v.get_den() == 1) return int_json(Int(v.get_num()));
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rat rat_from(const json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return rat_of_string(j.get<std::string>());
  throw std::runtime_error("expected a rational as number or \"p/q\" string");
}

json ivec_json(const VecI& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_json(x));
  return a;
}

VecI ivec_from(const json& j) {
  VecI v;
  v.reserve(j.size());
  for (const json& x : j) v.push_back(int_from(x));
  return v;
}

json qvec_json(const VecQ& v) {
  json a = json::array();
  for (const Rat& x : v) a.push_back(rat_json(x));
  return a;
}

VecQ qvec_from(const json& j) {
  VecQ v;
  v.reserve(j.size());
  for (const json& x : j) v.push_back(rat_from(x));
  return v;
}

json imat_json(const MatI& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.nr; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.nc; ++k) row.push_back(int_json(m(i, k)));
    a.push_back(std::move(row));
  }
  return a;
}

MatI imat_from(const json& j) {
  const std::size_t nr = j.size();
  const std::size_t nc = nr == 0 ? 0 : j.at(0).size();
  MatI m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (j.at(i).size() != nc) throw std::runtime_error("matrix rows have unequal lengths");
    for (std::size_t k = 0; k < nc; ++k) m(i, k) = int_from(j.at(i).at(k));
  }
  return m;
}

json qmat_json(const MatQ& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.nr; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.nc; ++k) row.push_back(rat_json(m(i, k)));
    a.push_back(std::move(row));
  }
  return a;
}

MatQ qmat_from(const json& j) {
  const std::size_t nr = j.size();
  const std::size_t nc = nr == 0 ? 0 : j.at(0).size();
  MatQ m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (j.at(i).size() != nc) throw std::runtime_error("matrix rows have unequal lengths");
    for (std::size_t k = 0; k < nc; ++k) m(i, k) = rat_from(j.at(i).at(k));
  }
  return m;
}

json form_json(const QuadForm& q) {
  json j;
  j["schema"] = "ltype.form/1";
  j["dim"] = q.dim;
  j["gram"] = qmat_json(q.m);
  return j;
}

QuadForm form_from(const json& j) {
  expect_schema(j, "ltype.form/1");
  QuadForm q(qmat_from(j.at("gram")));
  if (q.dim != index_from(j.at("dim"))) throw std::runtime_error("form dim does not match gram size");
  return q;
}

json star_json(const DeloneStar& s) {
  json j;
  j["schema"] = "ltype.star/1";
  j["dim"] = s.dim;
  j["form"] = form_json(s.form);
  json cells = json::array();
  for (const DeloneCell& c : s.cells) {
    json jc;
    json verts = json::array();
    for (const VecI& v : c.vertices) verts.push_back(ivec_json(v));
    jc["vertices"] = std::move(verts);
    jc["center"] = qvec_json(c.center);
    jc["sq_radius"] = rat_json(c.sq_radius);
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j;
}

DeloneStar star_from(const json& j) {
  expect_schema(j, "ltype.star/1");
  DeloneStar s;
  s.dim = index_from(j.at("dim"));
  s.form = form_from(j.at("form"));
  for (const json& jc : j.at("cells")) {
    DeloneCell c;
    for (const json& jv : jc.at("vertices")) c.vertices.push_back(ivec_from(jv));
    c.center = qvec_from(jc.at("center"));
    c.sq_radius = rat_from(jc.at("sq_radius"));
    s.cells.push_back(std::move(c));
  }
  return s;
}

json polytope_json(const VPolytope& p) {
  json j;
  j["schema"] = "ltype.polytope/1";
  j["ambient_dim"] = p.ambient;
  json verts = json::array();
  for (const VecQ& v : p.vertices) verts.push_back(qvec_json(v));
  j["vertices"] = std::move(verts);
  return j;
}

VPolytope polytope_from(const json& j) {
  expect_schema(j, "ltype.polytope/1");
  VPolytope p;
  p.ambient = index_from(j.at("ambient_dim"));
  for (const json& jv : j.at("vertices")) p.vertices.push_back(qvec_from(jv));
  return p;
}

json cone_json(const SecondaryCone& c) {
  json j;
  j["schema"] = "ltype.secondary-cone/1";
  j["dim"] = c.d;
  j["ambient_dim"] = c.ambient;
  json eqs = json::array();
  for (const FormFunctional& f : c.equalities) eqs.push_back(ivec_json(f.c));
  j["equalities"] = std::move(eqs);
  json facets = json::array();
  for (const FormFunctional& f : c.facets) facets.push_back(ivec_json(f.c));
  j["facets"] = std::move(facets);
  j["witness"] = form_json(c.witness);
  return j;
}

SecondaryCone cone_from(const json& j) {
  expect_schema(j, "ltype.secondary-cone/1");
  SecondaryCone c;
  c.d = index_from(j.at("dim"));
  c.ambient = index_from(j.at("ambient_dim"));
  for (const json& je : j.at("equalities")) c.equalities.emplace_back(c.d, ivec_from(je));
  for (const json& jf : j.at("facets")) c.facets.emplace_back(c.d, ivec_from(jf));
  c.witness = form_from(j.at("witness"));
  return c;
}

json hcone_json(const HCone& c, const std::vector<MatI>& group) {
  json j;
  j["schema"] = "ltype.hcone/1";
  j["ambient_dim"] = c.ambient;
  json facets = json::array();
  for (const VecI& f : c.facets) facets.push_back(ivec_json(f));
  j["facets"] = std::move(facets);
  j["irredundant"] = c.irredundant;
  if (!group.empty()) {
    json g = json::array();
    for (const MatI& m : group) g.push_back(imat_json(m));
    j["group"] = std::move(g);
  }
  return j;
}

HConeFile hcone_from(const json& j) {
  expect_schema(j, "ltype.hcone/1");
  HConeFile f;
  f.cone.ambient = index_from(j.at("ambient_dim"));
  for (const json& jf : j.at("facets")) f.cone.facets.push_back(ivec_from(jf));
  if (j.contains("irredundant")) f.cone.irredundant = j.at("irredundant").get<bool>();
  if (j.contains("group"))
    for (const json& jm : j.at("group")) f.group.push_back(imat_from(jm));
  return f;
}

json group_json(const std::vector<MatI>& generators) {
  json j;
  j["schema"] = "ltype.group/1";
  json g = json::array();
  for (const MatI& m : generators) g.push_back(imat_json(m));
  j["generators"] = std::move(g);
  return j;
}

std::vector<MatI> group_from(const json& j) {
  expect_schema(j, "ltype.group/1");
  std::vector<MatI> g;
  for (const json& jm : j.at("generators")) g.push_back(imat_from(jm));
  return g;
}

json registry_json(const OrbitRegistry& r) {
  json j;
  j["schema"] = "ltype.registry/1";
  j["ambient_dim"] = r.ambient;
  j["complete"] = r.complete;
  j["early_stopped"] = r.early_stopped;
  json orbits = json::array();
  for (const OrbitRecord& o : r.orbits) {
    json jo;
    jo["dir"] = ivec_json(o.rep.dir);
    jo["incidence"] = o.rep.incidence;
    jo["orbit_size"] = o.orbit_size;
    jo["treated"] = o.treated;
    orbits.push_back(std::move(jo));
  }
  j["orbits"] = std::move(orbits);
  return j;
}

OrbitRegistry registry_from(const json& j) {
  expect_schema(j, "ltype.registry/1");
  OrbitRegistry r;
  r.ambient = index_from(j.at("ambient_dim"));
  r.complete = j.at("complete").get<bool>();
  r.early_stopped = j.at("early_stopped").get<bool>();
  for (const json& jo : j.at("orbits")) {
    OrbitRecord o;
    o.rep.dir = ivec_from(jo.at("dir"));
    o.rep.incidence = jo.at("incidence").get<std::vector<std::size_t>>();
    o.orbit_size = index_from(jo.at("orbit_size"));
    o.treated = jo.at("treated").get<bool>();
    r.orbits.push_back(std::move(o));
  }
  return r;
}

json census_json(const CensusState& st) {
  json j;
  j["schema"] = "ltype.census-state/1";
  j["dim"] = st.dim;
  j["complete"] = st.complete;
  json domains = json::array();
  for (const DomainRecord& dom : st.domains) {
    json jd;
    jd["id"] = dom.id;
    jd["star"] = star_json(dom.star);
    jd["cone"] = cone_json(dom.cone);
    json aut;
    aut["order"] = int_json(dom.aut.order);
    json gens = json::array();
    for (const MatI& g : dom.aut.generators) gens.push_back(imat_json(g));
    aut["generators"] = std::move(gens);
    jd["aut"] = std::move(aut);
    json nbrs = json::array();
    for (const NeighborLink& l : dom.neighbors) {
      json jl;
      switch (l.kind) {
        case NeighborLink::Kind::Pending:
          jl["kind"] = "pending";
          break;
        case NeighborLink::Kind::Degenerate:
          jl["kind"] = "degenerate";
          break;
        case NeighborLink::Kind::Neighbor:
          jl["kind"] = "neighbor";
          jl["id"] = l.id;
          jl["map"] = imat_json(l.map);
          break;
      }
      nbrs.push_back(std::move(jl));
    }
    jd["neighbors"] = std::move(nbrs);
    if (dom.rays) jd["rays"] = registry_json(*dom.rays);
    json prof = json::array();
    for (const auto& kv : dom.rank_profile) prof.push_back(json::array({kv.first, kv.second}));
    jd["rank_profile"] = std::move(prof);
    domains.push_back(std::move(jd));
  }
  j["domains"] = std::move(domains);
  json frontier = json::array();
  for (const auto& [id, facet] : st.frontier) frontier.push_back(json::array({id, facet}));
  j["frontier"] = std::move(frontier);
  json rigid = json::array();
  for (const QuadForm& q : st.rigid_forms) rigid.push_back(form_json(q));
  j["rigid_forms"] = std::move(rigid);
  return j;
}

CensusState census_from(const json& j) {
  expect_schema(j, "ltype.census-state/1");
  CensusState st;
  st.dim = index_from(j.at("dim"));
  st.complete = j.at("complete").get<bool>();
  for (const json& jd : j.at("domains")) {
    DomainRecord dom;
    dom.id = index_from(jd.at("id"));
    dom.star = star_from(jd.at("star"));
    dom.cone = cone_from(jd.at("cone"));
    dom.aut.order = int_from(jd.at("aut").at("order"));
    for (const json& jg : jd.at("aut").at("generators")) dom.aut.generators.push_back(imat_from(jg));
    for (const json& jl : jd.at("neighbors")) {
      NeighborLink l;
      const std::string kind = jl.at("kind").get<std::string>();
      if (kind == "pending") {
        l.kind = NeighborLink::Kind::Pending;
      } else if (kind == "degenerate") {
        l.kind = NeighborLink::Kind::Degenerate;
      } else if (kind == "neighbor") {
        l.kind = NeighborLink::Kind::Neighbor;
        l.id = index_from(jl.at("id"));
        l.map = imat_from(jl.at("map"));
      } else {
        throw std::runtime_error("unknown neighbor kind '" + kind + "'");
      }
      dom.neighbors.push_back(std::move(l));
    }
    if (jd.contains("rays")) dom.rays = registry_from(jd.at("rays"));
    for (const json& kv : jd.at("rank_profile"))
      dom.rank_profile[index_from(kv.at(0))] = index_from(kv.at(1));
    st.domains.push_back(std::move(dom));
  }
  for (const json& jf : j.at("frontier"))
    st.frontier.emplace_back(index_from(jf.at(0)), index_from(jf.at(1)));
  for (const json& jq : j.at("rigid_forms")) st.rigid_forms.push_back(form_from(jq));
  return st;
}

std::string read_text(const std::string& path) {
  if (gz_path(path)) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof(buf))) > 0) out.append(buf, static_cast<std::size_t>(n));
    bool bad = n < 0;
    gzclose(f);
    if (bad) throw std::runtime_error("gzip read error on " + path);
    return out;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  if (gz_path(path)) {
    gzFile f = gzopen(tmp.c_str(), "wb9");
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    if (!data.empty() &&
        gzwrite(f, data.data(), static_cast<unsigned>(data.size())) != static_cast<int>(data.size())) {
      gzclose(f);
      std::remove(tmp.c_str());
      throw std::runtime_error("gzip write error on " + tmp);
    }
    gzclose(f);
  } else {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    f.close();
    if (!f) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write error on " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json_atomic(const std::string& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t k = 0; k < t.columns.size(); ++k)
    out << (k ? "," : "") << t.columns[k];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
    out << "\n";
  }
  return out.str();
}

std::string to_aligned(const Table& t) {
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (std::size_t k = 0; k < t.columns.size(); ++k) width[k] = t.columns[k].size();
  for (const auto& row : t.rows)
    for (std::size_t k = 0; k < row.size() && k < width.size(); ++k)
      width[k] = std::max(width[k], row[k].size());
  std::ostringstream out;
  if (!t.name.empty()) out << t.name << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out << (k == 1 ? " | " : "  ");
      out << std::string(width[k] - cells[k].size(), ' ') << cells[k];
    }
    out << "\n";
  };
  line(t.columns);
  std::size_t total = width.empty() ? 0 : width[0] + 3;
  for (std::size_t k = 1; k < width.size(); ++k) total += width[k] + (k > 1 ? 2 : 0);
  out << std::string(total, '-') << "\n";
  for (const auto& row : t.rows) line(row);
  return out.str();
}

std::vector<Table> distribution_output(const DistributionTables& t) {
  auto dense = [](const std::map<std::size_t, std::size_t>& h, std::size_t lo, std::size_t hi,
                  const std::string& label) {
    std::vector<std::string> row{label};
    for (std::size_t n = lo; n <= hi; ++n) {
      auto it = h.find(n);
      row.push_back(std::to_string(it == h.end() ? 0 : it->second));
    }
    return row;
  };
  auto header = [](std::size_t lo, std::size_t hi) {
    std::vector<std::string> cols{"n"};
    for (std::size_t n = lo; n <= hi; ++n) cols.push_back(std::to_string(n));
    return cols;
  };
  auto range = [](const std::map<std::size_t, std::size_t>& h) {
    return h.empty() ? std::pair<std::size_t, std::size_t>{0, 0}
                     : std::pair<std::size_t, std::size_t>{h.begin()->first, h.rbegin()->first};
  };

  std::vector<Table> tables;
  {
    auto [lo, hi] = range(t.facet_hist);
    tables.push_back({"L1: domains by facet count", header(lo, hi),
                      {dense(t.facet_hist, lo, hi, "L1(n)")}});
  }
  {
    auto [lo, hi] = range(t.ray_hist);
    tables.push_back(
        {"L2: domains by extreme ray count", header(lo, hi), {dense(t.ray_hist, lo, hi, "L2(n)")}});
  }
  {
    std::size_t hi = 0;
    for (const auto& h : t.rank_hist)
      if (!h.empty()) hi = std::max(hi, h.rbegin()->first);
    Table tab{"R_k: domains by number of rank-k extreme rays", header(0, hi), {}};
    for (std::size_t r = 1; r < t.rank_hist.size(); ++r) {
      bool nonzero = false;
      for (const auto& kv : t.rank_hist[r])
        if (kv.first != 0 && kv.second != 0) nonzero = true;
      if (!nonzero) continue;
      tab.rows.push_back(dense(t.rank_hist[r], 0, hi, "R" + std::to_string(r) + "(n)"));
    }
    tables.push_back(std::move(tab));
  }
  return tables;
}

}  // namespace ltype::io
