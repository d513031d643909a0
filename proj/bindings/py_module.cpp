#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ltype/census.hpp"
#include "ltype/io.hpp"

namespace py = pybind11;
using namespace ltype;

namespace {

py::object py_int(const Int& v) {
  return py::module_::import("builtins").attr("int")(py::str(v.get_str()));
}

py::object py_rat(const Rat& v) {
  if (v.get_den() == 1) return py_int(Int(v.get_num()));
  return py::module_::import("fractions")
      .attr("Fraction")(py::str(v.get_num().get_str() + "/" + v.get_den().get_str()));
}

Rat rat_from_py(py::handle h) {
  Rat r(py::str(h).cast<std::string>());
  r.canonicalize();
  return r;
}

QuadForm form_from_py(py::handle rows) {
  std::vector<std::vector<Rat>> g;
  for (py::handle row : rows) {
    g.emplace_back();
    for (py::handle x : row) g.back().push_back(rat_from_py(x));
  }
  const std::size_t d = g.size();
  MatQ m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (g[i].size() != d) throw std::invalid_argument("gram matrix must be square");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = g[i][j];
  }
  return QuadForm(std::move(m));
}

py::list gram_to_py(const QuadForm& q) {
  py::list rows;
  for (std::size_t i = 0; i < q.dim; ++i) {
    py::list row;
    for (std::size_t j = 0; j < q.dim; ++j) row.append(py_rat(q.m(i, j)));
    rows.append(std::move(row));
  }
  return rows;
}

py::list ivec_to_py(const VecI& v) {
  py::list l;
  for (const Int& x : v) l.append(py_int(x));
  return l;
}

py::list imat_to_py(const MatI& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.nr; ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.nc; ++j) row.append(py_int(m(i, j)));
    rows.append(std::move(row));
  }
  return rows;
}

MatI imat_from_py(py::handle rows) {
  std::vector<VecI> g;
  for (py::handle row : rows) {
    g.emplace_back();
    for (py::handle x : row) g.back().push_back(Int(py::str(x).cast<std::string>()));
  }
  MatI m(g.size(), g.empty() ? 0 : g[0].size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != m.nc) throw std::invalid_argument("matrix rows have unequal lengths");
    for (std::size_t j = 0; j < m.nc; ++j) m(i, j) = g[i][j];
  }
  return m;
}

py::dict hist_to_py(const std::map<std::size_t, std::size_t>& h) {
  py::dict d;
  for (const auto& kv : h) d[py::int_(kv.first)] = py::int_(kv.second);
  return d;
}

}  // namespace

PYBIND11_MODULE(_ltype, m) {
  m.doc() = "exact arithmetic for Delone subdivisions, secondary cones and L-type domains";

  py::class_<QuadForm>(m, "QuadForm")
      .def(py::init(&form_from_py), py::arg("gram"))
      .def_readonly("dim", &QuadForm::dim)
      .def("gram", &gram_to_py)
      .def("__eq__", [](const QuadForm& a, const QuadForm& b) { return a == b; })
      .def("__repr__", [](const QuadForm& q) {
        return "QuadForm(" + py::str(gram_to_py(q)).cast<std::string>() + ")";
      });

  py::class_<DeloneStar>(m, "DeloneStar")
      .def_readonly("dim", &DeloneStar::dim)
      .def_readonly("form", &DeloneStar::form)
      .def("cells",
           [](const DeloneStar& s) {
             py::list cells;
             for (const DeloneCell& c : s.cells) {
               py::list verts;
               for (const VecI& v : c.vertices) verts.append(ivec_to_py(v));
               cells.append(std::move(verts));
             }
             return cells;
           })
      .def("__len__", [](const DeloneStar& s) { return s.cells.size(); });

  py::class_<SecondaryCone>(m, "SecondaryCone")
      .def_readonly("dim", &SecondaryCone::d)
      .def_readonly("ambient_dim", &SecondaryCone::ambient)
      .def_readonly("witness", &SecondaryCone::witness)
      .def_property_readonly(
          "n_equalities", [](const SecondaryCone& c) { return c.equalities.size(); })
      .def_property_readonly("n_facets", [](const SecondaryCone& c) { return c.facets.size(); });

  py::class_<CensusState>(m, "CensusState")
      .def_readonly("dim", &CensusState::dim)
      .def_readonly("complete", &CensusState::complete)
      .def_property_readonly("n_domains",
                             [](const CensusState& st) { return st.domains.size(); })
      .def("domain_facets",
           [](const CensusState& st, std::size_t id) {
             return st.domains.at(id).cone.facets.size();
           })
      .def("domain_witness",
           [](const CensusState& st, std::size_t id) { return st.domains.at(id).cone.witness; });

  m.def("principal_form", &principal_form, py::arg("d"));
  m.def("rank", [](const QuadForm& q) { return rank(q); });
  m.def("is_pd", [](const QuadForm& q) { return is_pd(q); });
  m.def("is_psd", [](const QuadForm& q) { return is_psd(q); });
  m.def("delone_star", &delone_star, py::arg("q"));
  m.def("star_certified", &star_certified);
  m.def("secondary_cone", &secondary_cone);
  m.def("rigidity_degree", &rigidity_degree, py::arg("q"));

  m.def("dv_vertices", [](const QuadForm& q) {
    py::list out;
    for (const VecQ& v : dv_polytope_ambient(q).vertices) {
      py::list pv;
      for (const Rat& x : v) pv.append(py_rat(x));
      out.append(std::move(pv));
    }
    return out;
  });

  m.def("find_isometry", [](const QuadForm& a, const QuadForm& b) -> py::object {
    auto u = find_isometry(a, b);
    if (!u) return py::none();
    return imat_to_py(*u);
  });
  m.def("automorphism_order",
        [](const QuadForm& q) { return py_int(automorphisms(q).order); });
  m.def("conjugate", [](const QuadForm& q, py::handle a) {
    return conjugate(q, imat_from_py(a));
  });

  m.def("dual_description", [](std::size_t ambient, py::handle facets) {
    HCone c;
    c.ambient = ambient;
    for (py::handle f : facets) {
      VecI v;
      for (py::handle x : f) v.push_back(Int(py::str(x).cast<std::string>()));
      c.facets.push_back(std::move(v));
    }
    py::list out;
    for (const Ray& r : dual_description(c)) out.append(ivec_to_py(r.dir));
    return out;
  });

  m.def("enumerate_domains", &enumerate_domains, py::arg("d"), py::arg("max_domains") = 0);
  m.def("resume_enumeration", &resume_enumeration, py::arg("state"), py::arg("max_domains") = 0);
  m.def("rigid_census", [](CensusState& st) {
    py::list out;
    for (const QuadForm& q : rigid_census(st)) out.append(q);
    return out;
  });
  m.def("distribution_tables", [](CensusState& st) {
    DistributionTables t = distribution_tables(st);
    py::dict d;
    d["facets"] = hist_to_py(t.facet_hist);
    d["rays"] = hist_to_py(t.ray_hist);
    py::dict ranks;
    for (std::size_t r = 1; r < t.rank_hist.size(); ++r)
      ranks[py::int_(r)] = hist_to_py(t.rank_hist[r]);
    d["ranks"] = ranks;
    return d;
  });
  m.def("tree_check", [](const CensusState& st) {
    TreeReport r = tree_check(st);
    py::dict d;
    d["domains"] = r.domains;
    d["ridges"] = r.ridges;
    d["bad"] = r.bad;
    d["pass"] = r.pass;
    return d;
  });
  m.def("verify_dim6", [](bool minkowski) {
    py::list out;
    for (const CheckResult& c : verify_dim6_forms(minkowski)) {
      py::dict d;
      d["name"] = c.name;
      d["pass"] = c.pass;
      d["detail"] = c.detail;
      out.append(std::move(d));
    }
    return out;
  }, py::arg("minkowski") = false);

  m.def("form_to_json", [](const QuadForm& q) { return io::form_json(q).dump(2); });
  m.def("form_from_json",
        [](const std::string& s) { return io::form_from(io::json::parse(s)); });
  m.def("census_to_json", [](const CensusState& st) { return io::census_json(st).dump(2); });
  m.def("census_from_json",
        [](const std::string& s) { return io::census_from(io::json::parse(s)); });

  m.def("e6_star", &fixtures::e6_star);
  m.def("r1", &fixtures::r1);
  m.def("r2", &fixtures::r2);
  m.def("d4", &fixtures::d4);
  m.def("a_gram", &fixtures::a_gram, py::arg("d"));
}
