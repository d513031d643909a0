#include "ltype/polytope.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ltype/dd.hpp"
#include "ltype/linalg.hpp"
#include "ltype/lp.hpp"

namespace ltype {

namespace {

bool lex_less_rat(const VecQ& a, const VecQ& b) { return lex_compare_rat(a, b) < 0; }

// p in conv(pts \ {skip})?
bool in_hull_of_others(const std::vector<VecQ>& pts, std::size_t skip) {
  if (pts.size() <= 1) return false;
  std::size_t dim = pts[skip].size();
  LpProblem lp;
  lp.nvars = pts.size() - 1;
  lp.maximize = true;
  lp.nonneg = true;
  lp.objective.assign(lp.nvars, Rat(0));
  for (std::size_t k = 0; k <= dim; ++k) {
    LinCon con;
    con.a.resize(lp.nvars);
    std::size_t col = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == skip) continue;
      con.a[col++] = k < dim ? pts[j][k] : Rat(1);
    }
    con.rel = Rel::EQ;
    con.b = k < dim ? pts[skip][k] : Rat(1);
    lp.cons.push_back(std::move(con));
  }
  return solve_lp(lp).status == LpStatus::Optimal;
}

}  // namespace

VPolytope make_polytope(std::size_t ambient, std::vector<VecQ> points) {
  for (const VecQ& p : points)
    if (p.size() != ambient) throw std::invalid_argument("point dimension mismatch");
  std::sort(points.begin(), points.end(), lex_less_rat);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  VPolytope out;
  out.ambient = ambient;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!in_hull_of_others(points, i)) out.vertices.push_back(points[i]);
  return out;
}

std::pair<VPolytope, Rat> support_face(const VPolytope& p, const VecQ& f) {
  if (p.vertices.empty()) throw std::invalid_argument("support_face: empty polytope");
  if (f.size() != p.ambient) throw std::invalid_argument("support_face: functional dimension");
  Rat eta;
  bool first = true;
  for (const VecQ& v : p.vertices) {
    Rat val(0);
    for (std::size_t k = 0; k < p.ambient; ++k) val += f[k] * v[k];
    if (first || val > eta) {
      eta = val;
      first = false;
    }
  }
  VPolytope face;
  face.ambient = p.ambient;
  for (const VecQ& v : p.vertices) {
    Rat val(0);
    for (std::size_t k = 0; k < p.ambient; ++k) val += f[k] * v[k];
    if (val == eta) face.vertices.push_back(v);
  }
  return {std::move(face), std::move(eta)};
}

VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<VecQ> sums;
  sums.reserve(a.vertices.size() * b.vertices.size());
  for (const VecQ& u : a.vertices)
    for (const VecQ& v : b.vertices) {
      VecQ s(a.ambient);
      for (std::size_t k = 0; k < a.ambient; ++k) s[k] = u[k] + v[k];
      sums.push_back(std::move(s));
    }
  return make_polytope(a.ambient, std::move(sums));
}

namespace {

// vertex normal cones as sorted lists of primitive inward facet normals;
// both polytopes must be full-dimensional in their ambient space
bool same_normal_fan_fulldim(const VPolytope& a, const VPolytope& b) {
  auto facet_data = [](const VPolytope& p) {
    std::vector<std::pair<VecI, Rat>> fs;  // primitive normal, offset
    for (const auto& [n0, b0] : polytope_facet_inequalities(p.vertices)) {
      VecI n = n0;
      Rat a0(b0);
      Int g = vec_content(n);
      if (g > 1) {
        for (Int& x : n) x /= g;
        a0 /= Rat(g);
      }
      fs.emplace_back(std::move(n), std::move(a0));
    }
    std::sort(fs.begin(), fs.end(),
              [](const auto& x, const auto& y) { return lex_compare(x.first, y.first) < 0; });
    return fs;
  };
  auto fa = facet_data(a);
  auto fb = facet_data(b);
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (fa[i].first != fb[i].first) return false;
  auto vertex_cones = [](const VPolytope& p, const std::vector<std::pair<VecI, Rat>>& fs) {
    std::vector<std::vector<std::size_t>> cones;
    for (const VecQ& v : p.vertices) {
      std::vector<std::size_t> inc;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Rat val = fs[i].second;
        for (std::size_t k = 0; k < p.ambient; ++k) val += Rat(fs[i].first[k]) * v[k];
        if (val == 0) inc.push_back(i);
      }
      cones.push_back(std::move(inc));
    }
    std::sort(cones.begin(), cones.end());
    return cones;
  };
  return vertex_cones(a, fa) == vertex_cones(b, fb);
}

}  // namespace

bool strongly_isomorphic(const VPolytope& a, const VPolytope& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("strongly_isomorphic: dimension");
  if (a.vertices.empty() || b.vertices.empty())
    throw std::invalid_argument("strongly_isomorphic: empty polytope");
  if ((a.vertices.size() == 1) != (b.vertices.size() == 1)) return false;
  if (a.vertices.size() == 1) return true;

  // compare affine spans; equal normal fans force equal linear spans after
  // translating a vertex to the origin
  auto span_rows = [](const VPolytope& p) {
    std::vector<VecQ> rows;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
      VecQ r(p.ambient);
      for (std::size_t k = 0; k < p.ambient; ++k) r[k] = p.vertices[i][k] - p.vertices[0][k];
      rows.push_back(std::move(r));
    }
    return rows;
  };
  auto ra = span_rows(a);
  auto rb = span_rows(b);
  MatQ ma(ra.size(), a.ambient), mb(rb.size(), b.ambient);
  for (std::size_t i = 0; i < ra.size(); ++i) ma.set_row(i, ra[i]);
  for (std::size_t i = 0; i < rb.size(); ++i) mb.set_row(i, rb[i]);
  std::size_t rka = rank_of(ma), rkb = rank_of(mb);
  if (rka != rkb) return false;
  {
    MatQ joint(ra.size() + rb.size(), a.ambient);
    for (std::size_t i = 0; i < ra.size(); ++i) joint.set_row(i, ra[i]);
    for (std::size_t i = 0; i < rb.size(); ++i) joint.set_row(ra.size() + i, rb[i]);
    if (rank_of(joint) != rka) return false;
  }
  if (rka == a.ambient) return same_normal_fan_fulldim(a, b);

  // lower-dimensional: both spans agree, so the same pivot-coordinate
  // projection is injective on both; fans agree iff the projected fans do
  MatQ red = ma;
  std::vector<std::size_t> pivots = rref(red);
  auto project = [&](const VPolytope& p) {
    VPolytope q;
    q.ambient = pivots.size();
    for (const VecQ& v : p.vertices) {
      VecQ w(pivots.size());
      for (std::size_t k = 0; k < pivots.size(); ++k) w[k] = v[pivots[k]];
      q.vertices.push_back(std::move(w));
    }
    std::sort(q.vertices.begin(), q.vertices.end(), lex_less_rat);
    return q;
  };
  if (rka == 0) return true;
  return same_normal_fan_fulldim(project(a), project(b));
}

}  // namespace ltype
