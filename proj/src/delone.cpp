#include "ltype/delone.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ltype/dd.hpp"
#include "ltype/lattice.hpp"
#include "ltype/linalg.hpp"

namespace ltype {

namespace {

bool cell_less(const DeloneCell& a, const DeloneCell& b) {
  return std::lexicographical_compare(a.vertices.begin(), a.vertices.end(),
                                      b.vertices.begin(), b.vertices.end(), VecILess{});
}

// nonzero candidate vectors, thinned to the minima of their parity classes;
// the thinned set still contains every Voronoi relevant vector inside the ball
std::vector<VecI> candidate_vectors(const QuadForm& q, const Rat& c) {
  std::map<std::vector<int>, std::pair<Rat, std::vector<VecI>>> classes;
  for (const VecI& v : vectors_below(q, c)) {
    std::vector<int> key(q.dim);
    bool even = true;
    for (std::size_t i = 0; i < q.dim; ++i) {
      key[i] = mpz_odd_p(v[i].get_mpz_t()) ? 1 : 0;
      if (key[i]) even = false;
    }
    if (even) continue;
    Rat n = q.eval(v);
    auto it = classes.find(key);
    if (it == classes.end())
      classes.emplace(std::move(key), std::make_pair(n, std::vector<VecI>{v}));
    else if (n < it->second.first) {
      it->second.first = n;
      it->second.second = {v};
    } else if (n == it->second.first) {
      it->second.second.push_back(v);
    }
  }
  std::vector<VecI> out;
  for (auto& [key, entry] : classes)
    for (VecI& v : entry.second) out.push_back(std::move(v));
  return out;
}

bool affinely_spans(const std::vector<VecI>& pts, std::size_t d) {
  if (pts.size() < d + 1) return false;
  std::vector<VecI> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    VecI r(d);
    for (std::size_t k = 0; k < d; ++k) r[k] = pts[i][k] - pts[0][k];
    rows.push_back(std::move(r));
  }
  return rank_of_rows(rows, d) == d;
}

}  // namespace

DeloneStar delone_star(const QuadForm& q) {
  if (!is_pd(q)) throw std::invalid_argument("delone_star: form must be positive definite");
  std::size_t d = q.dim;
  Rat c(0);
  for (std::size_t i = 0; i < d; ++i) c = std::max(c, q.m(i, i));
  c *= 2;
  for (;;) {
    std::vector<VecI> cand = candidate_vectors(q, c);
    // empty-sphere centers through the origin form the Voronoi cell
    // {u : 2 u^t Q v <= Q[v]}; homogenize and enumerate its vertices
    HCone cone;
    cone.ambient = d + 1;
    for (const VecI& v : cand) {
      VecQ row(d + 1);
      VecQ qv = q.m * to_rat_vec(v);
      for (std::size_t k = 0; k < d; ++k) row[k] = -2 * qv[k];
      row[d] = q.eval(v);
      cone.facets.push_back(scale_to_integer(row));
    }
    std::vector<Ray> rays = dual_description(cone);
    bool ok = true;
    std::vector<DeloneCell> cells;
    for (const Ray& r : rays) {
      if (r.dir[d] <= 0) {
        ok = false;
        break;
      }
      DeloneCell cell;
      cell.center.resize(d);
      for (std::size_t k = 0; k < d; ++k) cell.center[k] = Rat(r.dir[k]) / Rat(r.dir[d]);
      cell.sq_radius = q.eval(cell.center);
      // certificate: the nearest lattice points to the center must lie at
      // distance exactly rho, so the sphere is empty and touches them all
      cell.vertices = closest_vectors(q, cell.center);
      VecQ diff(d);
      for (std::size_t k = 0; k < d; ++k)
        diff[k] = Rat(cell.vertices.front()[k]) - cell.center[k];
      if (q.eval(diff) != cell.sq_radius || !affinely_spans(cell.vertices, d)) {
        ok = false;
        break;
      }
      cells.push_back(std::move(cell));
    }
    if (!ok) {
      c *= 2;
      continue;
    }
    std::sort(cells.begin(), cells.end(), cell_less);
    DeloneStar star;
    star.dim = d;
    star.form = q;
    star.cells = std::move(cells);
    return star;
  }
}

bool star_certified(const DeloneStar& s) {
  const QuadForm& q = s.form;
  if (q.dim != s.dim || !is_pd(q) || s.cells.empty()) return false;
  VecI origin(s.dim, Int(0));
  for (const DeloneCell& cell : s.cells) {
    if (!std::binary_search(cell.vertices.begin(), cell.vertices.end(), origin, VecILess{}))
      return false;
    for (const VecI& v : cell.vertices) {
      VecQ diff(s.dim);
      for (std::size_t k = 0; k < s.dim; ++k) diff[k] = Rat(v[k]) - cell.center[k];
      if (q.eval(diff) != cell.sq_radius) return false;
    }
    if (closest_vectors(q, cell.center) != cell.vertices) return false;
    if (!affinely_spans(cell.vertices, s.dim)) return false;
  }
  return true;
}

VPolytope dv_polytope(const QuadForm& q) {
  if (!is_psd(q)) throw std::invalid_argument("dv_polytope: form must be psd");
  if (q.dim == 0) return VPolytope{0, {VecQ{}}};
  if (is_pd(q)) {
    DeloneStar star = delone_star(q);
    std::vector<VecQ> verts;
    for (const DeloneCell& cell : star.cells) verts.push_back(q.m * cell.center);
    std::sort(verts.begin(), verts.end(),
              [](const VecQ& a, const VecQ& b) { return lex_compare_rat(a, b) < 0; });
    VPolytope p;
    p.ambient = q.dim;
    p.vertices = std::move(verts);
    return p;
  }
  KernelSplit ks = kernel_split(q);
  if (ks.block.dim == 0) return VPolytope{0, {VecQ{}}};
  return dv_polytope(ks.block);
}

VPolytope dv_polytope_ambient(const QuadForm& q) {
  if (!is_psd(q)) throw std::invalid_argument("dv_polytope: form must be psd");
  if (is_pd(q)) return dv_polytope(q);
  KernelSplit ks = kernel_split(q);
  std::size_t r = ks.block.dim;
  VPolytope out;
  out.ambient = q.dim;
  if (r == 0) {
    out.vertices.push_back(VecQ(q.dim, Rat(0)));
    return out;
  }
  // DV(Q) = U^{-t} (DV(B) x {0}); vertices as rows (y, 0) . U^{-1}
  VPolytope sub = dv_polytope(ks.block);
  MatQ uinv = inverse(to_rat_mat(ks.u));
  for (const VecQ& y : sub.vertices) {
    VecQ x(q.dim, Rat(0));
    for (std::size_t k = 0; k < q.dim; ++k)
      for (std::size_t i = 0; i < r; ++i) x[k] += y[i] * uinv(i, k);
    out.vertices.push_back(std::move(x));
  }
  std::sort(out.vertices.begin(), out.vertices.end(),
            [](const VecQ& a, const VecQ& b) { return lex_compare_rat(a, b) < 0; });
  return out;
}

}  // namespace ltype
