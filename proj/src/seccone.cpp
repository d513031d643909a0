#include "ltype/seccone.hpp"

#include "ltype/lp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace ltype {

namespace {

struct VecListLess {
  bool operator()(const std::vector<VecI>& a, const std::vector<VecI>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), VecILess{});
  }
};

// coefficients of u = sum mu_j basis_j with sum mu = 1
VecQ affine_coords(const std::vector<VecI>& basis, const VecI& u) {
  const std::size_t d = u.size();
  MatQ m(d + 1, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) m(i, j) = Rat(basis[j][i]);
    m(d, j) = 1;
  }
  VecQ rhs(d + 1);
  for (std::size_t i = 0; i < d; ++i) rhs[i] = Rat(u[i]);
  rhs[d] = 1;
  auto sol = solve(m, rhs);
  if (!sol) throw std::logic_error("affine_coords: point outside the basis span");
  return *sol;
}

// Q[u] - sum mu_j Q[basis_j] as a primitive functional, sign kept
FormFunctional combination_functional(std::size_t d, const VecI& u,
                                      const std::vector<VecI>& basis, const VecQ& mu) {
  const std::size_t dd = form_space_dim(d);
  VecQ c(dd);
  const VecI cu = rank_one_functional(u).c;
  for (std::size_t k = 0; k < dd; ++k) c[k] = Rat(cu[k]);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (mu[j] == 0) continue;
    const VecI cb = rank_one_functional(basis[j]).c;
    for (std::size_t k = 0; k < dd; ++k) c[k] -= mu[j] * Rat(cb[k]);
  }
  return FormFunctional{d, scale_to_integer(c)};
}

// one functional per vertex beyond an affine basis of each cell
std::vector<FormFunctional> coplanarity_functionals(const DeloneStar& star) {
  const std::size_t d = star.dim;
  std::vector<FormFunctional> out;
  for (const DeloneCell& cell : star.cells) {
    if (cell.vertices.size() <= d + 1) continue;
    std::vector<VecI> basis, rest;
    RankTracker rt(d);
    for (const VecI& v : cell.vertices) {
      if (basis.empty()) {
        basis.push_back(v);
        continue;
      }
      VecQ diff(d);
      for (std::size_t i = 0; i < d; ++i) diff[i] = Rat(v[i] - basis[0][i]);
      if (rt.add_row(std::move(diff)))
        basis.push_back(v);
      else
        rest.push_back(v);
    }
    for (const VecI& u : rest)
      out.push_back(combination_functional(d, u, basis, affine_coords(basis, u)));
  }
  return out;
}

VecI reduce_functional(const MatI& nullbasis, const FormFunctional& f) {
  const VecI w = functional_weighted_coeffs(f);
  VecI out(nullbasis.nc, Int(0));
  for (std::size_t j = 0; j < nullbasis.nc; ++j)
    for (std::size_t k = 0; k < nullbasis.nr; ++k) out[j] += nullbasis(k, j) * w[k];
  make_primitive(out);
  return out;
}

MatI equality_nullbasis(std::size_t d, const std::vector<FormFunctional>& eqs) {
  const std::size_t dd = form_space_dim(d);
  if (eqs.empty()) return MatI::identity(dd);
  MatQ m(eqs.size(), dd);
  for (std::size_t i = 0; i < eqs.size(); ++i) m.set_row(i, functional_weighted_coeffs_rat(eqs[i]));
  auto basis = nullspace(m);
  MatI n(dd, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    VecI col = primitive_direction(basis[j]);
    for (std::size_t k = 0; k < dd; ++k) n(k, j) = col[k];
  }
  return n;
}

bool same_cells(const DeloneStar& a, const DeloneStar& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    if (a.cells[i].vertices != b.cells[i].vertices) return false;
  return true;
}

QuadForm integer_scaled(std::size_t d, const QuadForm& q) {
  return vec_to_form(d, to_rat_vec(scale_to_integer(form_to_vec(q))));
}

void pull_rec(const std::vector<VecI>& pts, std::vector<std::vector<VecI>>& out) {
  const std::size_t d = pts.front().size();
  MatQ diffs(pts.size() - 1, d);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) diffs(i - 1, j) = Rat(pts[i][j] - pts[0][j]);
  auto piv = rref(diffs);
  const std::size_t k = piv.size();
  if (pts.size() == k + 1) {
    out.push_back(pts);
    return;
  }
  std::vector<VecQ> red(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    red[i].resize(k);
    for (std::size_t j = 0; j < k; ++j) red[i][j] = Rat(pts[i][piv[j]]);
  }
  for (const auto& [a, a0] : polytope_facet_inequalities(red)) {
    std::vector<VecI> sub;
    bool pulls = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Rat val(a0);
      for (std::size_t j = 0; j < k; ++j) val += Rat(a[j]) * red[i][j];
      if (val != 0) continue;
      if (i == 0) {
        pulls = true;
        break;
      }
      sub.push_back(pts[i]);
    }
    if (pulls) continue;
    std::vector<std::vector<VecI>> part;
    pull_rec(sub, part);
    for (auto& s : part) {
      s.insert(s.begin(), pts[0]);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<std::vector<VecI>> pull_triangulation(const std::vector<VecI>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("pull_triangulation: no vertices");
  std::vector<VecI> pts = vertices;
  std::sort(pts.begin(), pts.end(), VecILess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::vector<VecI>> out;
  if (pts.size() == 1) {
    out.push_back(pts);
    return out;
  }
  pull_rec(pts, out);
  std::sort(out.begin(), out.end(), VecListLess{});
  return out;
}

SecondaryCone secondary_cone(const DeloneStar& star) {
  if (!star_certified(star))
    throw std::invalid_argument("secondary_cone: star does not certify against its form");
  const std::size_t d = star.dim;
  const std::size_t dd = form_space_dim(d);

  SecondaryCone cone;
  cone.d = d;
  cone.ambient = dd;
  cone.witness = star.form;

  auto raw_eqs = coplanarity_functionals(star);
  if (!raw_eqs.empty()) {
    MatQ m(raw_eqs.size(), dd);
    for (std::size_t i = 0; i < raw_eqs.size(); ++i) m.set_row(i, to_rat_vec(raw_eqs[i].c));
    auto piv = rref(m);
    for (std::size_t r = 0; r < piv.size(); ++r)
      cone.equalities.push_back(FormFunctional{d, scale_to_integer(m.row(r))});
  }

  // walls between adjacent simplices through the origin, keyed by vertex set
  std::map<std::vector<VecI>, std::vector<VecI>, VecListLess> walls;
  const VecI origin(d, Int(0));
  for (const DeloneCell& cell : star.cells) {
    std::vector<std::vector<VecI>> simps;
    if (cell.vertices.size() == d + 1)
      simps.push_back(cell.vertices);
    else
      simps = pull_triangulation(cell.vertices);
    for (const auto& s : simps) {
      if (!std::binary_search(s.begin(), s.end(), origin, VecILess{})) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (is_zero(s[i])) continue;
        std::vector<VecI> f;
        f.reserve(s.size() - 1);
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != i) f.push_back(s[j]);
        walls[f].push_back(s[i]);
      }
    }
  }

  std::vector<FormFunctional> raw_facets;
  std::set<VecI, VecILess> seen;
  for (auto& [f, apexes] : walls) {
    if (apexes.size() != 2)
      throw std::logic_error("secondary_cone: wall not shared by exactly two simplices");
    std::sort(apexes.begin(), apexes.end(), VecILess{});
    std::vector<VecI> basis = f;
    basis.push_back(apexes[0]);
    FormFunctional reg =
        combination_functional(d, apexes[1], basis, affine_coords(basis, apexes[1]));
    if (seen.insert(reg.c).second) raw_facets.push_back(reg);
  }

  const MatI nb = equality_nullbasis(d, cone.equalities);
  std::map<VecI, VecI, VecILess> byred;  // reduced functional -> lex-min original
  for (const FormFunctional& f : raw_facets) {
    VecI red = reduce_functional(nb, f);
    if (is_zero(red)) continue;
    auto it = byred.find(red);
    if (it == byred.end())
      byred.emplace(std::move(red), f.c);
    else if (lex_compare(f.c, it->second) < 0)
      it->second = f.c;
  }

  std::vector<std::pair<VecI, VecI>> cands(byred.begin(), byred.end());
  const std::size_t n = nb.nc;
  std::vector<char> keep(cands.size(), 1);
  if (cands.size() > 1) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      LpProblem lp;
      lp.nvars = cands.size() - 1;
      lp.nonneg = true;
      lp.objective.assign(lp.nvars, Rat(0));
      for (std::size_t k = 0; k < n; ++k) {
        LinCon con;
        con.rel = Rel::EQ;
        con.b = Rat(cands[i].first[k]);
        con.a.resize(lp.nvars);
        std::size_t col = 0;
        for (std::size_t j = 0; j < cands.size(); ++j)
          if (j != i) con.a[col++] = Rat(cands[j].first[k]);
        lp.cons.push_back(std::move(con));
      }
      if (solve_lp(lp).status == LpStatus::Optimal) keep[i] = 0;
    }
  }
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (keep[i]) cone.facets.push_back(FormFunctional{d, cands[i].second});
  std::sort(cone.facets.begin(), cone.facets.end(),
            [](const FormFunctional& a, const FormFunctional& b) {
              return lex_compare(a.c, b.c) < 0;
            });

  for (const FormFunctional& e : cone.equalities)
    if (e.pair(cone.witness) != 0)
      throw std::logic_error("secondary_cone: witness violates an equality");
  for (const FormFunctional& f : cone.facets)
    if (f.pair(cone.witness) <= 0)
      throw std::logic_error("secondary_cone: witness not strictly inside");
  return cone;
}

std::size_t rigidity_degree(const QuadForm& q) {
  if (q.dim == 0) throw std::invalid_argument("rigidity_degree: empty form");
  if (!is_psd(q)) throw std::invalid_argument("rigidity_degree: form must be positive semidefinite");
  KernelSplit ks = kernel_split(q);
  if (ks.block.dim == 0) throw std::invalid_argument("rigidity_degree: zero form");
  DeloneStar star = delone_star(ks.block);
  RankTracker rt(form_space_dim(ks.block.dim));
  for (const FormFunctional& f : coplanarity_functionals(star)) rt.add_row(to_rat_vec(f.c));
  return form_space_dim(ks.block.dim) - rt.rank();
}

ReducedCone reduce_cone(const SecondaryCone& c) {
  ReducedCone rc;
  rc.nullbasis = equality_nullbasis(c.d, c.equalities);
  rc.cone.ambient = rc.nullbasis.nc;
  rc.cone.irredundant = true;
  for (const FormFunctional& f : c.facets) {
    VecI red = reduce_functional(rc.nullbasis, f);
    if (is_zero(red)) throw std::invalid_argument("reduce_cone: facet lies in the equality span");
    rc.cone.facets.push_back(std::move(red));
  }
  return rc;
}

QuadForm interior_form(const SecondaryCone& cone) {
  ReducedCone rc = reduce_cone(cone);
  const std::size_t n = rc.nullbasis.nc;
  if (n == 0) throw std::invalid_argument("interior_form: cone is zero-dimensional");
  VecQ y(n, Rat(0));
  if (rc.cone.facets.empty()) {
    y[0] = 1;
  } else {
    LpProblem lp;
    lp.nvars = n + 1;
    lp.maximize = true;
    lp.objective.assign(n + 1, Rat(0));
    lp.objective[n] = 1;
    VecQ total(n, Rat(0));
    for (const VecI& f : rc.cone.facets) {
      LinCon con;
      con.a.resize(n + 1);
      for (std::size_t k = 0; k < n; ++k) {
        con.a[k] = Rat(f[k]);
        total[k] += Rat(f[k]);
      }
      con.a[n] = -1;
      con.rel = Rel::GE;
      con.b = 0;
      lp.cons.push_back(std::move(con));
    }
    LinCon norm;
    norm.a = total;
    norm.a.push_back(Rat(0));
    norm.rel = Rel::EQ;
    norm.b = 1;
    lp.cons.push_back(std::move(norm));
    auto r = solve_lp(lp);
    if (r.status != LpStatus::Optimal || r.value <= 0)
      throw std::runtime_error("interior_form: cone has no interior point");
    y.assign(r.x.begin(), r.x.begin() + n);
  }
  return vec_to_form(cone.d, to_rat_mat(rc.nullbasis) * y);
}

QuadForm simplify_form_in_cone(const SecondaryCone& cone, const QuadForm& q) {
  if (cone.facets.empty()) return q;
  ReducedCone rc = reduce_cone(cone);
  auto sol = solve(to_rat_mat(rc.nullbasis), form_to_vec(q));
  if (!sol) return q;
  const VecQ& y = *sol;
  const bool want_pd = is_pd(q);
  Int scale = 1;
  for (int k = 0; k <= 48; ++k, scale *= 2) {
    VecQ yk(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      Rat s = y[i] * Rat(scale) + Rat(1, 2);
      Int r;
      mpz_fdiv_q(r.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
      yk[i] = Rat(r) / Rat(scale);
    }
    VecI xi = scale_to_integer(to_rat_mat(rc.nullbasis) * yk);
    if (is_zero(xi)) continue;
    QuadForm qk = vec_to_form(cone.d, to_rat_vec(xi));
    bool ok = !want_pd || is_pd(qk);
    for (std::size_t i = 0; ok && i < cone.facets.size(); ++i)
      if (cone.facets[i].pair(qk) <= 0) ok = false;
    if (ok) return qk;
  }
  return q;
}

FlipResult flip_ex(const DeloneStar& star, const SecondaryCone& cone, const FormFunctional& facet) {
  const std::size_t d = star.dim;
  if (!(cone.witness.m == star.form.m))
    throw std::invalid_argument("flip: cone does not belong to this star");
  bool found = false;
  for (const FormFunctional& f : cone.facets)
    if (f.d == facet.d && f.c == facet.c) found = true;
  if (!found) throw std::invalid_argument("flip: functional is not a facet of the secondary cone");

  if (cone.equalities.size() + 1 >= cone.ambient) throw DegenerateFacetError();

  SecondaryCone wall;
  wall.d = cone.d;
  wall.ambient = cone.ambient;
  wall.equalities = cone.equalities;
  wall.equalities.push_back(facet);
  for (const FormFunctional& f : cone.facets)
    if (f.c != facet.c) wall.facets.push_back(f);
  wall.witness = cone.witness;

  QuadForm m = integer_scaled(d, interior_form(wall));
  if (rank(m) < d) throw DegenerateFacetError();

  const QuadForm& w = cone.witness;
  Rat eps(1);
  bool first = true;
  for (const FormFunctional& f : wall.facets) {
    Rat den = f.pair(w);
    if (den <= 0) continue;
    Rat r = f.pair(m) / den;
    if (first || r < eps) {
      eps = r;
      first = false;
    }
  }
  eps /= 2;

  for (int attempt = 0; attempt < 64; ++attempt, eps /= 2) {
    MatQ qm = m.m;
    for (std::size_t i = 0; i < qm.a.size(); ++i) qm.a[i] -= eps * w.m.a[i];
    QuadForm qstar(qm);
    if (!is_pd(qstar)) continue;
    DeloneStar s2 = delone_star(qstar);
    SecondaryCone c2 = secondary_cone(s2);
    if (c2.equalities.size() != cone.equalities.size()) continue;
    bool ok = true;
    for (const FormFunctional& e : c2.equalities)
      if (e.pair(m) != 0) ok = false;
    for (const FormFunctional& f : c2.facets)
      if (ok && f.pair(m) < 0) ok = false;
    if (!ok) continue;
    if (facet.pair(qstar) >= 0) throw std::logic_error("flip: crossing direction lost");
    QuadForm qs = simplify_form_in_cone(c2, qstar);
    if (!(qs.m == qstar.m)) {
      DeloneStar s3 = delone_star(qs);
      if (!same_cells(s3, s2)) throw std::logic_error("flip: simplified witness left the domain");
      s2 = std::move(s3);
      c2.witness = std::move(qs);
    }
    return {std::move(s2), std::move(c2)};
  }
  throw std::logic_error("flip: could not localize the neighboring domain");
}

DeloneStar flip(const DeloneStar& star, const FormFunctional& facet) {
  return flip_ex(star, secondary_cone(star), facet).star;
}

QuadForm characteristic_form(const DeloneStar& s) {
  if (s.dim == 0 || s.cells.empty())
    throw std::invalid_argument("characteristic_form: empty star");
  const std::size_t d = s.dim;
  MatQ x(d, d);
  for (const DeloneCell& cell : s.cells) {
    const Int k(static_cast<unsigned long>(cell.vertices.size()));
    VecI sum(d, Int(0));
    MatI sq(d, d);
    for (const VecI& v : cell.vertices)
      for (std::size_t i = 0; i < d; ++i) {
        sum[i] += v[i];
        for (std::size_t j = 0; j < d; ++j) sq(i, j) += v[i] * v[j];
      }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) x(i, j) += Rat(2 * k * sq(i, j) - 2 * sum[i] * sum[j]);
  }
  return QuadForm(x);
}

namespace {

bool maps_star(const DeloneStar& s1, const DeloneStar& s2, const MatI& t) {
  auto cell_before = [](const DeloneCell& c, const std::vector<VecI>& v) {
    return std::lexicographical_compare(c.vertices.begin(), c.vertices.end(), v.begin(), v.end(),
                                        VecILess{});
  };
  for (const DeloneCell& c : s1.cells) {
    std::vector<VecI> img;
    img.reserve(c.vertices.size());
    for (const VecI& v : c.vertices) img.push_back(t * v);
    std::sort(img.begin(), img.end(), VecILess{});
    auto it = std::lower_bound(s2.cells.begin(), s2.cells.end(), img, cell_before);
    if (it == s2.cells.end() || it->vertices != img) return false;
  }
  return true;
}

std::vector<std::size_t> cell_size_profile(const DeloneStar& s) {
  std::vector<std::size_t> v;
  v.reserve(s.cells.size());
  for (const DeloneCell& c : s.cells) v.push_back(c.vertices.size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::optional<MatI> triangulation_isomorphic(const DeloneStar& s1, const DeloneStar& s2) {
  if (s1.dim != s2.dim || s1.cells.size() != s2.cells.size()) return std::nullopt;
  if (cell_size_profile(s1) != cell_size_profile(s2)) return std::nullopt;
  QuadForm x1 = characteristic_form(s1);
  QuadForm x2 = characteristic_form(s2);
  std::optional<MatI> result;
  for_each_isometry(x1, x2, [&](const MatI& a) {
    MatI t = a.transposed();
    if (maps_star(s1, s2, t)) {
      result = std::move(t);
      return false;
    }
    return true;
  });
  return result;
}

GroupInfo triangulation_automorphisms(const DeloneStar& s) {
  QuadForm x = characteristic_form(s);
  std::vector<MatI> elems;
  for_each_isometry(x, x, [&](const MatI& a) {
    MatI t = a.transposed();
    if (maps_star(s, s, t)) elems.push_back(std::move(t));
    return true;
  });
  GroupInfo g;
  g.order = Int(static_cast<unsigned long>(elems.size()));
  std::unordered_set<MatI, MatIHash> closed;
  closed.insert(MatI::identity(s.dim));
  for (const MatI& t : elems) {
    if (closed.count(t)) continue;
    g.generators.push_back(t);
    closed.clear();
    for (const MatI& e : group_closure(g.generators, s.dim)) closed.insert(e);
  }
  if (closed.size() != elems.size())
    throw std::logic_error("triangulation_automorphisms: closure mismatch");
  return g;
}

}  // namespace ltype
