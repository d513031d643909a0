#include "ltype/dd.hpp"

#include "ltype/lp.hpp"

#include <algorithm>
#include <map>

namespace ltype {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits bits_make(std::size_t n) { return Bits((n + 63) / 64, 0); }

void bits_set(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t(1) << (i % 64)); }

bool bits_get(const Bits& b, std::size_t i) {
  return (b[i / 64] >> (i % 64)) & 1;
}

Bits bits_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

// c subset of t
bool bits_subset(const Bits& c, const Bits& t) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] & ~t[i]) return false;
  return true;
}

std::size_t bits_count(const Bits& b) {
  std::size_t n = 0;
  for (std::uint64_t w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

struct WorkRay {
  VecI dir;
  std::vector<Int> eval;  // value of every input facet on dir
  Bits inc;               // incidence over processed facets
};

struct DdState {
  std::size_t dim;
  std::vector<VecI> facets;  // primitive copies, input order
  std::vector<WorkRay> rays;
  Bits processed;
  bool saw_implicit_equality = false;

  explicit DdState(const HCone& c) : dim(c.ambient) {
    facets.reserve(c.facets.size());
    for (VecI f : c.facets) {
      if (f.size() != dim) throw std::invalid_argument("dual_description: facet arity mismatch");
      make_primitive(f);
      facets.push_back(std::move(f));
    }
    processed = bits_make(facets.size());
  }

  void eval_all(WorkRay& r) const {
    r.eval.resize(facets.size());
    for (std::size_t i = 0; i < facets.size(); ++i) r.eval[i] = dot_int(facets[i], r.dir);
  }

  void set_incidence(WorkRay& r) const {
    r.inc = bits_make(facets.size());
    for (std::size_t i = 0; i < facets.size(); ++i)
      if (bits_get(processed, i) && r.eval[i] == 0) bits_set(r.inc, i);
  }

  // Fukuda-Prodon combinatorial test: no third ray's incidence contains
  // inc(a) & inc(b); valid for any pointed cone
  bool adjacent_combinatorial(std::size_t a, std::size_t b) const {
    Bits common = bits_and(rays[a].inc, rays[b].inc);
    for (std::size_t t = 0; t < rays.size(); ++t) {
      if (t == a || t == b) continue;
      if (bits_subset(common, rays[t].inc)) return false;
    }
    return true;
  }

  // rank of the common incident functionals must be dim-2; valid only while
  // the current cone is full-dimensional
  bool adjacent_algebraic(std::size_t a, std::size_t b) const {
    Bits common = bits_and(rays[a].inc, rays[b].inc);
    std::vector<VecI> rows;
    for (std::size_t i = 0; i < facets.size(); ++i)
      if (bits_get(common, i)) rows.push_back(facets[i]);
    if (rows.size() < dim - 2) return false;
    return rank_of_rows(rows, dim) == dim - 2;
  }

  void insert_facet(std::size_t fi) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      int s = sgn(rays[r].eval[fi]);
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
    }
    if (pos.empty() && !rays.empty()) saw_implicit_equality = true;
    std::vector<WorkRay> created;
    if (!neg.empty() && !pos.empty()) {
      // pick the adjacency test: the rank test is cheaper in highly degenerate
      // stages but requires a full-dimensional intermediate cone
      bool use_algebraic =
          !saw_implicit_equality && dim >= 2 &&
          pos.size() * neg.size() > 64 && rays.size() > 4 * dim;
      for (std::size_t a : pos)
        for (std::size_t b : neg) {
          bool adj = use_algebraic ? adjacent_algebraic(a, b) : adjacent_combinatorial(a, b);
          if (!adj) continue;
          WorkRay w;
          const Int& pa = rays[a].eval[fi];
          const Int& nb = rays[b].eval[fi];
          w.dir.resize(dim);
          for (std::size_t k = 0; k < dim; ++k)
            w.dir[k] = pa * rays[b].dir[k] - nb * rays[a].dir[k];
          Int g = vec_content(w.dir);
          w.eval.resize(facets.size());
          for (std::size_t i = 0; i < facets.size(); ++i) {
            Int v = pa * rays[b].eval[i] - nb * rays[a].eval[i];
            if (g > 1) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            w.eval[i] = v;
          }
          if (g > 1)
            for (Int& x : w.dir) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
          created.push_back(std::move(w));
        }
    }
    // keep nonnegative rays, drop negative, add the new ones
    std::vector<WorkRay> next;
    next.reserve(rays.size() - neg.size() + created.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (rays[r].eval[fi] >= 0) next.push_back(std::move(rays[r]));
    std::size_t kept = next.size();
    for (WorkRay& w : created) next.push_back(std::move(w));
    rays = std::move(next);
    bits_set(processed, fi);
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (r < kept) {
        if (rays[r].eval[fi] == 0) bits_set(rays[r].inc, fi);
      } else {
        rays[r].inc = bits_make(facets.size());
        for (std::size_t i = 0; i < facets.size(); ++i)
          if (bits_get(processed, i) && rays[r].eval[i] == 0) bits_set(rays[r].inc, i);
      }
    }
  }
};

std::vector<Ray> finish(DdState& st) {
  std::vector<Ray> out;
  out.reserve(st.rays.size());
  for (const WorkRay& w : st.rays) {
    Ray r;
    r.dir = w.dir;
    for (std::size_t i = 0; i < st.facets.size(); ++i)
      if (w.eval[i] == 0) r.incidence.push_back(i);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const Ray& a, const Ray& b) { return lex_compare(a.dir, b.dir) < 0; });
  return out;
}

}  // namespace

std::vector<std::size_t> ray_incidence(const HCone& c, const VecI& dir) {
  std::vector<std::size_t> inc;
  for (std::size_t i = 0; i < c.facets.size(); ++i) {
    Int v = dot_int(c.facets[i], dir);
    if (v == 0)
      inc.push_back(i);
    else if (v < 0)
      throw std::invalid_argument("ray violates a facet inequality");
  }
  return inc;
}

void verify_ray(const HCone& c, const Ray& r) {
  if (r.dir.size() != c.ambient || is_zero(r.dir))
    throw std::invalid_argument("ray direction malformed");
  VecI d = r.dir;
  make_primitive(d);
  if (d != r.dir) throw std::invalid_argument("ray direction not primitive");
  std::vector<std::size_t> inc = ray_incidence(c, r.dir);
  if (inc != r.incidence) throw std::invalid_argument("ray incidence list incorrect");
  std::vector<VecI> rows;
  for (std::size_t i : inc) rows.push_back(c.facets[i]);
  if (rank_of_rows(rows, c.ambient) + 1 != c.ambient)
    throw std::invalid_argument("ray incidence rank is not D-1 (not extreme)");
}

std::vector<Ray> dual_description(const HCone& c) {
  if (c.ambient == 0) return {};
  DdState st(c);
  // pointedness: the functionals must span the dual space
  {
    MatQ m(st.facets.size(), c.ambient);
    for (std::size_t i = 0; i < st.facets.size(); ++i)
      m.set_row(i, to_rat_vec(st.facets[i]));
    if (rank_of(m) < c.ambient) {
      std::vector<VecQ> ns = nullspace(m);
      VecI lin = primitive_direction(ns.front());
      throw NonPointedError(lin);
    }
  }
  // initial simplicial basis: first maximal independent subset in input order
  std::vector<std::size_t> base;
  {
    RankTracker tracker(c.ambient);
    for (std::size_t i = 0; i < st.facets.size() && base.size() < c.ambient; ++i)
      if (tracker.add_row(to_rat_vec(st.facets[i]))) base.push_back(i);
  }
  MatQ fb(c.ambient, c.ambient);
  for (std::size_t i = 0; i < c.ambient; ++i) fb.set_row(i, to_rat_vec(st.facets[base[i]]));
  MatQ inv = inverse(fb);
  for (std::size_t j = 0; j < c.ambient; ++j) {
    WorkRay w;
    w.dir = primitive_direction(inv.col(j));
    st.eval_all(w);
    st.rays.push_back(std::move(w));
  }
  for (std::size_t i : base) bits_set(st.processed, i);
  for (WorkRay& r : st.rays) st.set_incidence(r);

  // remaining facets, maxcutoff order: most zero evaluations against the
  // current rays first, ties by input index
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < st.facets.size(); ++i)
    if (!bits_get(st.processed, i)) remaining.push_back(i);
  while (!remaining.empty()) {
    std::size_t best_at = 0;
    std::size_t best_zeros = 0;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      std::size_t z = 0;
      for (const WorkRay& r : st.rays)
        if (r.eval[remaining[k]] == 0) ++z;
      if (k == 0 || z > best_zeros) {
        best_at = k;
        best_zeros = z;
      }
    }
    std::size_t fi = remaining[best_at];
    remaining.erase(remaining.begin() + best_at);
    st.insert_facet(fi);
  }
  return finish(st);
}

Ray initial_ray(const HCone& c) {
  if (c.facets.empty() || c.ambient == 0)
    throw std::invalid_argument("initial_ray: cone must have facets");
  {
    std::vector<VecI> rows(c.facets.begin(), c.facets.end());
    if (rank_of_rows(rows, c.ambient) < c.ambient) {
      MatQ m(rows.size(), c.ambient);
      for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, to_rat_vec(rows[i]));
      throw NonPointedError(primitive_direction(nullspace(m).front()));
    }
  }
  // base polytope {f_i(x) >= 0, sum_i f_i(x) = 1}; maximize coordinates
  // lexicographically; the optimum is a vertex, i.e. an extreme ray
  std::vector<LinCon> cons;
  VecQ total(c.ambient, Rat(0));
  for (const VecI& f : c.facets) {
    LinCon con;
    con.a = to_rat_vec(f);
    con.rel = Rel::GE;
    con.b = 0;
    for (std::size_t k = 0; k < c.ambient; ++k) total[k] += con.a[k];
    cons.push_back(std::move(con));
  }
  cons.push_back(LinCon{total, Rel::EQ, Rat(1)});
  VecQ point;
  for (std::size_t coord = 0; coord < c.ambient; ++coord) {
    LpProblem p;
    p.nvars = c.ambient;
    p.maximize = true;
    p.objective.assign(c.ambient, Rat(0));
    p.objective[coord] = 1;
    p.cons = cons;
    LpResult res = solve_lp(p);
    if (res.status == LpStatus::Infeasible) throw EmptyConeError();
    if (res.status == LpStatus::Unbounded)
      throw NonPointedError(primitive_direction(res.ray));
    cons.push_back(LinCon{p.objective, Rel::EQ, res.value});
    point = res.x;
  }
  Ray r;
  r.dir = primitive_direction(point);
  r.incidence = ray_incidence(c, r.dir);
  verify_ray(c, r);
  return r;
}

namespace {

// forward declaration; adjacency decomposition lives in adjdecomp.cpp
}  // namespace

std::vector<Ray> adjacent_rays(const HCone& c, const Ray& e, std::size_t recursion_threshold) {
  verify_ray(c, e);
  const std::size_t dim = c.ambient;
  // project along e onto {x_j = 0}, j = first nonzero coordinate of e;
  // the image cone is cut out by the facets incident to e
  std::size_t j = 0;
  while (e.dir[j] == 0) ++j;
  HCone proj;
  proj.ambient = dim - 1;
  std::vector<std::size_t> inc_set = e.incidence;
  for (std::size_t i : inc_set) {
    VecI g;
    g.reserve(dim - 1);
    for (std::size_t k = 0; k < dim; ++k)
      if (k != j) g.push_back(c.facets[i][k]);
    if (!is_zero(g)) proj.facets.push_back(std::move(g));
  }
  std::vector<Ray> proj_rays = proj.facets.size() > recursion_threshold && proj.ambient >= 2
                                   ? enumerate_rays_recursive(proj, recursion_threshold)
                                   : dual_description(proj);
  std::vector<Ray> out;
  VecQ edir = to_rat_vec(e.dir);
  for (const Ray& pr : proj_rays) {
    // lift back: y has a zero at coordinate j
    VecQ y(dim, Rat(0));
    {
      std::size_t t = 0;
      for (std::size_t k = 0; k < dim; ++k)
        if (k != j) y[k] = Rat(pr.dir[t++]);
    }
    // smallest alpha with f_i(alpha e + y) >= 0 for every facet; the facets
    // incident to e hold for all alpha since f_i(e) = 0 there
    bool have = false;
    Rat alpha;
    for (std::size_t i = 0; i < c.facets.size(); ++i) {
      Rat fe = dot_mixed(c.facets[i], edir);
      if (fe <= 0) continue;
      Rat fy = dot_mixed(c.facets[i], y);
      Rat bound = -fy / fe;
      if (!have || bound > alpha) {
        alpha = bound;
        have = true;
      }
    }
    if (!have) throw std::logic_error("adjacent_rays: unbounded lift (cone not pointed?)");
    VecQ lifted(dim);
    for (std::size_t k = 0; k < dim; ++k) lifted[k] = alpha * edir[k] + y[k];
    Ray r;
    r.dir = primitive_direction(lifted);
    r.incidence = ray_incidence(c, r.dir);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const Ray& a, const Ray& b) { return lex_compare(a.dir, b.dir) < 0; });
  return out;
}

SkeletonGraph skeleton_graph(const HCone& c) {
  std::vector<Ray> rays = dual_description(c);
  SkeletonGraph g;
  g.nodes = rays.size();
  for (const Ray& r : rays) g.rays.push_back(r.dir);
  // adjacency: no third ray's incidence set contains the common incidence
  std::vector<std::vector<std::size_t>> incs;
  for (const Ray& r : rays) incs.push_back(r.incidence);
  for (std::size_t a = 0; a < rays.size(); ++a)
    for (std::size_t b = a + 1; b < rays.size(); ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(incs[a].begin(), incs[a].end(), incs[b].begin(), incs[b].end(),
                            std::back_inserter(common));
      bool adj = true;
      for (std::size_t t = 0; t < rays.size() && adj; ++t) {
        if (t == a || t == b) continue;
        if (std::includes(incs[t].begin(), incs[t].end(), common.begin(), common.end()))
          adj = false;
      }
      if (adj) g.edges.push_back({a, b});
    }
  return g;
}

namespace {

// unit-capacity max flow on the vertex-split digraph, stopping at limit
std::size_t vertex_disjoint_paths(const std::vector<std::vector<std::size_t>>& adj,
                                  std::size_t s, std::size_t t, std::size_t limit) {
  std::size_t n = adj.size();
  // nodes: 2*v (in), 2*v+1 (out)
  std::vector<std::map<std::size_t, int>> cap(2 * n);
  for (std::size_t v = 0; v < n; ++v) cap[2 * v][2 * v + 1] = 1;
  cap[2 * s][2 * s + 1] = static_cast<int>(limit + 1);
  cap[2 * t][2 * t + 1] = static_cast<int>(limit + 1);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : adj[v]) cap[2 * v + 1][2 * w] = static_cast<int>(limit + 1);
  std::size_t flow = 0;
  while (flow < limit) {
    std::vector<int> prev(2 * n, -1);
    std::vector<std::size_t> queue{2 * s};
    prev[2 * s] = static_cast<int>(2 * s);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::size_t u = queue[h];
      if (u == 2 * t + 1) break;
      for (const auto& [w, cp] : cap[u]) {
        if (cp > 0 && prev[w] < 0) {
          prev[w] = static_cast<int>(u);
          queue.push_back(w);
        }
      }
    }
    if (prev[2 * t + 1] < 0) break;
    std::size_t u = 2 * t + 1;
    while (u != 2 * s) {
      std::size_t p = static_cast<std::size_t>(prev[u]);
      cap[p][u] -= 1;
      cap[u][p] += 1;
      u = p;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

bool vertex_connectivity_at_least(const SkeletonGraph& g, std::size_t k) {
  std::size_t n = g.nodes;
  if (k == 0) return true;
  if (n < k + 1) return false;  // convention: kappa(K_n) = n-1
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::vector<bool>> am(n, std::vector<bool>(n, false));
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    am[a][b] = am[b][a] = true;
  }
  bool complete = true;
  for (std::size_t a = 0; a < n && complete; ++a)
    for (std::size_t b = a + 1; b < n && complete; ++b)
      if (!am[a][b]) complete = false;
  if (complete) return n - 1 >= k;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (am[a][b]) continue;
      if (vertex_disjoint_paths(adj, a, b, k) < k) return false;
    }
  return true;
}

std::vector<std::pair<VecI, Int>> polytope_facet_inequalities(const std::vector<VecQ>& points) {
  if (points.empty()) throw std::invalid_argument("polytope_facet_inequalities: no points");
  std::size_t n = points.front().size();
  HCone c;
  c.ambient = n + 1;
  for (const VecQ& p : points) {
    VecQ row = p;
    row.push_back(Rat(1));
    c.facets.push_back(scale_to_integer(row));
  }
  std::vector<std::pair<VecI, Int>> out;
  for (const Ray& r : dual_description(c)) {
    VecI a(r.dir.begin(), r.dir.end() - 1);
    out.push_back({std::move(a), r.dir.back()});
  }
  return out;
}

}  // namespace ltype
