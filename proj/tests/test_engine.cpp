#include <doctest.h>

#include "helpers.hpp"
#include "ltype/adjdecomp.hpp"
#include "ltype/lp.hpp"

#include <algorithm>
#include <set>

using namespace ltype;
using namespace ltype::testing;

namespace {

// optimal value by enumerating every vertex of the constraint arrangement
std::optional<Rat> lp_vertex_oracle(const LpProblem& p) {
  std::size_t n = p.nvars, m = p.cons.size();
  std::optional<Rat> best;
  std::vector<std::size_t> sub(n);
  std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t k) {
    if (k == n) {
      MatQ a(n, n);
      VecQ b(n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = p.cons[sub[r]].a[c];
        b[r] = p.cons[sub[r]].b;
      }
      if (det(a) == 0) return;
      auto x = solve(a, b);
      if (!x) return;
      for (const LinCon& con : p.cons) {
        Rat lhs = dot(con.a, *x);
        if (con.rel == Rel::LE && lhs > con.b) return;
        if (con.rel == Rel::GE && lhs < con.b) return;
        if (con.rel == Rel::EQ && lhs != con.b) return;
      }
      Rat val = dot(p.objective, *x);
      if (!best || (p.maximize ? val > *best : val < *best)) best = val;
      return;
    }
    for (std::size_t i = from; i < m; ++i) {
      sub[k] = i;
      pick(i + 1, k + 1);
    }
  };
  pick(0, 0);
  return best;
}

HCone square_cone() {
  HCone c;
  c.ambient = 3;
  c.facets = {{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}};
  return c;
}

}  // namespace

TEST_CASE("lp corner cases") {
  LpProblem p;
  p.nvars = 2;
  p.objective = {Rat(1), Rat(1)};
  p.cons = {{{Rat(1), Rat(0)}, Rel::LE, Rat(1)},
            {{Rat(0), Rat(1)}, Rel::LE, Rat(1)},
            {{Rat(1), Rat(0)}, Rel::GE, Rat(0)},
            {{Rat(0), Rat(1)}, Rel::GE, Rat(0)}};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 2);
  CHECK(r.x == VecQ{Rat(1), Rat(1)});

  LpProblem unb;
  unb.nvars = 1;
  unb.objective = {Rat(1)};
  unb.cons = {{{Rat(1)}, Rel::GE, Rat(1)}};
  LpResult ru = solve_lp(unb);
  REQUIRE(ru.status == LpStatus::Unbounded);
  CHECK(dot(unb.objective, ru.ray) > 0);

  LpProblem inf;
  inf.nvars = 1;
  inf.objective = {Rat(1)};
  inf.cons = {{{Rat(1)}, Rel::LE, Rat(0)}, {{Rat(1)}, Rel::GE, Rat(1)}};
  CHECK(solve_lp(inf).status == LpStatus::Infeasible);

  LpProblem eq;
  eq.nvars = 2;
  eq.nonneg = true;
  eq.objective = {Rat(1), Rat(2)};
  eq.cons = {{{Rat(1), Rat(1)}, Rel::EQ, Rat(1)}};
  LpResult re = solve_lp(eq);
  REQUIRE(re.status == LpStatus::Optimal);
  CHECK(re.value == 2);
}

TEST_CASE("lp against the vertex enumeration oracle") {
  Rng rng(201);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int it = 0; it < 50; ++it) {
    LpProblem p;
    p.nvars = 2 + it % 2;
    p.objective.resize(p.nvars);
    for (auto& v : p.objective) v = Rat(rand_int(rng, -4, 4));
    for (std::size_t i = 0; i < p.nvars; ++i) {
      VecQ e(p.nvars);
      e[i] = 1;
      p.cons.push_back({e, Rel::LE, Rat(3)});
      p.cons.push_back({e, Rel::GE, Rat(-3)});
    }
    std::size_t extra = 2 + it % 4;
    for (std::size_t i = 0; i < extra; ++i) {
      LinCon con;
      con.a.resize(p.nvars);
      for (auto& v : con.a) v = Rat(rand_int(rng, -3, 3));
      con.rel = (it + i) % 2 ? Rel::LE : Rel::GE;
      con.b = Rat(rand_int(rng, -6, 6));
      p.cons.push_back(std::move(con));
    }
    std::optional<Rat> want = lp_vertex_oracle(p);
    LpResult got = solve_lp(p);
    if (want) {
      ++optimal_seen;
      REQUIRE(got.status == LpStatus::Optimal);
      CHECK(got.value == *want);
    } else {
      ++infeasible_seen;
      CHECK(got.status == LpStatus::Infeasible);
    }
  }
  CHECK(optimal_seen > 10);
  CHECK(infeasible_seen > 0);
}

TEST_CASE("dual description of hand cones") {
  HCone simp;
  simp.ambient = 3;
  simp.facets = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<Ray> rays = dual_description(simp);
  REQUIRE(rays.size() == 3);
  CHECK(ray_dirs(rays) == std::vector<VecI>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  for (const Ray& r : rays) verify_ray(simp, r);

  HCone sq = square_cone();
  std::vector<Ray> sqr = dual_description(sq);
  REQUIRE(sqr.size() == 4);
  CHECK(ray_dirs(sqr) ==
        std::vector<VecI>{{-1, -1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, 1}});

  // a redundant facet changes nothing
  HCone red = sq;
  red.facets.push_back({0, 0, 1});
  red.facets.push_back({1, 1, 2});
  CHECK(ray_dirs(dual_description(red)) == ray_dirs(sqr));
}

TEST_CASE("dual description against the subset oracle") {
  Rng rng(202);
  for (int it = 0; it < 40; ++it) {
    std::size_t d = 3 + it % 3;
    HCone c = random_pointed_cone(d, d + 1 + it % 4, rng);
    std::vector<VecI> want = brute_force_rays(c);
    std::vector<Ray> rays = dual_description(c);
    CHECK(ray_dirs(rays) == want);
    for (const Ray& r : rays) {
      verify_ray(c, r);
      CHECK(r.incidence == ray_incidence(c, r.dir));
    }
    Ray init = initial_ray(c);
    CHECK(std::binary_search(want.begin(), want.end(), init.dir, VecILess{}));
  }
}

TEST_CASE("recursive enumeration agrees") {
  Rng rng(203);
  for (int it = 0; it < 10; ++it) {
    HCone c = random_pointed_cone(4, 7, rng);
    CHECK(ray_dirs(enumerate_rays_recursive(c, 1)) == ray_dirs(dual_description(c)));
  }
}

TEST_CASE("nonpointed and empty cones are reported") {
  HCone half;
  half.ambient = 2;
  half.facets = {{1, 0}};
  CHECK_THROWS_AS(dual_description(half), NonPointedError);
  try {
    dual_description(half);
  } catch (const NonPointedError& e) {
    CHECK(!is_zero(e.lineality));
    Int s = dot_int(half.facets[0], e.lineality);
    CHECK(s == 0);
  }
  // the zero cone is pointed and has no rays at all; only initial_ray, which
  // must hand back a ray, treats that as an error
  HCone neg;
  neg.ambient = 2;
  neg.facets = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  CHECK(dual_description(neg).empty());
  CHECK_THROWS_AS(initial_ray(neg), EmptyConeError);
}

TEST_CASE("skeleton graph and adjacency") {
  HCone sq = square_cone();
  SkeletonGraph g = skeleton_graph(sq);
  CHECK(g.nodes == 4);
  CHECK(g.edges.size() == 4);  // a 4-cycle
  CHECK(vertex_connectivity_at_least(g, 2));
  CHECK(!vertex_connectivity_at_least(g, 3));

  Ray corner;
  corner.dir = {1, 1, 1};
  corner.incidence = ray_incidence(sq, corner.dir);
  std::vector<Ray> nb = adjacent_rays(sq, corner);
  CHECK(ray_dirs(nb) == std::vector<VecI>{{-1, 1, 1}, {1, -1, 1}});

  HCone simp4;
  simp4.ambient = 4;
  simp4.facets = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  SkeletonGraph k4 = skeleton_graph(simp4);
  CHECK(k4.edges.size() == 6);  // complete graph
  CHECK(vertex_connectivity_at_least(k4, 3));
  CHECK(!vertex_connectivity_at_least(k4, 4));
}

TEST_CASE("adjacency matches the skeleton on random cones") {
  Rng rng(204);
  for (int it = 0; it < 8; ++it) {
    HCone c = random_pointed_cone(4, 8, rng);
    SkeletonGraph g = skeleton_graph(c);
    std::vector<std::set<std::size_t>> adj(g.nodes);
    for (auto [i, j] : g.edges) {
      adj[i].insert(j);
      adj[j].insert(i);
    }
    for (std::size_t i = 0; i < g.nodes; ++i) {
      Ray r;
      r.dir = g.rays[i];
      r.incidence = ray_incidence(c, r.dir);
      std::vector<VecI> nb = ray_dirs(adjacent_rays(c, r));
      std::vector<VecI> want;
      for (std::size_t j : adj[i]) want.push_back(g.rays[j]);
      std::sort(want.begin(), want.end(), VecILess{});
      CHECK(nb == want);
    }
    CHECK(vertex_connectivity_at_least(g, c.ambient - 1));
  }
}

TEST_CASE("facet inequalities of simple polytopes") {
  std::vector<VecQ> sqpts = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)},
                             {Rat(1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}};
  auto facets = polytope_facet_inequalities(sqpts);
  CHECK(facets.size() == 4);
  for (const auto& [a, a0] : facets)
    for (const VecQ& p : sqpts) CHECK(dot_mixed(a, p) + a0 >= 0);

  std::vector<VecQ> cube;
  for (int x = 0; x <= 1; ++x)
    for (int y = 0; y <= 1; ++y)
      for (int z = 0; z <= 1; ++z) cube.push_back({Rat(x), Rat(y), Rat(z)});
  CHECK(polytope_facet_inequalities(cube).size() == 6);
}

TEST_CASE("adjacency decomposition with the trivial group") {
  Rng rng(205);
  SymmetryAction triv;
  for (int it = 0; it < 6; ++it) {
    HCone c = random_pointed_cone(4, 7, rng);
    triv.ambient = 4;
    triv.generators.clear();
    OrbitRegistry reg = adjacency_decomposition(c, triv);
    CHECK(reg.complete);
    std::vector<VecI> got;
    for (const OrbitRecord& o : reg.orbits) {
      CHECK(o.orbit_size == 1);
      got.push_back(o.rep.dir);
    }
    std::sort(got.begin(), got.end(), VecILess{});
    CHECK(got == ray_dirs(dual_description(c)));
  }
}

TEST_CASE("adjacency decomposition under a rotation") {
  HCone sq = square_cone();
  SymmetryAction g;
  g.ambient = 3;
  g.generators = {MatI{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
  OrbitRegistry reg = adjacency_decomposition(sq, g);
  CHECK(reg.complete);
  REQUIRE(reg.orbits.size() == 1);
  CHECK(reg.orbits[0].orbit_size == 4);
  CHECK(reg.total_rays() == 4);
  CHECK(ray_orbit(g, reg.orbits[0].rep.dir).size() == 4);
  CHECK(ray_dirs(expand_registry(sq, g, reg)) == ray_dirs(dual_description(sq)));
}

namespace {

// random facet set closed under the cyclic coordinate shift
HCone symmetric_cone(std::size_t d, std::size_t seeds, Rng& rng, SymmetryAction& g) {
  MatI shift(d, d);
  for (std::size_t i = 0; i < d; ++i) shift((i + 1) % d, i) = 1;
  g.ambient = d;
  g.generators = {shift};
  for (;;) {
    std::set<VecI> fs;
    for (std::size_t s = 0; s < seeds; ++s) {
      VecI f(d);
      for (auto& x : f) x = rand_int(rng, -2, 2);
      if (is_zero(f)) f[0] = 1;
      make_primitive_signed(f);
      // keep orientation: flipping signs would change the halfspaces
      for (std::size_t r = 0; r < d; ++r) {
        VecI rot(d);
        for (std::size_t i = 0; i < d; ++i) rot[(i + r) % d] = f[i];
        fs.insert(rot);
      }
    }
    HCone c;
    c.ambient = d;
    c.facets = {fs.begin(), fs.end()};
    if (rank_of_rows(c.facets, d) != d) continue;
    if (brute_force_rays(c).empty()) continue;
    return c;
  }
}

}  // namespace

TEST_CASE("adjacency decomposition on symmetric cones") {
  Rng rng(206);
  for (int it = 0; it < 8; ++it) {
    SymmetryAction g;
    HCone c = symmetric_cone(4 + it % 2, 2 + it % 2, rng, g);
    OrbitRegistry reg = adjacency_decomposition(c, g);
    std::vector<VecI> want = ray_dirs(dual_description(c));
    CHECK(ray_dirs(expand_registry(c, g, reg)) == want);
    std::size_t total = 0;
    for (const OrbitRecord& o : reg.orbits) total += o.orbit_size;
    CHECK(total == want.size());
    if (reg.early_stopped) {
      // the connectivity shortcut must never lose rays
      CHECK(reg.complete);
    }
    AdOptions strict;
    strict.strict_balinski = true;
    OrbitRegistry reg2 = adjacency_decomposition(c, g, strict);
    CHECK(!reg2.early_stopped);
    CHECK(ray_dirs(expand_registry(c, g, reg2)) == want);
  }
}

TEST_CASE("snapshots make runs resumable") {
  Rng rng(207);
  SymmetryAction g;
  HCone c = symmetric_cone(5, 3, rng, g);

  std::vector<OrbitRegistry> snaps;
  AdOptions opt;
  opt.snapshot_every = 1;
  opt.snapshot = [&](const OrbitRegistry& r) { snaps.push_back(r); };
  OrbitRegistry full = adjacency_decomposition(c, g, opt);
  REQUIRE(full.complete);
  REQUIRE(snaps.size() >= 2);

  // resuming from any intermediate snapshot reaches the same registry
  for (std::size_t k = 0; k + 1 < snaps.size(); k += std::max<std::size_t>(1, snaps.size() / 3)) {
    AdOptions ro;
    ro.resume_from = &snaps[k];
    OrbitRegistry resumed = adjacency_decomposition(c, g, ro);
    CHECK(resumed.complete == full.complete);
    REQUIRE(resumed.orbits.size() == full.orbits.size());
    for (std::size_t i = 0; i < full.orbits.size(); ++i) {
      CHECK(resumed.orbits[i].rep.dir == full.orbits[i].rep.dir);
      CHECK(resumed.orbits[i].orbit_size == full.orbits[i].orbit_size);
    }
  }

  // a run aborted mid-way resumes from its last snapshot
  struct Abort {};
  std::optional<OrbitRegistry> last;
  AdOptions crash;
  crash.snapshot_every = 1;
  std::size_t calls = 0;
  crash.snapshot = [&](const OrbitRegistry& r) {
    last = r;
    if (++calls == 1) throw Abort{};
  };
  bool aborted = false;
  try {
    adjacency_decomposition(c, g, crash);
  } catch (const Abort&) {
    aborted = true;
  }
  REQUIRE(aborted);
  REQUIRE(last.has_value());
  CHECK(!last->complete);
  AdOptions ro;
  ro.resume_from = &*last;
  OrbitRegistry resumed = adjacency_decomposition(c, g, ro);
  CHECK(resumed.complete);
  CHECK(resumed.orbits.size() == full.orbits.size());
  CHECK(resumed.total_rays() == full.total_rays());
}
