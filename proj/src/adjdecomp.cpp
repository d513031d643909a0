#include "ltype/adjdecomp.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "ltype/linalg.hpp"
#include "ltype/quadform.hpp"

namespace ltype {

namespace {

void validate_action(const HCone& c, const SymmetryAction& g) {
  if (!g.generators.empty() && g.ambient != c.ambient)
    throw std::invalid_argument("symmetry action dimension mismatch");
  for (const MatI& a : g.generators) {
    if (a.nr != c.ambient || a.nc != c.ambient || !is_unimodular(a))
      throw std::invalid_argument("symmetry generator is not unimodular");
    // the transpose action must permute the facet functionals up to
    // positive scaling, otherwise the generator does not preserve the cone
    std::vector<bool> hit(c.facets.size(), false);
    for (std::size_t i = 0; i < c.facets.size(); ++i) {
      VecI img(c.ambient, Int(0));
      for (std::size_t k = 0; k < c.ambient; ++k)
        for (std::size_t l = 0; l < c.ambient; ++l)
          img[k] += a(l, k) * c.facets[i][l];
      make_primitive(img);
      bool found = false;
      for (std::size_t j = 0; j < c.facets.size(); ++j) {
        if (hit[j]) continue;
        VecI f = c.facets[j];
        make_primitive(f);
        if (f == img) {
          hit[j] = true;
          found = true;
          break;
        }
      }
      if (!found)
        throw std::invalid_argument("symmetry generator does not preserve the cone");
    }
  }
}

VecI apply_gen(const MatI& a, const VecI& v) {
  VecI out(a.nr, Int(0));
  for (std::size_t i = 0; i < a.nr; ++i)
    for (std::size_t j = 0; j < a.nc; ++j) out[i] += a(i, j) * v[j];
  make_primitive(out);
  return out;
}

struct OrbitScan {
  VecI rep;                // lex-min element
  std::size_t size = 0;
};

OrbitScan scan_orbit(const SymmetryAction& g, const VecI& dir) {
  OrbitScan res;
  res.rep = dir;
  res.size = 1;
  if (g.generators.empty()) return res;
  std::unordered_set<VecI, VecIHash> seen;
  seen.insert(dir);
  std::deque<VecI> queue{dir};
  while (!queue.empty()) {
    VecI v = std::move(queue.front());
    queue.pop_front();
    for (const MatI& a : g.generators) {
      VecI w = apply_gen(a, v);
      if (seen.insert(w).second) {
        if (lex_compare(w, res.rep) < 0) res.rep = w;
        queue.push_back(w);
      }
    }
  }
  res.size = seen.size();
  return res;
}

std::size_t find_orbit(const std::vector<OrbitRecord>& orbits, const VecI& rep) {
  std::size_t lo = 0, hi = orbits.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (lex_compare(orbits[mid].rep.dir, rep) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

std::size_t OrbitRegistry::total_rays() const {
  std::size_t n = 0;
  for (const OrbitRecord& o : orbits) n += o.orbit_size;
  return n;
}

std::vector<VecI> ray_orbit(const SymmetryAction& g, const VecI& dir) {
  std::unordered_set<VecI, VecIHash> seen;
  seen.insert(dir);
  std::deque<VecI> queue{dir};
  while (!queue.empty()) {
    VecI v = std::move(queue.front());
    queue.pop_front();
    for (const MatI& a : g.generators) {
      VecI w = apply_gen(a, v);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  std::vector<VecI> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const VecI& x, const VecI& y) {
    return lex_compare(x, y) < 0;
  });
  return out;
}

OrbitRegistry adjacency_decomposition(const HCone& c, const SymmetryAction& g,
                                      const AdOptions& opt) {
  validate_action(c, g);
  OrbitRegistry reg;
  reg.ambient = c.ambient;
  if (opt.resume_from) {
    reg = *opt.resume_from;
    if (reg.ambient != c.ambient)
      throw std::invalid_argument("resume registry dimension mismatch");
    for (const OrbitRecord& o : reg.orbits) verify_ray(c, o.rep);
    if (reg.complete) return reg;
  } else {
    Ray seed = initial_ray(c);
    OrbitScan sc = scan_orbit(g, seed.dir);
    OrbitRecord rec;
    rec.rep.dir = sc.rep;
    rec.rep.incidence = ray_incidence(c, sc.rep);
    rec.orbit_size = sc.size;
    reg.orbits.push_back(std::move(rec));
  }

  std::size_t balinski_bound = 0;
  if (opt.strict_balinski)
    balinski_bound = c.ambient >= 3 ? c.ambient - 3 : 0;
  else
    balinski_bound = c.ambient >= 2 ? c.ambient - 2 : 0;

  std::size_t treated_since_snapshot = 0;
  for (;;) {
    // pick the untreated orbit with fewest incident facets, ties by direction
    std::size_t pick = reg.orbits.size();
    std::size_t untreated_total = 0;
    bool any_treated = false;
    for (std::size_t i = 0; i < reg.orbits.size(); ++i) {
      const OrbitRecord& o = reg.orbits[i];
      if (o.treated) {
        any_treated = true;
        continue;
      }
      untreated_total += o.orbit_size;
      if (pick == reg.orbits.size() ||
          o.rep.incidence.size() < reg.orbits[pick].rep.incidence.size())
        pick = i;
    }
    if (pick == reg.orbits.size()) {
      reg.complete = true;
      reg.early_stopped = false;
      break;
    }
    // the skeleton of a full-dimensional pointed cone is (D-1)-connected, so
    // once some rays are treated and the untreated ones are too few to
    // separate the treated part from anything undiscovered, no ray is missing
    if (any_treated && untreated_total <= balinski_bound) {
      reg.complete = true;
      reg.early_stopped = true;
      break;
    }

    std::vector<Ray> nbrs = adjacent_rays(c, reg.orbits[pick].rep, opt.recursion_threshold);
    reg.orbits[pick].treated = true;
    for (const Ray& n : nbrs) {
      OrbitScan sc = scan_orbit(g, n.dir);
      std::size_t at = find_orbit(reg.orbits, sc.rep);
      if (at < reg.orbits.size() && reg.orbits[at].rep.dir == sc.rep) continue;
      OrbitRecord rec;
      rec.rep.dir = sc.rep;
      rec.rep.incidence = ray_incidence(c, sc.rep);
      rec.orbit_size = sc.size;
      reg.orbits.insert(reg.orbits.begin() + at, std::move(rec));
    }
    if (opt.snapshot && ++treated_since_snapshot >= opt.snapshot_every) {
      treated_since_snapshot = 0;
      opt.snapshot(reg);
    }
  }
  return reg;
}

std::vector<Ray> expand_registry(const HCone& c, const SymmetryAction& g,
                                 const OrbitRegistry& reg) {
  if (!reg.complete)
    throw std::invalid_argument("cannot expand an incomplete registry");
  std::unordered_set<VecI, VecIHash> seen;
  for (const OrbitRecord& o : reg.orbits) {
    std::vector<VecI> orbit = ray_orbit(g, o.rep.dir);
    if (orbit.size() != o.orbit_size)
      throw std::logic_error("registry orbit size mismatch");
    for (VecI& v : orbit) seen.insert(std::move(v));
  }
  std::vector<Ray> out;
  out.reserve(seen.size());
  for (const VecI& v : seen) {
    Ray r;
    r.dir = v;
    r.incidence = ray_incidence(c, v);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const Ray& a, const Ray& b) { return lex_compare(a.dir, b.dir) < 0; });
  return out;
}

std::vector<Ray> enumerate_rays_recursive(const HCone& c, std::size_t threshold) {
  SymmetryAction trivial;
  trivial.ambient = c.ambient;
  AdOptions opt;
  opt.recursion_threshold = threshold;
  OrbitRegistry reg = adjacency_decomposition(c, trivial, opt);
  return expand_registry(c, trivial, reg);
}

}  // namespace ltype
