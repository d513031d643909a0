#include "ltype/lattice.hpp"

#include <algorithm>

namespace ltype {

LdlPd ldl_decompose(const QuadForm& q) {
  if (!is_pd(q)) throw std::invalid_argument("ldl_decompose: form is not positive definite");
  std::size_t d = q.dim;
  MatQ a = q.m;
  LdlPd out;
  out.dim = d;
  out.l = MatQ(d, d);
  out.diag.assign(d, Rat(0));
  for (std::size_t i = 0; i < d; ++i) {
    out.diag[i] = a(i, i);
    for (std::size_t j = i + 1; j < d; ++j) out.l(i, j) = a(i, j) / a(i, i);
    for (std::size_t r = i + 1; r < d; ++r)
      for (std::size_t c = i + 1; c < d; ++c) a(r, c) -= a(r, i) * a(i, c) / a(i, i);
  }
  return out;
}

namespace {

// true iff v <= sqrt(t2), for t2 >= 0
bool le_sqrt(const Rat& v, const Rat& t2) {
  if (v <= 0) return true;
  return v * v <= t2;
}

struct EllipsoidSearch {
  const LdlPd& ldl;
  const VecQ& center;
  // visit(x) may lower the bound as the search runs (closest-vector mode)
  Rat bound;
  bool dynamic;
  std::function<void(const VecI&, const Rat&)> visit;
  VecI x;

  EllipsoidSearch(const LdlPd& l, const VecQ& c, Rat b, bool dyn,
                  std::function<void(const VecI&, const Rat&)> vis)
      : ldl(l), center(c), bound(std::move(b)), dynamic(dyn), visit(std::move(vis)) {
    x.assign(l.dim, Int(0));
  }

  // level runs from dim-1 down to 0; used = sum of terms for levels > level
  void run(std::size_t level, const Rat& used) {
    const std::size_t i = level;
    // offset of the level-i term: -t_i + sum_{j>i} l(i,j) (x_j - t_j)
    Rat off = -center[i];
    for (std::size_t j = i + 1; j < ldl.dim; ++j) {
      if (ldl.l(i, j) == 0) continue;
      off += ldl.l(i, j) * (Rat(x[j]) - center[j]);
    }
    Rat rem = bound - used;
    if (rem < 0) return;
    Rat t2 = rem / ldl.diag[i];
    Int g0 = isqrt_floor_rat(t2) + floor_rat(-off);
    Int hi = le_sqrt(Rat(g0 + 1) + off, t2) ? g0 + 1 : g0;
    Int l0 = ceil_rat(-off) - isqrt_floor_rat(t2);
    Int lo = le_sqrt(-(Rat(l0 - 1) + off), t2) ? l0 - 1 : l0;
    for (Int v = lo; v <= hi; v += 1) {
      Rat dv = Rat(v) + off;
      Rat term = ldl.diag[i] * dv * dv;
      Rat used2 = used + term;
      if (used2 > bound) continue;  // bound may have shrunk mid-loop
      x[i] = v;
      if (i == 0)
        visit(x, used2);
      else
        run(i - 1, used2);
      if (dynamic && used > bound) break;
    }
    x[i] = 0;
  }

  void start() {
    if (ldl.dim == 0) return;
    run(ldl.dim - 1, Rat(0));
  }
};

}  // namespace

std::vector<VecI> vectors_below(const QuadForm& q, const Rat& c) {
  if (c < 0) return {};
  LdlPd ldl = ldl_decompose(q);
  VecQ center(q.dim, Rat(0));
  std::vector<VecI> out;
  EllipsoidSearch search(ldl, center, c, false, [&](const VecI& v, const Rat&) {
    if (!is_zero(v)) out.push_back(v);
  });
  search.start();
  std::sort(out.begin(), out.end(), VecILess{});
  return out;
}

std::vector<VecI> closest_vectors(const QuadForm& q, const VecQ& t) {
  if (t.size() != q.dim) throw std::invalid_argument("closest_vectors: size mismatch");
  LdlPd ldl = ldl_decompose(q);
  // initial bound from coordinatewise rounding
  VecQ start(q.dim);
  for (std::size_t i = 0; i < q.dim; ++i) start[i] = Rat(floor_rat(t[i] + Rat(1, 2)));
  VecQ diff(q.dim);
  for (std::size_t i = 0; i < q.dim; ++i) diff[i] = start[i] - t[i];
  Rat best = q.eval(diff);
  std::vector<VecI> out;
  EllipsoidSearch search(ldl, t, best, true, [&](const VecI&, const Rat&) {});
  search.visit = [&](const VecI& v, const Rat& val) {
    if (val > search.bound) return;
    if (val < search.bound) {
      out.clear();
      search.bound = val;
    }
    out.push_back(v);
  };
  search.start();
  std::sort(out.begin(), out.end(), VecILess{});
  return out;
}

Rat closest_distance(const QuadForm& q, const VecQ& t) {
  std::vector<VecI> cv = closest_vectors(q, t);
  VecQ diff(q.dim);
  for (std::size_t i = 0; i < q.dim; ++i) diff[i] = Rat(cv.front()[i]) - t[i];
  return q.eval(diff);
}

std::map<Rat, std::size_t> norm_profile(const QuadForm& q, std::size_t k) {
  Rat c = 0;
  for (std::size_t i = 0; i < q.dim; ++i) c = std::max(c, q.m(i, i));
  for (;;) {
    std::map<Rat, std::size_t> prof;
    for (const VecI& v : vectors_below(q, c)) prof[q.eval(v)]++;
    if (prof.size() >= k) {
      while (prof.size() > k) prof.erase(std::prev(prof.end()));
      return prof;
    }
    c *= 2;
  }
}

}  // namespace ltype
