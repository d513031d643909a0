#include "ltype/isometry.hpp"

#include <algorithm>
#include <unordered_set>

namespace ltype {

namespace {

struct IsometrySearch {
  const QuadForm& q1;
  const QuadForm& q2;
  const std::function<bool(const MatI&)>& cb;
  std::size_t d;

  std::vector<VecI> basis;  // characteristic vectors of q2, greedy independent
  MatQ target;              // their pairwise Gram under q2
  std::vector<std::vector<VecI>> storage;            // distinct candidate pools
  std::vector<const std::vector<VecI>*> candidates;  // per level
  std::vector<const std::vector<VecQ>*> images;      // Q1 * w cached per level
  std::vector<std::vector<VecQ>> image_storage;
  MatQ basis_inv;

  std::vector<std::size_t> chosen;
  bool stopped = false;

  IsometrySearch(const QuadForm& a, const QuadForm& b, const std::function<bool(const MatI&)>& f)
      : q1(a), q2(b), cb(f), d(a.dim) {}

  bool prepare() {
    // greedy characteristic basis of q2 by increasing norm
    Rat c = 0;
    for (std::size_t i = 0; i < d; ++i) c = std::max(c, q2.m(i, i));
    for (;;) {
      std::vector<VecI> pool = vectors_below(q2, c);
      std::stable_sort(pool.begin(), pool.end(), [&](const VecI& a, const VecI& b) {
        Rat na = q2.eval(a), nb = q2.eval(b);
        if (na != nb) return na < nb;
        return lex_compare(a, b) < 0;
      });
      RankTracker tracker(d);
      basis.clear();
      for (const VecI& v : pool) {
        if (tracker.add_row(to_rat_vec(v))) basis.push_back(v);
        if (basis.size() == d) break;
      }
      if (basis.size() == d) break;
      c *= 2;
    }
    target = MatQ(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      VecQ qi = q2.apply(basis[i]);
      for (std::size_t j = 0; j < d; ++j) target(i, j) = dot_mixed(basis[j], qi);
    }
    MatQ bm(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) bm(i, j) = Rat(basis[j][i]);
    basis_inv = inverse(bm);

    storage.resize(d);
    image_storage.resize(d);
    candidates.assign(d, nullptr);
    images.assign(d, nullptr);
    for (std::size_t k = 0; k < d; ++k) {
      Rat norm = target(k, k);
      bool reused = false;
      for (std::size_t p = 0; p < k; ++p)
        if (target(p, p) == norm) {
          candidates[k] = candidates[p];
          images[k] = images[p];
          reused = true;
          break;
        }
      if (reused) continue;
      std::vector<VecI> match;
      for (const VecI& v : vectors_below(q1, norm))
        if (q1.eval(v) == norm) match.push_back(v);
      // necessary condition: equal vector counts at this norm
      std::size_t count2 = 0;
      for (const VecI& v : vectors_below(q2, norm))
        if (q2.eval(v) == norm) ++count2;
      if (match.size() != count2) return false;
      storage[k] = std::move(match);
      image_storage[k].reserve(storage[k].size());
      for (const VecI& v : storage[k]) image_storage[k].push_back(q1.apply(v));
      candidates[k] = &storage[k];
      images[k] = &image_storage[k];
    }
    return true;
  }

  void emit() {
    MatQ w(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const VecI& v = (*candidates[j])[chosen[j]];
      for (std::size_t i = 0; i < d; ++i) w(i, j) = Rat(v[i]);
    }
    MatQ a = w * basis_inv;
    MatI ai(d, d);
    for (std::size_t i = 0; i < d * d; ++i) {
      if (a.a[i].get_den() != 1) return;
      ai.a[i] = a.a[i].get_num();
    }
    if (!is_unimodular(ai)) return;
    if (!(conjugate(q1, ai) == q2)) return;
    if (!cb(ai)) stopped = true;
  }

  void search(std::size_t level) {
    if (stopped) return;
    if (level == d) {
      emit();
      return;
    }
    const std::vector<VecI>& cand = *candidates[level];
    const std::vector<VecQ>& imgs = *images[level];
    for (std::size_t idx = 0; idx < cand.size(); ++idx) {
      bool ok = true;
      for (std::size_t p = 0; p < level && ok; ++p) {
        const VecI& wp = (*candidates[p])[chosen[p]];
        if (dot_mixed(wp, imgs[idx]) != target(p, level)) ok = false;
      }
      if (!ok) continue;
      chosen.push_back(idx);
      search(level + 1);
      chosen.pop_back();
      if (stopped) return;
    }
  }
};

}  // namespace

void for_each_isometry(const QuadForm& q1, const QuadForm& q2,
                       const std::function<bool(const MatI&)>& cb) {
  if (q1.dim != q2.dim) return;
  if (q1.dim == 0) {
    cb(MatI(0, 0));
    return;
  }
  if (!is_pd(q1) || !is_pd(q2))
    throw std::invalid_argument("for_each_isometry: forms must be positive definite");
  if (det(q1.m) != det(q2.m)) return;
  IsometrySearch s(q1, q2, cb);
  if (!s.prepare()) return;
  s.search(0);
}

std::optional<MatI> find_isometry(const QuadForm& q1, const QuadForm& q2) {
  std::optional<MatI> out;
  for_each_isometry(q1, q2, [&](const MatI& a) {
    out = a;
    return false;
  });
  return out;
}

std::vector<MatI> group_closure(const std::vector<MatI>& gens, std::size_t d,
                                std::size_t limit) {
  std::unordered_set<MatI, MatIHash, std::equal_to<MatI>> seen;
  std::vector<MatI> elems;
  elems.push_back(MatI::identity(d));
  seen.insert(elems.front());
  for (std::size_t head = 0; head < elems.size(); ++head) {
    MatI cur = elems[head];
    for (const MatI& g : gens) {
      MatI next = cur * g;
      if (seen.insert(next).second) {
        elems.push_back(next);
        if (limit && elems.size() > limit)
          throw std::runtime_error("group_closure: size limit exceeded");
      }
    }
  }
  return elems;
}

GroupInfo automorphisms(const QuadForm& q) {
  std::vector<MatI> elems;
  for_each_isometry(q, q, [&](const MatI& a) {
    elems.push_back(a);
    return true;
  });
  GroupInfo info;
  info.order = Int(static_cast<unsigned long>(elems.size()));
  std::unordered_set<MatI, MatIHash> covered;
  covered.insert(MatI::identity(q.dim));
  for (const MatI& e : elems) {
    if (covered.count(e)) continue;
    info.generators.push_back(e);
    covered.clear();
    for (const MatI& x : group_closure(info.generators, q.dim)) covered.insert(x);
  }
  return info;
}

std::vector<QuadForm> fixed_subspace(const std::vector<MatI>& gens, std::size_t d) {
  std::size_t dd = form_space_dim(d);
  MatQ stacked(gens.size() * dd, dd);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    MatQ action = gram_action_matrix(gens[g]);
    for (std::size_t r = 0; r < dd; ++r)
      for (std::size_t c = 0; c < dd; ++c)
        stacked(g * dd + r, c) = action(r, c) - (r == c ? Rat(1) : Rat(0));
  }
  std::vector<QuadForm> out;
  for (const VecQ& v : nullspace(stacked)) {
    VecI vi = primitive_direction(v);
    out.push_back(vec_to_form(d, to_rat_vec(vi)));
  }
  return out;
}

}  // namespace ltype
