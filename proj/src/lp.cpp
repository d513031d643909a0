#include "ltype/lp.hpp"

#include <algorithm>

namespace ltype {

namespace {

// dense exact simplex on the standard-form system A y = b, y >= 0
struct Tableau {
  std::size_t m = 0, n = 0;       // rows, structural columns
  std::vector<VecQ> rows;         // m rows of length n + 1 (rhs last)
  VecQ cost;                      // length n + 1; maintained reduced (maximization)
  std::vector<std::size_t> basis; // basic column per row

  Rat& rhs(std::size_t i) { return rows[i][n]; }

  void price_out(std::size_t r) {
    const Rat f = cost[basis[r]];
    if (f == 0) return;
    for (std::size_t c = 0; c <= n; ++c) cost[c] -= f * rows[r][c];
  }

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / rows[r][c];
    for (std::size_t j = 0; j <= n; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (cost[c] != 0) {
      Rat f = cost[c];
      for (std::size_t j = 0; j <= n; ++j) cost[j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule; allowed(c) restricts entering columns. Returns false when no
  // improving column remains, true when it pivoted, Unbounded via out param.
  enum class Step { Done, Pivoted, Unbounded };
  Step step(const std::vector<bool>* allowed, std::size_t* unbounded_col) {
    std::size_t enter = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (allowed && !(*allowed)[c]) continue;
      if (cost[c] > 0) {
        enter = c;
        break;
      }
    }
    if (enter == n) return Step::Done;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i][enter] <= 0) continue;
      Rat ratio = rhs(i) / rows[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) {
      if (unbounded_col) *unbounded_col = enter;
      return Step::Unbounded;
    }
    pivot(leave, enter);
    return Step::Pivoted;
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  const std::size_t nv = p.nvars;
  for (const LinCon& c : p.cons)
    if (c.a.size() != nv) throw std::invalid_argument("solve_lp: constraint arity mismatch");
  if (p.objective.size() != nv) throw std::invalid_argument("solve_lp: objective arity mismatch");

  const std::size_t m = p.cons.size();
  // columns: u_0..u_{nv-1}, then v_0..v_{nv-1} unless nonneg (x = u - v),
  // then slacks, then artificials
  const std::size_t xw = p.nonneg ? nv : 2 * nv;
  std::size_t nslack = 0;
  for (const LinCon& c : p.cons)
    if (c.rel != Rel::EQ) ++nslack;
  const std::size_t n_struct = xw + nslack;
  const std::size_t n_total = n_struct + m;

  Tableau t;
  t.m = m;
  t.n = n_total;
  t.rows.assign(m, VecQ(n_total + 1, Rat(0)));
  t.basis.assign(m, 0);

  std::size_t slack_at = xw;
  for (std::size_t i = 0; i < m; ++i) {
    const LinCon& c = p.cons[i];
    bool flip = c.b < 0;
    Rat sign = flip ? Rat(-1) : Rat(1);
    for (std::size_t j = 0; j < nv; ++j) {
      t.rows[i][j] = sign * c.a[j];
      if (!p.nonneg) t.rows[i][nv + j] = -sign * c.a[j];
    }
    if (c.rel != Rel::EQ) {
      Rat s = (c.rel == Rel::LE) ? Rat(1) : Rat(-1);
      t.rows[i][slack_at++] = sign * s;
    }
    t.rows[i][n_total] = sign * c.b;
    t.rows[i][n_struct + i] = 1;  // artificial
    t.basis[i] = n_struct + i;
  }

  // phase 1: maximize -(sum of artificials)
  t.cost.assign(n_total + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i) t.cost[n_struct + i] = -1;
  for (std::size_t i = 0; i < m; ++i) t.price_out(i);
  for (;;) {
    Tableau::Step s = t.step(nullptr, nullptr);
    if (s == Tableau::Step::Done) break;
    if (s == Tableau::Step::Unbounded)
      throw std::logic_error("solve_lp: phase 1 cannot be unbounded");
  }
  if (t.cost[n_total] != 0) {
    // -sum(artificials) stayed negative
    LpResult r;
    r.status = LpStatus::Infeasible;
    return r;
  }
  // drive remaining artificials out of the basis
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n_struct) continue;
    std::size_t c = 0;
    while (c < n_struct && t.rows[i][c] == 0) ++c;
    if (c < n_struct) t.pivot(i, c);
    // else: the row is 0 = 0 and stays parked on its artificial at value 0
  }

  // phase 2
  std::vector<bool> allowed(n_total, true);
  for (std::size_t i = 0; i < m; ++i) allowed[n_struct + i] = false;
  t.cost.assign(n_total + 1, Rat(0));
  Rat obj_sign = p.maximize ? Rat(1) : Rat(-1);
  for (std::size_t j = 0; j < nv; ++j) {
    t.cost[j] = obj_sign * p.objective[j];
    if (!p.nonneg) t.cost[nv + j] = -obj_sign * p.objective[j];
  }
  for (std::size_t i = 0; i < m; ++i) t.price_out(i);

  auto extract_x = [&]() {
    VecQ x(nv, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < nv)
        x[t.basis[i]] += t.rhs(i);
      else if (!p.nonneg && t.basis[i] < 2 * nv)
        x[t.basis[i] - nv] -= t.rhs(i);
    }
    return x;
  };

  for (;;) {
    std::size_t ucol = 0;
    Tableau::Step s = t.step(&allowed, &ucol);
    if (s == Tableau::Step::Pivoted) continue;
    LpResult r;
    r.x = extract_x();
    if (s == Tableau::Step::Done) {
      r.status = LpStatus::Optimal;
      Rat val = 0;
      for (std::size_t j = 0; j < nv; ++j) val += p.objective[j] * r.x[j];
      r.value = val;
      return r;
    }
    // unbounded: increasing column ucol improves the objective forever
    r.status = LpStatus::Unbounded;
    VecQ dir(n_total, Rat(0));
    dir[ucol] = 1;
    for (std::size_t i = 0; i < m; ++i)
      if (t.rows[i][ucol] != 0) dir[t.basis[i]] = -t.rows[i][ucol];
    r.ray.assign(nv, Rat(0));
    for (std::size_t j = 0; j < nv; ++j)
      r.ray[j] = p.nonneg ? dir[j] : dir[j] - dir[nv + j];
    return r;
  }
}

}  // namespace ltype
