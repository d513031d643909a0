#pragma once

#include "ltype/numeric.hpp"

namespace ltype {

enum class Rel { LE, GE, EQ };

struct LinCon {
  VecQ a;
  Rel rel = Rel::LE;
  Rat b;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpProblem {
  std::size_t nvars = 0;
  bool maximize = true;
  bool nonneg = false;         // constrain x >= 0 instead of free variables
  VecQ objective;              // length nvars
  std::vector<LinCon> cons;    // variables are free unless constrained explicitly
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  VecQ x;      // optimal point (Optimal) or feasible start of the ray (Unbounded)
  Rat value;   // objective at x (Optimal)
  VecQ ray;    // improving direction certificate (Unbounded)
};

LpResult solve_lp(const LpProblem& p);

}  // namespace ltype
