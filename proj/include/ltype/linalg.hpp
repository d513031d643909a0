#pragma once

#include "ltype/matrix.hpp"

#include <optional>

namespace ltype {

std::size_t rank_of(const MatI& m);
std::size_t rank_of(const MatQ& m);
std::size_t rank_of_rows(const std::vector<VecI>& rows, std::size_t ncols);

Int det(const MatI& m);
Rat det(const MatQ& m);

// reduced row echelon form in place; returns pivot column indices
std::vector<std::size_t> rref(MatQ& m);

// basis of the right null space, one vector per non-pivot column (canonical)
std::vector<VecQ> nullspace(const MatQ& m);

// one solution of A x = b, if any
std::optional<VecQ> solve(const MatQ& a, const VecQ& b);

MatQ inverse(const MatQ& m);  // throws on singular

// column-style Hermite elimination: returns unimodular V with M*V = [E | 0],
// E of full column rank (rank(M) columns), zero columns last.
MatI column_echelon_transform(const MatI& m);

// maintains the row span of an incrementally fed set of rational rows
struct RankTracker {
  std::size_t ncols = 0;
  std::vector<VecQ> basis;          // rows in echelon form (pivot-normalized)
  std::vector<std::size_t> pivots;  // pivot column per basis row

  explicit RankTracker(std::size_t n) : ncols(n) {}
  // returns true if the row enlarged the span
  bool add_row(VecQ row);
  bool in_span(VecQ row) const;
  std::size_t rank() const { return basis.size(); }
};

}  // namespace ltype
