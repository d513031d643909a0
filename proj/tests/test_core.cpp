#include <doctest.h>

#include "helpers.hpp"
#include "ltype/isometry.hpp"
#include "ltype/lattice.hpp"

#include <set>

using namespace ltype;
using namespace ltype::testing;

namespace {

// cofactor expansion, independent of the elimination code under test
Rat det_oracle(const MatQ& m) {
  std::size_t n = m.nr;
  if (n == 1) return m(0, 0);
  Rat s = 0;
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    MatQ minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    s += sign * m(0, j) * det_oracle(minor);
    sign = -sign;
  }
  return s;
}

// Sylvester-style check over every principal submatrix
bool psd_oracle(const MatQ& m) {
  std::size_t n = m.nr;
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    MatQ sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = m(idx[r], idx[c]);
    if (det_oracle(sub) < 0) return false;
  }
  return true;
}

bool pd_oracle(const MatQ& m) {
  std::size_t n = m.nr;
  for (std::size_t k = 1; k <= n; ++k) {
    MatQ sub(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub(r, c) = m(r, c);
    if (det_oracle(sub) <= 0) return false;
  }
  return true;
}

MatQ random_rat_mat(std::size_t r, std::size_t c, Rng& rng) {
  MatQ m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Rat(rand_int(rng, -6, 6), rand_int(rng, 1, 4));
      m(i, j).canonicalize();
    }
  return m;
}

}  // namespace

TEST_CASE("rational string round trips") {
  CHECK(rat_str(Rat(-3, 7)) == "-3/7");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK(rat_of_string("22/7") == Rat(22, 7));
  CHECK(int_of_string("-123456789012345678901234567890") ==
        Int("-123456789012345678901234567890"));
  CHECK_THROWS(rat_of_string("1/0"));
}

TEST_CASE("primitive directions") {
  VecI v{4, -6, 2};
  make_primitive(v);
  CHECK(v == VecI{2, -3, 1});
  VecI w{-4, 6, -2};
  make_primitive_signed(w);
  CHECK(w == VecI{2, -3, 1});
  CHECK(primitive_direction({Rat(-1, 2), Rat(3, 4)}) == VecI{-2, 3});
  CHECK(scale_to_integer({Rat(1, 2), Rat(1, 3)}) == VecI{3, 2});
}

TEST_CASE("determinant against cofactor expansion") {
  Rng rng(101);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 1 + it % 5;
    MatQ m = random_rat_mat(n, n, rng);
    CHECK(det(m) == det_oracle(m));
  }
  MatI mi{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(det(mi) == 4);
}

TEST_CASE("rref, rank and nullspace") {
  Rng rng(102);
  for (int it = 0; it < 40; ++it) {
    std::size_t r = 1 + it % 4, c = 1 + (it * 7) % 5;
    MatQ m = random_rat_mat(r, c, rng);
    MatQ copy = m;
    std::vector<std::size_t> piv = rref(copy);
    CHECK(piv.size() == rank_of(m));
    std::vector<VecQ> kern = nullspace(m);
    CHECK(kern.size() == c - piv.size());
    for (const VecQ& v : kern) {
      for (std::size_t i = 0; i < r; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < c; ++j) s += m(i, j) * v[j];
        CHECK(s == 0);
      }
    }
  }
}

TEST_CASE("solve verifies by substitution") {
  Rng rng(103);
  for (int it = 0; it < 40; ++it) {
    std::size_t r = 1 + it % 4, c = 1 + (it * 5) % 4;
    MatQ m = random_rat_mat(r, c, rng);
    VecQ x0(c);
    for (auto& v : x0) v = Rat(rand_int(rng, -3, 3));
    VecQ b(r);
    for (std::size_t i = 0; i < r; ++i) {
      Rat s = 0;
      for (std::size_t j = 0; j < c; ++j) s += m(i, j) * x0[j];
      b[i] = s;
    }
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    for (std::size_t i = 0; i < r; ++i) {
      Rat s = 0;
      for (std::size_t j = 0; j < c; ++j) s += m(i, j) * (*x)[j];
      CHECK(s == b[i]);
    }
  }
  // inconsistent system
  MatQ m{{1, 1}, {1, 1}};
  CHECK(!solve(m, {Rat(0), Rat(1)}).has_value());
}

TEST_CASE("inverse") {
  Rng rng(104);
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 1 + it % 4;
    MatQ m = random_rat_mat(n, n, rng);
    if (det(m) == 0) continue;
    CHECK(m * inverse(m) == MatQ::identity(n));
  }
  CHECK_THROWS(inverse(MatQ{{1, 1}, {1, 1}}));
}

TEST_CASE("column echelon transform is unimodular") {
  Rng rng(105);
  for (int it = 0; it < 30; ++it) {
    std::size_t r = 1 + it % 4, c = 1 + (it * 3) % 5;
    MatI m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_int(rng, -4, 4);
    MatI v = column_echelon_transform(m);
    CHECK(v.nr == c);
    CHECK(v.nc == c);
    Int dv = det(v);
    CHECK((dv == 1 || dv == -1));
    MatI mv = m * v;
    std::size_t rk = rank_of(m);
    for (std::size_t j = rk; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i) CHECK(mv(i, j) == 0);
    CHECK(rank_of(mv) == rk);
  }
}

TEST_CASE("rank tracker matches batch rank") {
  Rng rng(106);
  for (int it = 0; it < 20; ++it) {
    std::size_t c = 2 + it % 4;
    MatQ m = random_rat_mat(5, c, rng);
    RankTracker tr(c);
    for (std::size_t i = 0; i < m.nr; ++i) tr.add_row(m.row(i));
    CHECK(tr.rank() == rank_of(m));
    for (std::size_t i = 0; i < m.nr; ++i) CHECK(tr.in_span(m.row(i)));
  }
}

TEST_CASE("form coordinates round trip") {
  Rng rng(107);
  for (std::size_t d = 1; d <= 5; ++d) {
    QuadForm q = random_pd_form(d, rng);
    CHECK(vec_to_form(d, form_to_vec(q)) == q);
    CHECK(form_to_vec(q).size() == form_space_dim(d));
  }
}

TEST_CASE("rank one functionals evaluate the form") {
  Rng rng(108);
  for (int it = 0; it < 30; ++it) {
    std::size_t d = 2 + it % 4;
    QuadForm q = random_pd_form(d, rng);
    VecI v(d);
    for (auto& x : v) x = rand_int(rng, -3, 3);
    CHECK(rank_one_functional(v).pair(q) == q.eval(v));
  }
}

TEST_CASE("weighted coefficients agree with the pairing") {
  Rng rng(109);
  for (int it = 0; it < 20; ++it) {
    std::size_t d = 2 + it % 3;
    QuadForm q = random_pd_form(d, rng);
    VecI c(form_space_dim(d));
    for (auto& x : c) x = rand_int(rng, -3, 3);
    FormFunctional f(d, c);
    CHECK(f.pair(q) == dot(functional_weighted_coeffs_rat(f), form_to_vec(q)));
  }
}

TEST_CASE("gram action matrix tracks conjugation") {
  Rng rng(110);
  for (int it = 0; it < 20; ++it) {
    std::size_t d = 2 + it % 3;
    QuadForm q = random_pd_form(d, rng);
    MatI a = random_unimodular(d, rng);
    CHECK(gram_action_matrix(a) * form_to_vec(q) == form_to_vec(conjugate(q, a)));
  }
}

TEST_CASE("definiteness against the principal minor oracle") {
  Rng rng(111);
  for (int it = 0; it < 25; ++it) {
    std::size_t d = 2 + it % 3;
    QuadForm q = random_pd_form(d, rng);
    CHECK(is_pd(q));
    CHECK(is_psd(q));
    CHECK(pd_oracle(q.m));
    QuadForm s = random_psd_form(d, 1 + it % (d - 1), rng);
    CHECK(is_psd(s));
    CHECK(!is_pd(s));
    CHECK(psd_oracle(s.m));
  }
  QuadForm indef(MatQ{{1, 0}, {0, -1}});
  CHECK(!is_pd(indef));
  CHECK(!is_psd(indef));
  CHECK(!psd_oracle(indef.m));
  CHECK(is_psd(QuadForm::zero(3)));
  CHECK(!is_pd(QuadForm::zero(3)));
}

TEST_CASE("kernel split produces a definite block") {
  Rng rng(112);
  for (int it = 0; it < 20; ++it) {
    std::size_t d = 2 + it % 4;
    std::size_t rk = 1 + it % d;
    QuadForm q = random_psd_form(d, rk, rng);
    KernelSplit ks = kernel_split(q);
    CHECK(is_unimodular(ks.u));
    CHECK(ks.block.dim == rank(q));
    CHECK(ks.block.dim == rk);
    CHECK(is_pd(ks.block));
    MatQ conj = conjugate(q.m, ks.u);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rat want = (i < rk && j < rk) ? ks.block.m(i, j) : Rat(0);
        CHECK(conj(i, j) == want);
      }
  }
}

TEST_CASE("ldl reconstructs the form") {
  Rng rng(113);
  for (int it = 0; it < 15; ++it) {
    std::size_t d = 2 + it % 4;
    QuadForm q = random_pd_form(d, rng);
    LdlPd f = ldl_decompose(q);
    for (int trial = 0; trial < 5; ++trial) {
      VecI x(d);
      for (auto& v : x) v = rand_int(rng, -3, 3);
      Rat sum = 0;
      for (std::size_t i = 0; i < d; ++i) {
        Rat lin = Rat(x[i]);
        for (std::size_t j = i + 1; j < d; ++j) lin += f.l(i, j) * x[j];
        sum += f.diag[i] * lin * lin;
      }
      CHECK(sum == q.eval(x));
    }
  }
  CHECK_THROWS(ldl_decompose(QuadForm(MatQ{{1, 0}, {0, -1}})));
}

TEST_CASE("short vector enumeration against a box oracle") {
  Rng rng(114);
  for (int it = 0; it < 12; ++it) {
    std::size_t d = 2 + it % 2;
    QuadForm q = random_pd_form(d, rng);
    Rat c = Rat(3 + it % 5);
    // any solution satisfies x_i^2 <= c * (Q^-1)_ii
    MatQ qinv = inverse(q.m);
    std::vector<long> bound(d);
    for (std::size_t i = 0; i < d; ++i)
      bound[i] = isqrt_floor_rat(c * qinv(i, i)).get_si() + 1;
    std::set<VecI, VecILess> expect;
    VecI x(d);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == d) {
        if (!is_zero(x) && q.eval(x) <= c) expect.insert(x);
        return;
      }
      for (long v = -bound[i]; v <= bound[i]; ++v) {
        x[i] = v;
        walk(i + 1);
      }
    };
    walk(0);
    std::vector<VecI> got = vectors_below(q, c);
    CHECK(got == std::vector<VecI>(expect.begin(), expect.end()));
  }
}

TEST_CASE("closest vectors against a box oracle") {
  Rng rng(115);
  for (int it = 0; it < 12; ++it) {
    std::size_t d = 2 + it % 2;
    QuadForm q = random_pd_form(d, rng);
    VecQ t(d);
    for (auto& v : t) {
      v = Rat(rand_int(rng, -6, 6), 1 + it % 3);
      v.canonicalize();
    }
    VecI seed(d);
    for (std::size_t i = 0; i < d; ++i) seed[i] = floor_rat(t[i]);
    VecQ diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = Rat(seed[i]) - t[i];
    Rat d0 = q.eval(diff);
    MatQ qinv = inverse(q.m);
    Rat best = d0;
    std::set<VecI, VecILess> argmin;
    VecI x(d);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == d) {
        VecQ dd(d);
        for (std::size_t k = 0; k < d; ++k) dd[k] = Rat(x[k]) - t[k];
        Rat val = q.eval(dd);
        if (val < best) {
          best = val;
          argmin.clear();
        }
        if (val == best) argmin.insert(x);
        return;
      }
      long b = isqrt_floor_rat(d0 * qinv(i, i)).get_si() + 1;
      for (Int v = floor_rat(t[i]) - b; v <= ceil_rat(t[i]) + b; ++v) {
        x[i] = v;
        walk(i + 1);
      }
    };
    walk(0);
    CHECK(closest_distance(q, t) == best);
    std::vector<VecI> got = closest_vectors(q, t);
    CHECK(got == std::vector<VecI>(argmin.begin(), argmin.end()));
  }
}

TEST_CASE("norm profiles of classical lattices") {
  QuadForm a2(MatQ{{2, 1}, {1, 2}});
  std::map<Rat, std::size_t> pa2{{Rat(2), 6}, {Rat(6), 6}, {Rat(8), 6}};
  CHECK(norm_profile(a2, 3) == pa2);
  QuadForm d4(MatQ{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  std::map<Rat, std::size_t> pd4{{Rat(2), 24}};
  CHECK(norm_profile(d4, 1) == pd4);
}

TEST_CASE("isometries found and verified") {
  Rng rng(116);
  for (int it = 0; it < 10; ++it) {
    std::size_t d = 2 + it % 3;
    QuadForm q = random_pd_form(d, rng);
    MatI u = random_unimodular(d, rng);
    QuadForm q2 = conjugate(q, u);
    auto a = find_isometry(q, q2);
    REQUIRE(a.has_value());
    CHECK(is_unimodular(*a));
    CHECK(conjugate(q, *a) == q2);
  }
  QuadForm a2(MatQ{{2, 1}, {1, 2}});
  QuadForm a2x2(MatQ{{4, 2}, {2, 4}});
  CHECK(!find_isometry(a2, a2x2).has_value());
  CHECK(!find_isometry(a2, QuadForm::identity(2)).has_value());
}

TEST_CASE("automorphism groups of classical lattices") {
  CHECK(automorphisms(QuadForm::identity(2)).order == 8);
  CHECK(automorphisms(QuadForm::identity(3)).order == 48);
  QuadForm a2(MatQ{{2, 1}, {1, 2}});
  GroupInfo ga2 = automorphisms(a2);
  CHECK(ga2.order == 12);
  CHECK(group_closure(ga2.generators, 2).size() == 12);
  for (const MatI& g : ga2.generators) CHECK(conjugate(a2, g) == a2);
  QuadForm d4(MatQ{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  CHECK(automorphisms(d4).order == 1152);
}

TEST_CASE("fixed subspace of the D4 group is the form itself") {
  QuadForm d4(MatQ{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  std::vector<QuadForm> fs = fixed_subspace(automorphisms(d4).generators, 4);
  REQUIRE(fs.size() == 1);
  // spans the line through d4
  Rat lambda = fs[0].m(0, 0) / d4.m(0, 0);
  CHECK(lambda != 0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(fs[0].m(i, j) == lambda * d4.m(i, j));
}
