#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltype {

using Int = mpz_class;
using Rat = mpq_class;
using VecI = std::vector<Int>;
using VecQ = std::vector<Rat>;

inline Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// floor(sqrt(n)) for n >= 0
inline Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt_floor: negative argument");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// largest integer k with k <= x and k*k <= x ... not needed; instead:
// floor(sqrt(x)) for rational x >= 0.
inline Int isqrt_floor_rat(const Rat& x) {
  if (x < 0) throw std::invalid_argument("isqrt_floor_rat: negative argument");
  // floor(sqrt(p/q)) = floor(sqrt(p*q)/q)
  Int pq = x.get_num() * x.get_den();
  Int s = isqrt_floor(pq);
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), s.get_mpz_t(), x.get_den_mpz_t());
  // adjust exactly (s/q may round unexpectedly near perfect squares)
  while ((r + 1) * (r + 1) <= x) r += 1;
  while (r * r > x) r -= 1;
  return r;
}

std::string int_str(const Int& v);
std::string rat_str(const Rat& v);
Rat rat_of_string(const std::string& s);
Int int_of_string(const std::string& s);

// content gcd; 0 for the zero vector
Int vec_content(const VecI& v);
// divide by content (no-op on the zero vector)
void make_primitive(VecI& v);
// primitive and first nonzero entry positive
void make_primitive_signed(VecI& v);
// scale a rational vector by the lcm of denominators; returns the integer vector
VecI scale_to_integer(const VecQ& v);
// integer vector spanning the same ray, primitive, preserving direction
VecI primitive_direction(const VecQ& v);

int lex_compare(const VecI& a, const VecI& b);
int lex_compare_rat(const VecQ& a, const VecQ& b);

bool is_zero(const VecI& v);
bool is_zero_rat(const VecQ& v);

VecQ to_rat_vec(const VecI& v);

Rat dot(const VecQ& a, const VecQ& b);
Int dot_int(const VecI& a, const VecI& b);
Rat dot_mixed(const VecI& a, const VecQ& b);

std::size_t hash_int(const Int& v);
std::size_t hash_vec(const VecI& v);

struct VecIHash {
  std::size_t operator()(const VecI& v) const { return hash_vec(v); }
};

struct VecILess {
  bool operator()(const VecI& a, const VecI& b) const { return lex_compare(a, b) < 0; }
};

}  // namespace ltype
