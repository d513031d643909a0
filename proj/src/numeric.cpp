#include "ltype/numeric.hpp"

#include <algorithm>

namespace ltype {

std::string int_str(const Int& v) { return v.get_str(); }

std::string rat_str(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rat rat_of_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r(s);  // accepts "p" and "p/q", throws std::invalid_argument otherwise
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

Int int_of_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  return Int(s);
}

Int vec_content(const VecI& v) {
  Int g = 0;
  for (const Int& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void make_primitive(VecI& v) {
  Int g = vec_content(v);
  if (g <= 1) return;
  for (Int& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

void make_primitive_signed(VecI& v) {
  make_primitive(v);
  for (const Int& x : v) {
    if (x != 0) {
      if (x < 0)
        for (Int& y : v) y = -y;
      return;
    }
  }
}

VecI scale_to_integer(const VecQ& v) {
  Int l = 1;
  for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  VecI out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(l);
    out[i] = s.get_num();  // canonical, denominator 1
  }
  return out;
}

VecI primitive_direction(const VecQ& v) {
  VecI out = scale_to_integer(v);
  make_primitive(out);
  return out;
}

int lex_compare(const VecI& a, const VecI& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

int lex_compare_rat(const VecQ& a, const VecQ& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

bool is_zero(const VecI& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero_rat(const VecQ& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

VecQ to_rat_vec(const VecI& v) {
  VecQ out;
  out.reserve(v.size());
  for (const Int& x : v) out.emplace_back(x);
  return out;
}

Rat dot(const VecQ& a, const VecQ& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int dot_int(const VecI& a, const VecI& b) {
  Int s = 0, t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_mul(t.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
    s += t;
  }
  return s;
}

Rat dot_mixed(const VecI& a, const VecQ& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

std::size_t hash_int(const Int& v) {
  const mpz_srcptr p = v.get_mpz_t();
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  int sz = p->_mp_size;
  mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(sz)));
  int n = sz < 0 ? -sz : sz;
  for (int i = 0; i < n; ++i) mix(static_cast<std::uint64_t>(mpz_getlimbn(p, i)));
  return h;
}

std::size_t hash_vec(const VecI& v) {
  std::size_t h = 14695981039346656037ull;
  for (const Int& x : v) {
    h ^= hash_int(x);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ltype
