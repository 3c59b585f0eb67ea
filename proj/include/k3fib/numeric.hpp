#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "k3fib/errors.hpp"

namespace k3fib {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals.
using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int vec_gcd(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero_vec(const Vec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

// floor(sqrt(n)), n >= 0
inline Int isqrt_floor(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int r = isqrt_floor(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// nearest integer to a/b, ties rounded toward -inf (deterministic)
inline Int round_div(const Int& a, const Int& b) {
  return floor_div(2 * a + b, 2 * b);
}

inline Int floor_rat(const Rat& q) {
  return floor_div(q.get_num(), q.get_den());
}

inline Int ceil_rat(const Rat& q) {
  return ceil_div(q.get_num(), q.get_den());
}

// reduce r into [0, m) for a positive integer modulus m
inline Rat mod_into(const Rat& r, const Int& m) {
  Rat q = r / Rat(m);
  Rat out = r - Rat(m) * Rat(floor_rat(q));
  out.canonicalize();
  return out;
}

inline Rat mod2(const Rat& r) { return mod_into(r, 2); }
inline Rat mod1(const Rat& r) { return mod_into(r, 1); }

inline bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// largest squarefree s with n = s * m^2, for n > 0 (trial division; inputs are small)
inline Int squarefree_part(Int n) {
  if (n <= 0) fail(errc::invalid_params, "squarefree_part needs a positive integer");
  Int s = 1;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) s *= p;
  }
  return s * n;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

inline std::string to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Int <-> int64 bridges for JSON I/O; catalog-scale data always fits.
inline std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) fail(errc::invalid_params, "integer too large for serialization: " + x.get_str());
  return static_cast<std::int64_t>(x.get_si());
}

}  // namespace k3fib
