#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plumbtop {

using Int = long;  // 64-bit here; GMP types interoperate with long directly
using Rat = mpq_class;
using Zint = mpz_class;

// Coordinates of a lattice element in the simple-root basis.
using IntVec = std::vector<Int>;

struct IntVecHash {
  std::size_t operator()(const IntVec& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (Int x : v) {
      std::size_t k = static_cast<std::size_t>(x) * 0xff51afd7ed558ccdULL;
      k ^= k >> 33;
      h = (h * 0x100000001b3ULL) ^ k;
    }
    return h;
  }
};

inline IntVec operator+(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec operator-(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IntVec operator*(Int c, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const IntVec& a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical text form: "n" for integers, "p/q" otherwise, q > 0.
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational");
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw parse_error("malformed rational: " + s);
  }
}

inline Rat rat_floor_div_check(const Rat& r) { return r; }

// floor / ceil of an exact rational, as mpz.
inline Zint rat_floor(const Rat& r) {
  Zint q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Zint rat_ceil(const Rat& r) {
  Zint q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Int to_int_checked(const Zint& z) {
  if (!z.fits_slong_p()) throw domain_error("integer overflow in lattice coordinate");
  return static_cast<Int>(z.get_si());
}

}  // namespace plumbtop
