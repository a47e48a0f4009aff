#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace fatflow {

// Exact rational scalar used throughout the weight-vector calculus.
using Rat = mpq_class;

inline Rat rat(long p, long q = 1) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p/q", and plain integers; canonicalizes; rejects q == 0.
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("not a rational: '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double rat_d(const Rat& r) { return r.get_d(); }

// Least common multiple of all denominators; scaling by this makes every
// entry an integer.
inline mpz_class common_denominator(const std::vector<Rat>& v) {
  mpz_class l = 1;
  for (const Rat& r : v) {
    mpz_class d = r.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

}  // namespace fatflow
