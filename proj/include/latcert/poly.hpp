#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace latcert {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense integral polynomial, coefficients stored low-to-high.
/// The zero polynomial has an empty coefficient vector.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static IntPoly constant(Int v) { return IntPoly({std::move(v)}); }
  static IntPoly x() { return IntPoly({Int(0), Int(1)}); }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  const Int& coeff(int i) const {
    static const Int zero(0);
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero;
  }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const { return c_.back(); }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& k) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly derivative() const;
  Int eval(const Int& x) const;

  std::string str() const;  // human-readable, highest degree first

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

/// Rational polynomial, used for exact Euclidean steps over Q.
using RatPoly = std::vector<Rat>;  // low-to-high, no normalization guarantees

RatPoly to_rat(const IntPoly& f);
int rp_degree(const RatPoly& f);
void rp_normalize(RatPoly& f);
// remainder of f by g over Q, g != 0
RatPoly rp_rem(RatPoly f, const RatPoly& g);

// Res(f, g) over Q, computed by the Euclidean remainder sequence with the
// usual leading-coefficient corrections; exact.
Rat resultant(const IntPoly& f, const IntPoly& g);

// disc(f) = (-1)^{d(d-1)/2} Res(f, f') for monic f; throws on non-monic input.
Int poly_disc(const IntPoly& f);

// gcd(f, f') = 1 over Q
bool is_squarefree(const IntPoly& f);

}  // namespace latcert
