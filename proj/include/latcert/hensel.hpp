#pragma once

#include <optional>
#include <vector>

#include "latcert/padic.hpp"
#include "latcert/poly.hpp"

namespace latcert {

/// Polynomials with coefficients mod m (a prime or a prime power),
/// low-to-high, trailing zeros stripped.
struct ModPoly {
  std::vector<Int> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Int& coeff(int i) const {
    static const Int zero(0);
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : zero;
  }
};

ModPoly mp_reduce(const IntPoly& f, const Int& m);
ModPoly mp_reduce(const ModPoly& f, const Int& m);
IntPoly mp_lift(const ModPoly& f);  // coefficients as-is (in [0, m))
ModPoly mp_add(const ModPoly& a, const ModPoly& b, const Int& m);
ModPoly mp_sub(const ModPoly& a, const ModPoly& b, const Int& m);
ModPoly mp_mul(const ModPoly& a, const ModPoly& b, const Int& m);
ModPoly mp_scale(const ModPoly& a, const Int& k, const Int& m);
// division by a polynomial with unit leading coefficient
std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b, const Int& m);
ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, const Int& m);
bool mp_equal(const ModPoly& a, const ModPoly& b);

// over the field F_p only:
ModPoly fp_gcd(ModPoly a, ModPoly b, const Int& p);
ModPoly fp_monic(const ModPoly& a, const Int& p);
// g, s, t with g = gcd, s*a + t*b = g
void fp_xgcd(const ModPoly& a, const ModPoly& b, const Int& p, ModPoly& g, ModPoly& s, ModPoly& t);
ModPoly fp_powmod(const ModPoly& a, const Int& e, const ModPoly& f, const Int& p);
ModPoly fp_derivative(const ModPoly& a, const Int& p);
bool fp_squarefree(const ModPoly& f, const Int& p);

// Distinct irreducible monic factors of a squarefree monic f over F_p,
// sorted by (degree, coefficient list). Deterministically seeded
// Cantor-Zassenhaus.
std::vector<ModPoly> fp_factor_squarefree(const ModPoly& f, const Int& p);

struct BadPrimeError : std::runtime_error {
  int disc_valuation;
  explicit BadPrimeError(const std::string& what, int v = -1)
      : std::runtime_error(what), disc_valuation(v) {}
};

// Hensel lifting of the factorization of monic f to precision ell^N.
// Without a seed, f mod ell must be squarefree (else BadPrimeError); with a
// seed, the seed factors must be pairwise coprime mod ell and their product
// must be f mod ell. Returns monic pairwise-coprime lifts whose product is
// f mod ell^N, sorted canonically.
std::vector<ModPoly> hensel_factor(const IntPoly& f, const PadicContext& ctx,
                                   const std::vector<IntPoly>* seed = nullptr);

// Orthogonal idempotents of (Z/ell^N)[x]/(f) attached to pairwise-coprime
// monic factors of f: e_i = 1 in the i-th component, 0 elsewhere.
std::vector<ModPoly> idempotents(const IntPoly& f, const std::vector<ModPoly>& factors,
                                 const PadicContext& ctx);

}  // namespace latcert
