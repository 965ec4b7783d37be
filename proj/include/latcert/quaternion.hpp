#pragma once

#include <vector>

#include "latcert/padic.hpp"

namespace latcert {

/// B = (a, b): i^2 = a, j^2 = b, ij = -ji, over Q.
struct QuaternionAlgebra {
  Rat a, b;
};

// (a, b)_p for a finite prime p: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
// solution over Q_p. Odd p by the valuation/Legendre formula; p = 2 by the
// primitive brute-force oracle mod 64.
int hilbert_symbol(const Rat& a, const Rat& b, const Int& p);

// the real place: -1 iff a < 0 and b < 0
int hilbert_symbol_inf(const Rat& a, const Rat& b);

struct RamificationResult {
  bool division;            // true iff the ramified set is nonempty
  std::vector<Int> finite;  // ramified finite places
  bool infinite;            // ramified at the real place
};

RamificationResult is_division(const QuaternionAlgebra& q);

/// Images of i and j as 2x2 matrices mod ell^N satisfying the defining
/// relations; exists exactly when B splits at ell.
struct LocalSplitting {
  PadicContext context;
  IntMatrix i, j;
};

// requires hilbert_symbol(a, b, ell) = +1 and ell odd
LocalSplitting split_quaternion_locally(const QuaternionAlgebra& q, const PadicContext& ctx);

// square root of a unit square mod ell^N, ell odd (Hensel-lifted)
Int sqrt_mod(const PadicContext& ctx, const Int& c);

}  // namespace latcert
