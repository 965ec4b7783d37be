#pragma once

#include <vector>

#include "latcert/hensel.hpp"
#include "latcert/padic.hpp"
#include "latcert/poly.hpp"

namespace latcert {

/// Monogenic order Z[x]/(f) inside the etale algebra Q[x]/(f), f monic
/// squarefree (possibly reducible: product of number fields).
struct Order {
  IntPoly f;
  int degree;
  Int disc;

  bool is_good_prime(const Int& ell) const { return disc % ell != 0; }
};

struct LocalOrderFactor {
  PadicContext context;
  ModPoly f_lambda;    // monic factor of f mod ell^N
  int residue_degree;  // deg f_lambda
};

// f monic squarefree required; rejects non-squarefree input.
Order make_order(const IntPoly& f);

// Local factors of O at ell: one per prime lambda | ell. Needs ell good, or
// a seed factorization into coprime pieces mod ell.
std::vector<LocalOrderFactor> splitting(const Order& o, const PadicContext& ctx,
                                        const std::vector<IntPoly>* seed = nullptr);

// h = n / deg f; throws if deg f does not divide n.
int rank_h(const Order& o, int n);

// default working precision at ell: max(24, 2 v_ell(disc f) + 10)
int default_precision(const Order& o, const Int& ell);

}  // namespace latcert
