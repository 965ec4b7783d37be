#pragma once

#include <vector>

#include "latcert/orders.hpp"
#include "latcert/padic.hpp"

namespace latcert {

/// Rank-n module over Z/ell^N with an operator U, the finite-precision
/// surrogate of an ell-adic lattice with endomorphism.
struct LocalModule {
  PadicContext context;
  int n;
  PadicMatrix U;
  bool constructed;  // false: user input, true: built internally
};

// Checks f(U) = 0 mod ell^N (min poly of U divides f at working precision).
LocalModule make_local_module(const PadicContext& ctx, const IntMatrix& U, const IntPoly& f,
                              bool constructed = false);

/// Image of one idempotent e_lambda(U): the lambda-isotypic direct summand.
struct LambdaComponent {
  PadicContext context;
  LocalOrderFactor factor;
  PadicMatrix U;    // the parent operator
  IntMatrix basis;  // n x local_rank: first columns of e_lambda(U) independent mod ell
  int local_rank;
};

// Splits T into lambda-components via the idempotents of O at ell. Requires a
// good prime and f(U) = 0 mod ell^N; component ranks sum to n.
std::vector<LambdaComponent> decompose(const LocalModule& t, const Order& o);

// h = local_rank / deg f_lambda generators v_i such that the U^j v_i,
// 0 <= j < deg f_lambda, form a basis of the component. Deterministic:
// greedy Nakayama lift scanning the canonical basis columns in order.
IntMatrix free_basis(const LambdaComponent& comp);

// Columns U^j v_i (j fastest) for the generators gens; spans the component.
IntMatrix assembled_basis(const LambdaComponent& comp, const IntMatrix& gens);

// Concatenated assembled bases of all components: an n x n matrix B,
// unimodular mod ell^N, with B^-1 U B the companion model below.
IntMatrix full_basis(const std::vector<LambdaComponent>& comps);

// Block-diagonal model: for each component, h copies of companion(f_lambda).
IntMatrix companion_model(const std::vector<LambdaComponent>& comps);

}  // namespace latcert
