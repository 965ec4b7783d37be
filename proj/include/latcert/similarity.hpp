#pragma once

#include <optional>
#include <string>

#include "latcert/local_modules.hpp"
#include "latcert/orders.hpp"

namespace latcert {

enum class Similarity { Verified, Refuted, Unknown };

struct SimilarityResult {
  Similarity status;
  std::optional<PadicMatrix> conjugator;  // Verified: P A P^-1 = U mod ell^N
  std::string reason;                     // Refuted / Unknown diagnostics
};

// charpoly(A) != charpoly(U) mod ell^N is a precondition violation, distinct
// from a Refuted verdict.
struct CharpolyMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Decides GL_n(Z/ell^N)-similarity of the integer model a and the local
// operator u, both annihilated by the squarefree f of o (a exactly, u at
// least when similar). Good primes always decide (free-module argument);
// bad primes compare conjugation invariants, then run a bounded intertwiner
// search, and may return Unknown.
SimilarityResult similarity(const IntMatrix& a, const PadicMatrix& u, const Order& o);

// Valuations (capped at N, ascending) of the elementary divisors of m acting
// on (Z/ell^N)^n; a conjugation invariant.
std::vector<int> divisor_valuations(const PadicContext& ctx, const IntMatrix& m);

// Kernel generators of P a = u P mod ell^N, combined at random (deterministic
// seed) until one is unimodular; nullopt after the attempt budget.
std::optional<PadicMatrix> intertwiner_search(const PadicContext& ctx, const IntMatrix& a,
                                              const IntMatrix& u, int attempts = 400);

}  // namespace latcert
