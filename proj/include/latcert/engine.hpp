#pragma once

#include <map>
#include <string>
#include <vector>

#include "latcert/local_modules.hpp"
#include "latcert/rat_lattice.hpp"
#include "latcert/similarity.hpp"

namespace latcert {

/// One factor M_r(E_i) of the endomorphism data: f_i the minimal polynomial
/// of E_i's generator, h_i the module rank over the order of f_i, r_i the
/// matrix-algebra multiplicity. Contributes rank r*h*deg f.
struct BlockSpec {
  int r;
  IntPoly f;
  int h;
};

struct ProblemInstance {
  int g;   // n = 2g
  Int p;   // excluded residue characteristic, 0 for none
  std::vector<BlockSpec> blocks;
  std::vector<Int> S;  // primes with prescribed local data
  std::map<Int, LocalModule> locals;
  int precision;

  int n() const { return 2 * g; }
  IntPoly min_poly() const;   // product of the f_i
  IntPoly char_poly() const;  // product of f_i^(r_i h_i)
};

/// Lattice M in Q^n (columns of basis) carried together with the matrix of
/// the ambient operator on that basis; M is u-stable over Z exactly when
/// operator_on_basis is integral.
struct GlobalLattice {
  RatMatrix basis;
  RatMatrix operator_on_basis;
};

struct Certificate {
  IntMatrix A;
  std::map<Int, PadicMatrix> conjugators;  // P_ell A P_ell^-1 = U_ell mod ell^N
  int precision;
  RatMatrix basis;  // the global lattice realizing A
};

struct VerifyResult {
  bool ok;
  std::string reason;  // empty on pass
};

/// Raised when a bad prime defeats the bounded conjugator search even after
/// the retry; carries diagnostics, never a wrong answer.
struct EngineUnknown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SubInstance {
  IntPoly f;
  int h;
  int repeat;  // solved once, direct-summed repeat times
};

// Splits the block data into field-case sub-instances; validates rank
// bookkeeping and pairwise coprimality of the f_i.
std::vector<SubInstance> reduce_blocks(const ProblemInstance& inst);

// Reference operator: direct sum over blocks of r_i h_i companion(f_i) copies.
IntMatrix model_operator(const ProblemInstance& inst);

GlobalLattice make_global(const RatMatrix& basis, const IntMatrix& ambient_op);

// Local surgery: returns M with M (x) Z_ell = target_ell for each given ell
// (targets are bases written in m0-coordinates, ell-power denominators only,
// valuations bounded by precision/2) and M (x) Z_q = m0 (x) Z_q elsewhere.
// Each target must be u-stable at its prime. All agreements are re-verified.
GlobalLattice glue_lattice(const GlobalLattice& m0, const IntMatrix& ambient_op,
                           const std::map<Int, RatMatrix>& targets, int precision);

// Z[u]-saturation: replace M by sum of A^j M, 0 <= j < degree; idempotent,
// and forces integrality of the operator.
GlobalLattice operator_span(const GlobalLattice& m, const IntMatrix& ambient_op, int degree);

Certificate solve(const ProblemInstance& inst);

VerifyResult verify_certificate(const ProblemInstance& inst, const Certificate& cert);

// reduction of a matrix with ell-free denominators
PadicMatrix reduce_rat_mod(const PadicContext& ctx, const RatMatrix& m);

}  // namespace latcert
