#pragma once

#include <map>
#include <optional>
#include <string>

#include "latcert/quaternion.hpp"
#include "latcert/rat_lattice.hpp"

namespace latcert {

/// The commutative ring R = Q + B*eps with eps^2 = 0, acting on the rank-4
/// model Q_ell^2 (+) Q_ell^2 at each ell of S through a splitting of B:
/// (s, beta) acts as [[s I, M_ell(beta)], [0, s I]]. The splittings at
/// different primes are incompatible when B is division, so r.v is a single
/// rational vector only in degenerate cases and no rational lattice is
/// R-stable.
struct RStabilityModel {
  QuaternionAlgebra B;
  std::vector<Int> S;
  int precision;
  std::map<Int, LocalSplitting> splittings;
};

// default model: B = (-1,-1) (ramified at 2 and infinity), S = {3, 5}
RStabilityModel make_r_model(const QuaternionAlgebra& b = {Rat(-1), Rat(-1)},
                             const std::vector<Int>& s = {Int(3), Int(5)}, int precision = 24);

struct StabilityWitness {
  std::string generator;  // which (0, beta) fails, beta in {1, i, j, ij}
  RatMatrix vector;       // a basis vector v of the candidate
  // r.v when it exists as one rational vector of bounded height (and then
  // provably lies outside the candidate); 0x0 when no rational vector
  // matches the local images at all
  RatMatrix image;
  std::string reason;
};

// the 4x4 matrix of (0, beta) at one prime
IntMatrix r_action(const LocalSplitting& sp, const IntMatrix& beta);

// p/q = y mod m with |p|, |q| <= sqrt(m/2); nullopt when no such fraction
// exists (then no bounded-height rational reduces to y)
std::optional<Rat> rational_reconstruct(const Int& y, const Int& m);

// Checks the candidate (columns of a full-rank 4x4 rational matrix, integral
// at the primes of S) against the generators (0,1), (0,i), (0,j), (0,ij):
// the image of each basis vector must be a single bounded-height rational
// vector congruent to every local image, and must lie in the candidate.
// Returns the first witness of failure; nullopt means stable.
std::optional<StabilityWitness> check_R_stability(const RStabilityModel& model,
                                                  const RatMatrix& candidate);

}  // namespace latcert
