#pragma once

#include <vector>

#include "latcert/matrix.hpp"

namespace latcert {

/// Full-rank lattice in Q^n, held by an HNF-canonical column basis so that
/// equality is plain matrix equality.
class RatLattice {
 public:
  // columns generate the lattice; must have full row rank
  explicit RatLattice(const RatMatrix& generators);
  explicit RatLattice(const IntMatrix& generators);
  static RatLattice standard(int n);

  int dim() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }

  bool operator==(const RatLattice& o) const { return basis_ == o.basis_; }

  bool contains(const RatMatrix& v) const;  // v: n x 1 column
  RatLattice scaled(const Rat& c) const;
  RatLattice dual() const;  // {y : <y, L> in Z}

  // elementary divisors d_1 | ... | d_n of this lattice relative to other
  // (positive rationals; all 1 iff the lattices are equal)
  std::vector<Rat> divisors_in(const RatLattice& other) const;

 private:
  RatMatrix basis_;
};

RatLattice sum(const RatLattice& a, const RatLattice& b);
RatLattice intersect(const RatLattice& a, const RatLattice& b);

}  // namespace latcert
