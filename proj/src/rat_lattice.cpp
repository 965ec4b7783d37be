#include "latcert/rat_lattice.hpp"

#include <stdexcept>

namespace latcert {

namespace {

// canonical basis of the column span: clear denominators, HNF, rescale back
RatMatrix canonical_basis(const RatMatrix& gens) {
  int n = gens.rows();
  if (gens.cols() < n) throw std::invalid_argument("RatLattice: too few generators");
  auto [d, gi] = clear_denominators(gens);
  auto r = hnf(gi);
  if (r.rank != n) throw std::invalid_argument("RatLattice: generators are not full rank");
  RatMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      b(i, j) = Rat(r.H(i, r.H.cols() - n + j), d);
      b(i, j).canonicalize();
    }
  return b;
}

}  // namespace

RatLattice::RatLattice(const RatMatrix& generators) : basis_(canonical_basis(generators)) {}
RatLattice::RatLattice(const IntMatrix& generators) : basis_(canonical_basis(to_rat(generators))) {}

RatLattice RatLattice::standard(int n) { return RatLattice(IntMatrix::identity(n)); }

bool RatLattice::contains(const RatMatrix& v) const {
  if (v.rows() != dim() || v.cols() != 1)
    throw std::invalid_argument("RatLattice::contains: expected an n x 1 column");
  RatMatrix x = inverse(basis_) * v;
  for (int i = 0; i < dim(); ++i)
    if (x(i, 0).get_den() != 1) return false;
  return true;
}

RatLattice RatLattice::scaled(const Rat& c) const {
  if (c == 0) throw std::invalid_argument("RatLattice::scaled: zero scale");
  return RatLattice(basis_ * c);
}

RatLattice RatLattice::dual() const { return RatLattice(inverse(basis_).transpose()); }

std::vector<Rat> RatLattice::divisors_in(const RatLattice& other) const {
  RatMatrix x = inverse(other.basis_) * basis_;
  auto [d, xi] = clear_denominators(x);
  auto r = snf(xi);
  std::vector<Rat> out(dim());
  for (int i = 0; i < dim(); ++i) {
    out[i] = Rat(r.D(i, i), d);
    out[i].canonicalize();
  }
  return out;
}

RatLattice sum(const RatLattice& a, const RatLattice& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sum: dimension mismatch");
  int n = a.dim();
  RatMatrix gens(n, 2 * n);
  gens.set_block(0, 0, a.basis());
  gens.set_block(0, n, b.basis());
  return RatLattice(gens);
}

RatLattice intersect(const RatLattice& a, const RatLattice& b) {
  return sum(a.dual(), b.dual()).dual();
}

}  // namespace latcert
