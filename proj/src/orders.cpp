#include "latcert/orders.hpp"

#include <stdexcept>

namespace latcert {

Order make_order(const IntPoly& f) {
  if (!f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("make_order: monic polynomial of degree >= 1 required");
  Int disc = poly_disc(f);
  if (disc == 0)
    throw std::invalid_argument(
        "make_order: f is not squarefree; a non-semisimple operator must be supplied as "
        "block data, not as a minimal polynomial");
  return Order{f, f.degree(), disc};
}

std::vector<LocalOrderFactor> splitting(const Order& o, const PadicContext& ctx,
                                        const std::vector<IntPoly>* seed) {
  if (!o.is_good_prime(ctx.ell) && !seed) {
    Int d = o.disc;
    int v = 0;
    while (mpz_divisible_p(d.get_mpz_t(), ctx.ell.get_mpz_t())) {
      mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), ctx.ell.get_mpz_t());
      ++v;
    }
    throw BadPrimeError("splitting: ell divides disc O and no seed factorization given", v);
  }
  auto factors = hensel_factor(o.f, ctx, seed);
  std::vector<LocalOrderFactor> out;
  int total = 0;
  for (auto& g : factors) {
    total += g.degree();
    out.push_back(LocalOrderFactor{ctx, std::move(g), 0});
    out.back().residue_degree = out.back().f_lambda.degree();
  }
  if (total != o.degree) throw std::logic_error("splitting: residue degrees do not sum to deg f");
  return out;
}

int rank_h(const Order& o, int n) {
  if (n <= 0 || n % o.degree != 0)
    throw std::invalid_argument("rank_h: deg f must divide the lattice rank");
  return n / o.degree;
}

int default_precision(const Order& o, const Int& ell) {
  Int d = o.disc;
  int v = 0;
  while (mpz_divisible_p(d.get_mpz_t(), ell.get_mpz_t())) {
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), ell.get_mpz_t());
    ++v;
  }
  return std::max(24, 2 * v + 10);
}

}  // namespace latcert
