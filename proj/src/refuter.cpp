#include "latcert/refuter.hpp"

#include <stdexcept>

namespace latcert {

RStabilityModel make_r_model(const QuaternionAlgebra& b, const std::vector<Int>& s,
                             int precision) {
  auto ram = is_division(b);
  if (!ram.division) throw std::invalid_argument("make_r_model: B must be a division algebra");
  RStabilityModel model{b, s, precision, {}};
  for (const Int& ell : s) {
    PadicContext ctx(ell, precision);
    model.splittings.emplace(ell, split_quaternion_locally(b, ctx));
  }
  return model;
}

IntMatrix r_action(const LocalSplitting& sp, const IntMatrix& beta) {
  IntMatrix r(4, 4);
  r.set_block(0, 2, beta);
  return r;
}

std::optional<Rat> rational_reconstruct(const Int& y, const Int& m) {
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
  Int r0 = m, r1 = ((y % m) + m) % m, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  if (gcd(t1, m) != 1) return std::nullopt;
  Rat w(r1, t1);
  w.canonicalize();
  // p = q y mod m by construction of the remainder sequence; re-check anyway
  Int check = ((w.get_num() - w.get_den() * y) % m + m) % m;
  if (check != 0) return std::nullopt;
  return w;
}

namespace {

Int rat_residue(const PadicContext& ctx, const Rat& x) {
  if (mpz_divisible_p(x.get_den().get_mpz_t(), ctx.ell.get_mpz_t()))
    throw std::invalid_argument("check_R_stability: candidate has denominators at a prime of S");
  return ctx.reduce(x.get_num() * ctx.unit_inverse(ctx.reduce(x.get_den())));
}

}  // namespace

std::optional<StabilityWitness> check_R_stability(const RStabilityModel& model,
                                                  const RatMatrix& candidate) {
  if (candidate.rows() != 4 || candidate.cols() != 4)
    throw std::invalid_argument("check_R_stability: candidate must be 4x4");
  RatLattice lat(candidate);  // throws if not full rank

  Int big(1);
  for (const auto& [ell, sp] : model.splittings) big *= sp.context.modulus;

  std::vector<std::string> names{"(0, 1)", "(0, i)", "(0, j)", "(0, ij)"};
  for (int gen = 0; gen < 4; ++gen) {
    for (int col = 0; col < 4; ++col) {
      RatMatrix v = candidate.submatrix(0, col, 4, 1);
      // residues of r.v at each prime of S, combined by CRT
      std::vector<Int> combined(4, Int(0));
      for (int row = 0; row < 4; ++row) {
        Int acc(0), mod_acc(1);
        for (const auto& [ell, sp] : model.splittings) {
          const PadicContext& ctx = sp.context;
          IntMatrix beta =
              gen == 0 ? IntMatrix::identity(2)
              : gen == 1 ? sp.i
              : gen == 2 ? sp.j
                         : reduce_mod(ctx, sp.i * sp.j).lift();
          IntMatrix act = r_action(sp, beta);
          Int entry(0);
          for (int k = 0; k < 4; ++k) entry += act(row, k) * rat_residue(ctx, v(k, 0));
          entry = ctx.reduce(entry);
          // CRT: acc mod mod_acc, entry mod ell^N
          Int minv;
          mpz_invert(minv.get_mpz_t(), mod_acc.get_mpz_t(), ctx.modulus.get_mpz_t());
          Int t = ((entry - acc) * minv) % ctx.modulus;
          t = (t + ctx.modulus) % ctx.modulus;
          acc += mod_acc * t;
          mod_acc *= ctx.modulus;
        }
        combined[row] = acc;
      }
      // a stable lattice forces r.v to be one rational vector of small height
      RatMatrix image(4, 1);
      bool reconstructed = true;
      for (int row = 0; row < 4 && reconstructed; ++row) {
        auto w = rational_reconstruct(combined[row], big);
        if (!w)
          reconstructed = false;
        else
          image(row, 0) = *w;
      }
      if (!reconstructed)
        return StabilityWitness{names[gen], v, RatMatrix(),
                                "local images at the primes of S glue to no rational vector"};
      if (!lat.contains(image))
        return StabilityWitness{names[gen], v, image,
                                "the glued rational image escapes the candidate lattice"};
    }
  }
  return std::nullopt;
}

}  // namespace latcert
