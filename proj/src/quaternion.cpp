#include "latcert/quaternion.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "latcert/hensel.hpp"

namespace latcert {

namespace {

// valuation and unit part of a nonzero rational at p
std::pair<int, Rat> split_valuation(const Rat& x, const Int& p) {
  if (x == 0) throw std::invalid_argument("split_valuation: zero");
  Int num = x.get_num(), den = x.get_den();
  int v = 0;
  while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    --v;
  }
  Rat u(num, den);
  u.canonicalize();
  return {v, u};
}

int legendre_rat(const Rat& u, const Int& p) {
  Int r;
  mpz_invert(r.get_mpz_t(), u.get_den().get_mpz_t(), p.get_mpz_t());
  r *= u.get_num();
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

// reduce x at 2 to 2^e * m with e in {0,1} and m an odd residue mod 64
long two_adic_rep(const Rat& x) {
  auto [v, u] = split_valuation(x, Int(2));
  Int m;
  mpz_invert(m.get_mpz_t(), u.get_den().get_mpz_t(), Int(64).get_mpz_t());
  m *= u.get_num();
  mpz_mod(m.get_mpz_t(), m.get_mpz_t(), Int(64).get_mpz_t());
  long rep = m.get_si();
  if (v % 2 != 0) rep *= 2;
  return rep % 64;
}

// root of x^2 = c over F_ell (ell odd), via the factorization machinery
std::optional<Int> fp_sqrt(const Int& c, const Int& ell) {
  Int cm;
  mpz_mod(cm.get_mpz_t(), c.get_mpz_t(), ell.get_mpz_t());
  if (cm == 0) return Int(0);
  if (mpz_legendre(cm.get_mpz_t(), ell.get_mpz_t()) != 1) return std::nullopt;
  ModPoly f{{((-cm) % ell + ell) % ell, Int(0), Int(1)}};
  auto factors = fp_factor_squarefree(f, ell);
  for (const auto& g : factors)
    if (g.degree() == 1) return ((-g.coeff(0)) % ell + ell) % ell;
  return std::nullopt;
}

Int rat_mod(const PadicContext& ctx, const Rat& x) {
  if (mpz_divisible_p(x.get_den().get_mpz_t(), ctx.ell.get_mpz_t()))
    throw std::invalid_argument("rat_mod: denominator divisible by ell");
  return ctx.reduce(x.get_num() * ctx.unit_inverse(ctx.reduce(x.get_den())));
}

}  // namespace

Int sqrt_mod(const PadicContext& ctx, const Int& c) {
  if (ctx.ell == 2) throw std::invalid_argument("sqrt_mod: ell must be odd");
  Int cr = ctx.reduce(c);
  auto r0 = fp_sqrt(cr, ctx.ell);
  if (!r0 || *r0 == 0) throw std::invalid_argument("sqrt_mod: not a unit square");
  // Newton: r <- r - (r^2 - c) / (2r), quadratic convergence
  Int r = *r0;
  for (int k = 0; k < 64; ++k) {
    Int err = ctx.reduce(r * r - cr);
    if (err == 0) return r;
    r = ctx.reduce(r - err * ctx.unit_inverse(ctx.reduce(2 * r)));
  }
  throw std::logic_error("sqrt_mod: Newton iteration failed to converge");
}

int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
  if (!is_prime(p)) throw std::invalid_argument("hilbert_symbol: place must be prime");
  if (p == 2) {
    long av = two_adic_rep(a), bv = two_adic_rep(b);
    // z^2 = a x^2 + b y^2 mod 64 with x, y or z odd (exact for v <= 1 data)
    for (long x = 0; x < 64; ++x)
      for (long y = 0; y < 64; ++y)
        for (long z = 0; z < 64; ++z) {
          if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
          if (((z * z - av * x * x - bv * y * y) % 64 + 64) % 64 == 0) return 1;
        }
    return -1;
  }
  auto [alpha, u] = split_valuation(a, p);
  auto [beta, w] = split_valuation(b, p);
  int s = 1;
  if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2 != 0) s = -s;  // (-1|p)^(alpha beta)
  if (beta % 2 && legendre_rat(u, p) == -1) s = -s;
  if (alpha % 2 && legendre_rat(w, p) == -1) s = -s;
  return s;
}

int hilbert_symbol_inf(const Rat& a, const Rat& b) { return (a < 0 && b < 0) ? -1 : 1; }

RamificationResult is_division(const QuaternionAlgebra& q) {
  if (q.a == 0 || q.b == 0) throw std::invalid_argument("is_division: degenerate algebra");
  std::set<Int> places{Int(2)};
  auto add_support = [&](const Int& x) {
    Int m = abs(x);
    for (Int d(2); d * d <= m; ++d)
      while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
        places.insert(d);
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t());
      }
    if (m > 1) places.insert(m);
  };
  add_support(q.a.get_num());
  add_support(q.a.get_den());
  add_support(q.b.get_num());
  add_support(q.b.get_den());

  RamificationResult r{false, {}, hilbert_symbol_inf(q.a, q.b) == -1};
  for (const Int& p : places)
    if (hilbert_symbol(q.a, q.b, p) == -1) r.finite.push_back(p);
  r.division = r.infinite || !r.finite.empty();
  int count = static_cast<int>(r.finite.size()) + (r.infinite ? 1 : 0);
  if (count % 2 != 0) throw std::logic_error("is_division: odd ramified set violates reciprocity");
  return r;
}

LocalSplitting split_quaternion_locally(const QuaternionAlgebra& q, const PadicContext& ctx) {
  if (ctx.ell == 2) throw std::invalid_argument("split_quaternion_locally: ell must be odd");
  if (hilbert_symbol(q.a, q.b, ctx.ell) != 1)
    throw std::invalid_argument("split_quaternion_locally: B is ramified at ell");

  // reduce both slots by squares to ell-valuation 0 or 1
  auto [va_full, ua_rat] = split_valuation(q.a, ctx.ell);
  auto [vb_full, ub_rat] = split_valuation(q.b, ctx.ell);
  if (va_full < 0 || vb_full < 0)
    throw std::invalid_argument("split_quaternion_locally: a, b must be ell-integral");
  int va = va_full % 2, vb = vb_full % 2;
  Int ua = rat_mod(ctx, ua_rat), ub = rat_mod(ctx, ub_rat);
  Int am = ctx.reduce(va ? ua * ctx.ell : ua);
  Int bm = ctx.reduce(vb ? ub * ctx.ell : ub);

  auto diag_split = [&](const Int& s, const Int& other) {
    // i = diag(s, -s) with s^2 = a; j = [[0,1],[other,0]] squares to other
    IntMatrix mi(2, 2), mj(2, 2);
    mi(0, 0) = s;
    mi(1, 1) = ctx.reduce(-s);
    mj(0, 1) = 1;
    mj(1, 0) = other;
    return std::pair{mi, mj};
  };

  IntMatrix mi(2, 2), mj(2, 2);
  if (va == 0 && mpz_legendre(ctx.reduce(ua).get_mpz_t(), ctx.ell.get_mpz_t()) == 1) {
    std::tie(mi, mj) = diag_split(sqrt_mod(ctx, ua), bm);
  } else if (vb == 0 && mpz_legendre(ctx.reduce(ub).get_mpz_t(), ctx.ell.get_mpz_t()) == 1) {
    std::tie(mj, mi) = diag_split(sqrt_mod(ctx, ub), am);
  } else if (va == 0 && vb == 0) {
    // both non-square units: solve r^2 - a s^2 = b by search mod ell + lift
    Int r, s;
    bool found = false;
    for (Int s0(0); s0 < ctx.ell && !found; ++s0) {
      Int c = ctx.reduce(bm + am * s0 * s0);
      auto r0 = fp_sqrt(c, ctx.ell);
      if (!r0) continue;
      if (*r0 == 0 && s0 == 0) continue;
      if (*r0 != 0) {  // lift r, s fixed: r^2 = b + a s^2
        s = s0;
        r = sqrt_mod(ctx, ctx.reduce(bm + am * s * s));
      } else {  // r = 0, lift s: s^2 = -b/a
        r = 0;
        s = sqrt_mod(ctx, ctx.reduce(-bm * ctx.unit_inverse(am)));
      }
      found = true;
    }
    if (!found) throw std::logic_error("split_quaternion_locally: norm equation unsolvable");
    // i = [[0, a],[1, 0]], j = [[r, -a s],[s, -r]]
    mi(0, 1) = am;
    mi(1, 0) = 1;
    mj(0, 0) = r;
    mj(0, 1) = ctx.reduce(-am * s);
    mj(1, 0) = s;
    mj(1, 1) = ctx.reduce(-r);
  } else {
    // both valuations 1: k = ij has k^2 = -ab with even valuation; its unit
    // part -ua ub must be square for the algebra to split
    Int m2 = ctx.reduce(-ua * ub);
    if (mpz_legendre(ctx.reduce(m2).get_mpz_t(), ctx.ell.get_mpz_t()) != 1)
      throw std::logic_error("split_quaternion_locally: symbol said split, unit part not square");
    Int m = sqrt_mod(ctx, m2);
    // i = [[0,1],[a,0]], j = i k / a = [[0, -m/ua],[ell m, 0]]
    mi(0, 1) = 1;
    mi(1, 0) = am;
    mj(0, 1) = ctx.reduce(-m * ctx.unit_inverse(ua));
    mj(1, 0) = ctx.reduce(ctx.ell * m);
  }

  // undo the square reduction so that i^2 = a itself, not its reduced part
  Int sa = ctx.pow_ell(std::min(va_full / 2, ctx.precision));
  Int sb = ctx.pow_ell(std::min(vb_full / 2, ctx.precision));
  mi = reduce_mod(ctx, mi * sa).lift();
  mj = reduce_mod(ctx, mj * sb).lift();

  // defining relations, exactly mod ell^N
  Int ared = ctx.reduce(rat_mod(ctx, ua_rat) * ctx.pow_ell(std::min(va_full, ctx.precision)));
  Int bred = ctx.reduce(rat_mod(ctx, ub_rat) * ctx.pow_ell(std::min(vb_full, ctx.precision)));
  PadicMatrix pi(ctx, mi), pj(ctx, mj);
  if (!((pi * pi).lift() == reduce_mod(ctx, IntMatrix::identity(2) * ared).lift()) ||
      !((pj * pj).lift() == reduce_mod(ctx, IntMatrix::identity(2) * bred).lift()))
    throw std::logic_error("split_quaternion_locally: squares fail");
  if (!((pi * pj + pj * pi).lift().is_zero()))
    throw std::logic_error("split_quaternion_locally: anticommutation fails");
  return LocalSplitting{ctx, mi, mj};
}

}  // namespace latcert
