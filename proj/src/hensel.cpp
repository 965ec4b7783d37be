#include "latcert/hensel.hpp"

#include <algorithm>
#include <random>

namespace latcert {

static void mp_normalize(ModPoly& f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

static Int imod(const Int& x, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

ModPoly mp_reduce(const IntPoly& f, const Int& m) {
  ModPoly r;
  r.c.reserve(f.coeffs().size());
  for (const Int& a : f.coeffs()) r.c.push_back(imod(a, m));
  mp_normalize(r);
  return r;
}

ModPoly mp_reduce(const ModPoly& f, const Int& m) {
  ModPoly r = f;
  for (auto& a : r.c) a = imod(a, m);
  mp_normalize(r);
  return r;
}

IntPoly mp_lift(const ModPoly& f) { return IntPoly(f.c); }

ModPoly mp_add(const ModPoly& a, const ModPoly& b, const Int& m) {
  ModPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  for (auto& v : r.c) v = imod(v, m);
  mp_normalize(r);
  return r;
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b, const Int& m) {
  ModPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  for (auto& v : r.c) v = imod(v, m);
  mp_normalize(r);
  return r;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, const Int& m) {
  if (a.is_zero() || b.is_zero()) return {};
  ModPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  for (auto& v : r.c) v = imod(v, m);
  mp_normalize(r);
  return r;
}

ModPoly mp_scale(const ModPoly& a, const Int& k, const Int& m) {
  ModPoly r = a;
  for (auto& v : r.c) v = imod(v * k, m);
  mp_normalize(r);
  return r;
}

std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b, const Int& m) {
  if (b.is_zero()) throw std::invalid_argument("mp_divmod: division by zero");
  Int lcinv;
  if (!mpz_invert(lcinv.get_mpz_t(), b.c.back().get_mpz_t(), m.get_mpz_t()))
    throw std::invalid_argument("mp_divmod: leading coefficient not a unit");
  ModPoly r = a;
  mp_normalize(r);
  int db = b.degree();
  ModPoly q;
  if (r.degree() >= db) q.c.assign(r.degree() - db + 1, Int(0));
  while (r.degree() >= db) {
    Int f = imod(r.c.back() * lcinv, m);
    int shift = r.degree() - db;
    q.c[shift] = f;
    for (int i = 0; i <= db; ++i) r.c[i + shift] = imod(r.c[i + shift] - f * b.c[i], m);
    mp_normalize(r);
  }
  mp_normalize(q);
  return {std::move(q), std::move(r)};
}

ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, const Int& m) {
  return mp_divmod(mp_mul(a, b, m), f, m).second;
}

bool mp_equal(const ModPoly& a, const ModPoly& b) { return a.c == b.c; }

ModPoly fp_monic(const ModPoly& a, const Int& p) {
  if (a.is_zero()) return a;
  Int inv;
  mpz_invert(inv.get_mpz_t(), a.c.back().get_mpz_t(), p.get_mpz_t());
  return mp_scale(a, inv, p);
}

ModPoly fp_gcd(ModPoly a, ModPoly b, const Int& p) {
  mp_normalize(a);
  mp_normalize(b);
  while (!b.is_zero()) {
    ModPoly r = mp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

void fp_xgcd(const ModPoly& a, const ModPoly& b, const Int& p, ModPoly& g, ModPoly& s,
             ModPoly& t) {
  ModPoly r0 = a, r1 = b;
  ModPoly s0{{Int(1)}}, s1{}, t0{}, t1{{Int(1)}};
  mp_normalize(r0);
  mp_normalize(r1);
  while (!r1.is_zero()) {
    auto [q, r] = mp_divmod(r0, r1, p);
    ModPoly s2 = mp_sub(s0, mp_mul(q, s1, p), p);
    ModPoly t2 = mp_sub(t0, mp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // normalize gcd monic
  if (!r0.is_zero()) {
    Int inv;
    mpz_invert(inv.get_mpz_t(), r0.c.back().get_mpz_t(), p.get_mpz_t());
    r0 = mp_scale(r0, inv, p);
    s0 = mp_scale(s0, inv, p);
    t0 = mp_scale(t0, inv, p);
  }
  g = std::move(r0);
  s = std::move(s0);
  t = std::move(t0);
}

ModPoly fp_powmod(const ModPoly& a, const Int& e, const ModPoly& f, const Int& p) {
  ModPoly base = mp_divmod(a, f, p).second;
  ModPoly r{{Int(1)}};
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mp_mulmod(r, base, f, p);
    base = mp_mulmod(base, base, f, p);
    k >>= 1;
  }
  return r;
}

ModPoly fp_derivative(const ModPoly& a, const Int& p) {
  ModPoly r;
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = imod(a.c[i] * Int(static_cast<long>(i)), p);
  mp_normalize(r);
  return r;
}

bool fp_squarefree(const ModPoly& f, const Int& p) {
  ModPoly d = fp_derivative(f, p);
  if (d.is_zero()) return f.degree() == 0;
  return fp_gcd(f, d, p).degree() == 0;
}

static bool mp_less(const ModPoly& a, const ModPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

// equal-degree splitting (Cantor-Zassenhaus; trace construction for p = 2)
static void fp_edf(const ModPoly& f, int d, const Int& p, std::mt19937_64& rng,
                   std::vector<ModPoly>& out) {
  int n = f.degree();
  if (n == d) {
    out.push_back(f);
    return;
  }
  ModPoly splitter;
  while (true) {
    // random polynomial of degree < n, drawn from the deterministic stream
    ModPoly a;
    a.c.resize(n);
    for (int i = 0; i < n; ++i) a.c[i] = imod(Int(static_cast<unsigned long>(rng())), p);
    mp_normalize(a);
    if (a.degree() < 1) continue;
    ModPoly g = fp_gcd(f, a, p);
    if (g.degree() > 0 && g.degree() < n) {
      splitter = g;
      break;
    }
    ModPoly b;
    if (p == 2) {
      // trace map: a + a^2 + a^4 + ... (d*k squarings over F_2)
      ModPoly t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = mp_mulmod(t, t, f, p);
        acc = mp_add(acc, t, p);
      }
      b = acc;
    } else {
      Int e;
      mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), d);
      e = (e - 1) / 2;
      b = fp_powmod(a, e, f, p);
      b = mp_sub(b, ModPoly{{Int(1)}}, p);
    }
    g = fp_gcd(f, b, p);
    if (g.degree() > 0 && g.degree() < n) {
      splitter = g;
      break;
    }
  }
  auto rest = mp_divmod(f, splitter, p).first;
  fp_edf(fp_monic(splitter, p), d, p, rng, out);
  fp_edf(fp_monic(rest, p), d, p, rng, out);
}

std::vector<ModPoly> fp_factor_squarefree(const ModPoly& fin, const Int& p) {
  ModPoly f = fp_monic(fin, p);
  if (!fp_squarefree(f, p))
    throw std::invalid_argument("fp_factor_squarefree: input not squarefree");
  std::vector<ModPoly> out;
  if (f.degree() < 1) return out;
  // deterministic seed from the polynomial and the prime
  uint64_t seed = 0x9e3779b97f4a7c15ULL ^ mpz_get_ui(p.get_mpz_t());
  for (const Int& c : f.c) seed = seed * 1099511628211ULL + mpz_get_ui(c.get_mpz_t());
  std::mt19937_64 rng(seed);
  // distinct-degree factorization
  ModPoly x{{Int(0), Int(1)}};
  ModPoly h = x;  // x^(p^d) mod rem, iterated
  ModPoly rem = f;
  for (int d = 1; rem.degree() > 0; ++d) {
    if (2 * d > rem.degree()) {
      out.push_back(rem);  // remainder is irreducible
      break;
    }
    h = fp_powmod(h, p, rem, p);
    ModPoly g = fp_gcd(mp_sub(h, x, p), rem, p);
    if (g.degree() > 0) {
      fp_edf(g, d, p, rng, out);
      rem = fp_monic(mp_divmod(rem, g, p).first, p);
      if (rem.degree() == 0) break;
      h = mp_divmod(h, rem, p).second;
    }
  }
  std::sort(out.begin(), out.end(), mp_less);
  return out;
}

// One quadratic Hensel step: given f ≡ g*h (mod q) with s*g + t*h ≡ 1 (mod q),
// produce the same data mod q^2 (capped at the target modulus).
static void hensel_step(const ModPoly& f, ModPoly& g, ModPoly& h, ModPoly& s, ModPoly& t,
                        const Int& q2) {
  ModPoly e = mp_sub(f, mp_mul(g, h, q2), q2);
  auto [qq, r] = mp_divmod(mp_mul(s, e, q2), h, q2);
  ModPoly hstar = mp_add(h, r, q2);  // h monic, deg r < deg h, so hstar monic
  auto [gstar, grem] = mp_divmod(f, hstar, q2);
  if (!grem.is_zero()) throw std::logic_error("hensel_step: inexact cofactor division");
  (void)qq;
  ModPoly b = mp_sub(mp_add(mp_mul(s, gstar, q2), mp_mul(t, hstar, q2), q2), ModPoly{{Int(1)}}, q2);
  auto [cc, dd] = mp_divmod(mp_mul(s, b, q2), hstar, q2);
  ModPoly sstar = mp_sub(s, dd, q2);
  ModPoly tstar = mp_sub(t, mp_add(mp_mul(t, b, q2), mp_mul(cc, gstar, q2), q2), q2);
  g = std::move(gstar);
  h = std::move(hstar);
  s = std::move(sstar);
  t = std::move(tstar);
}

// lift f ≡ g0*h0 (mod ell), gcd(g0,h0)=1, to f ≡ g*h (mod ell^N); g, h monic
static void hensel_lift_pair(const ModPoly& f, const ModPoly& g0, const ModPoly& h0,
                             const PadicContext& ctx, ModPoly& g, ModPoly& h) {
  ModPoly gg, ss, tt;
  fp_xgcd(g0, h0, ctx.ell, gg, ss, tt);
  if (gg.degree() != 0)
    throw std::invalid_argument("hensel_lift_pair: factors not coprime mod ell");
  g = g0;
  h = h0;
  ModPoly s = ss, t = tt;
  Int q = ctx.ell;
  while (q < ctx.modulus) {
    Int q2 = q * q;
    if (q2 > ctx.modulus) q2 = ctx.modulus;
    hensel_step(mp_reduce(f, q2), g, h, s, t, q2);
    q = q2;
  }
  g = mp_reduce(g, ctx.modulus);
  h = mp_reduce(h, ctx.modulus);
}

// recursive factor-tree lift: factors0 are the (coprime) factors of f mod ell
static void lift_tree(const ModPoly& f, const std::vector<ModPoly>& factors0, size_t lo, size_t hi,
                      const PadicContext& ctx, std::vector<ModPoly>& out) {
  if (hi - lo == 1) {
    out.push_back(mp_reduce(f, ctx.modulus));
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  ModPoly g0{{Int(1)}}, h0{{Int(1)}};
  for (size_t i = lo; i < mid; ++i) g0 = mp_mul(g0, factors0[i], ctx.ell);
  for (size_t i = mid; i < hi; ++i) h0 = mp_mul(h0, factors0[i], ctx.ell);
  ModPoly g, h;
  hensel_lift_pair(f, g0, h0, ctx, g, h);
  lift_tree(g, factors0, lo, mid, ctx, out);
  lift_tree(h, factors0, mid, hi, ctx, out);
}

std::vector<ModPoly> hensel_factor(const IntPoly& f, const PadicContext& ctx,
                                   const std::vector<IntPoly>* seed) {
  if (!f.is_monic()) throw std::invalid_argument("hensel_factor: monic polynomial required");
  ModPoly fbar = mp_reduce(f, ctx.ell);
  std::vector<ModPoly> factors0;
  if (seed) {
    ModPoly prod{{Int(1)}};
    for (const IntPoly& s : *seed) {
      ModPoly sm = mp_reduce(s, ctx.ell);
      prod = mp_mul(prod, sm, ctx.ell);
      factors0.push_back(std::move(sm));
    }
    if (!mp_equal(prod, fbar))
      throw std::invalid_argument("hensel_factor: seed product differs from f mod ell");
    for (size_t i = 0; i < factors0.size(); ++i)
      for (size_t j = i + 1; j < factors0.size(); ++j)
        if (fp_gcd(factors0[i], factors0[j], ctx.ell).degree() != 0)
          throw std::invalid_argument("hensel_factor: seed factors not coprime mod ell");
  } else {
    if (!fp_squarefree(fbar, ctx.ell)) {
      Int disc = f.degree() >= 2 ? poly_disc(f) : Int(1);
      int v = -1;  // -1 marks disc = 0 (f not squarefree over Q)
      if (disc != 0) {
        v = 0;
        while (mpz_divisible_p(disc.get_mpz_t(), ctx.ell.get_mpz_t())) {
          mpz_divexact(disc.get_mpz_t(), disc.get_mpz_t(), ctx.ell.get_mpz_t());
          ++v;
        }
      }
      throw BadPrimeError("hensel_factor: f not squarefree mod ell (ramified/bad prime)", v);
    }
    factors0 = fp_factor_squarefree(fbar, ctx.ell);
  }
  if (factors0.empty()) return {};
  ModPoly fmod = mp_reduce(f, ctx.modulus);
  std::vector<ModPoly> lifted;
  lift_tree(fmod, factors0, 0, factors0.size(), ctx, lifted);
  // verify the product reconstructs f
  ModPoly prod{{Int(1)}};
  for (const auto& g : lifted) prod = mp_mul(prod, g, ctx.modulus);
  if (!mp_equal(prod, fmod)) throw std::logic_error("hensel_factor: lift verification failed");
  std::sort(lifted.begin(), lifted.end(), mp_less);
  return lifted;
}

std::vector<ModPoly> idempotents(const IntPoly& f, const std::vector<ModPoly>& factors,
                                 const PadicContext& ctx) {
  const Int& q = ctx.modulus;
  ModPoly fmod = mp_reduce(f, q);
  std::vector<ModPoly> out;
  if (factors.size() == 1) {
    out.push_back(ModPoly{{Int(1)}});
    return out;
  }
  for (size_t k = 0; k < factors.size(); ++k) {
    // m = f / f_k mod q; invert m in (Z/q)[x]/(f_k) by Newton from mod ell
    ModPoly m{{Int(1)}};
    for (size_t j = 0; j < factors.size(); ++j)
      if (j != k) m = mp_mul(m, factors[j], q);
    const ModPoly& fk = factors[k];
    ModPoly mbar = mp_divmod(mp_reduce(m, ctx.ell), mp_reduce(fk, ctx.ell), ctx.ell).second;
    ModPoly g, s, t;
    fp_xgcd(mbar, mp_reduce(fk, ctx.ell), ctx.ell, g, s, t);
    if (g.degree() != 0)
      throw std::invalid_argument("idempotents: factors not coprime mod ell");
    ModPoly inv = s;  // m * inv ≡ 1 mod (f_k, ell)
    Int prec = ctx.ell;
    while (prec < q) {
      prec = prec * prec;
      if (prec > q) prec = q;
      ModPoly two{{Int(2)}};
      ModPoly mi = mp_divmod(mp_reduce(m, prec), mp_reduce(fk, prec), prec).second;
      inv = mp_divmod(mp_mul(inv, mp_sub(two, mp_mul(mi, inv, prec), prec), prec),
                      mp_reduce(fk, prec), prec)
                .second;
    }
    ModPoly e = mp_divmod(mp_mul(m, inv, q), fmod, q).second;
    out.push_back(std::move(e));
  }
  // sanity: e_i orthogonal idempotents summing to 1
  ModPoly sum;
  for (const auto& e : out) sum = mp_add(sum, e, q);
  if (!mp_equal(sum, ModPoly{{Int(1)}}))
    throw std::logic_error("idempotents: identities failed (sum != 1)");
  for (size_t i = 0; i < out.size(); ++i) {
    if (!mp_equal(mp_mulmod(out[i], out[i], fmod, q), out[i]))
      throw std::logic_error("idempotents: e^2 != e");
    for (size_t j = i + 1; j < out.size(); ++j)
      if (!mp_mulmod(out[i], out[j], fmod, q).is_zero())
        throw std::logic_error("idempotents: e_i e_j != 0");
  }
  return out;
}

}  // namespace latcert
