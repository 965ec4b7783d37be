#include "latcert/local_modules.hpp"

#include <stdexcept>

#include "latcert/hensel.hpp"

namespace latcert {

namespace {

// Incremental F_ell span with reduced echelon basis.
struct FpSpan {
  Int p;
  int n;
  std::vector<std::vector<Int>> vecs;
  std::vector<int> piv;

  FpSpan(Int p_, int n_) : p(std::move(p_)), n(n_) {}
  int dim() const { return static_cast<int>(vecs.size()); }

  // absorbs v if independent of the current span; returns whether it grew
  bool add(std::vector<Int> v) {
    for (size_t k = 0; k < vecs.size(); ++k) {
      const Int& c = v[piv[k]];
      if (c == 0) continue;
      Int cc = c;
      for (int i = 0; i < n; ++i) {
        v[i] -= cc * vecs[k][i];
        mpz_mod(v[i].get_mpz_t(), v[i].get_mpz_t(), p.get_mpz_t());
      }
    }
    int pv = -1;
    for (int i = 0; i < n; ++i)
      if (v[i] != 0) {
        pv = i;
        break;
      }
    if (pv < 0) return false;
    Int inv;
    mpz_invert(inv.get_mpz_t(), v[pv].get_mpz_t(), p.get_mpz_t());
    for (int i = 0; i < n; ++i) {
      v[i] *= inv;
      mpz_mod(v[i].get_mpz_t(), v[i].get_mpz_t(), p.get_mpz_t());
    }
    vecs.push_back(std::move(v));
    piv.push_back(pv);
    return true;
  }
};

std::vector<Int> column_mod(const IntMatrix& m, int c, const Int& p) {
  std::vector<Int> v(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    mpz_mod(v[i].get_mpz_t(), m(i, c).get_mpz_t(), p.get_mpz_t());
  return v;
}

}  // namespace

LocalModule make_local_module(const PadicContext& ctx, const IntMatrix& U, const IntPoly& f,
                              bool constructed) {
  if (!U.is_square()) throw std::invalid_argument("make_local_module: operator must be square");
  PadicMatrix u(ctx, U);
  if (!eval_poly_mod(f.coeffs(), u).lift().is_zero())
    throw std::invalid_argument("make_local_module: f(U) != 0 mod ell^N");
  return LocalModule{ctx, U.rows(), std::move(u), constructed};
}

std::vector<LambdaComponent> decompose(const LocalModule& t, const Order& o) {
  const PadicContext& ctx = t.context;
  auto factors = splitting(o, ctx);  // throws BadPrimeError at bad primes
  if (!eval_poly_mod(o.f.coeffs(), t.U).lift().is_zero())
    throw std::invalid_argument("decompose: operator does not satisfy f mod ell^N");

  std::vector<ModPoly> fls;
  for (const auto& lf : factors) fls.push_back(lf.f_lambda);
  auto es = idempotents(o.f, fls, ctx);

  std::vector<LambdaComponent> comps;
  PadicMatrix sum(ctx, t.n);
  int total = 0;
  for (size_t k = 0; k < es.size(); ++k) {
    PadicMatrix e = eval_poly_mod(es[k].c, t.U);
    sum = sum + e;
    // the image of an idempotent is a direct summand: any maximal set of
    // columns independent mod ell generates it (Nakayama), so take the
    // first such set for a deterministic basis
    FpSpan span(ctx.ell, t.n);
    std::vector<int> cols;
    for (int c = 0; c < t.n; ++c)
      if (span.add(column_mod(e.lift(), c, ctx.ell))) cols.push_back(c);
    IntMatrix basis(t.n, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
      for (int i = 0; i < t.n; ++i) basis(i, static_cast<int>(c)) = e(i, cols[c]);
    total += basis.cols();
    int rank = basis.cols();
    comps.push_back(LambdaComponent{ctx, factors[k], t.U, std::move(basis), rank});
  }
  if (!(sum == PadicMatrix::identity(ctx, t.n)))
    throw std::logic_error("decompose: idempotents do not sum to 1 on the module");
  if (total != t.n) throw std::logic_error("decompose: component ranks do not sum to n");
  return comps;
}

IntMatrix free_basis(const LambdaComponent& comp) {
  int d = comp.factor.residue_degree;
  if (comp.local_rank % d != 0)
    throw std::invalid_argument("free_basis: component rank not divisible by deg f_lambda");
  int h = comp.local_rank / d;
  int n = comp.basis.rows();
  const PadicContext& ctx = comp.context;

  FpSpan span(ctx.ell, n);
  IntMatrix gens(n, h);
  int found = 0;
  for (int c = 0; c < comp.basis.cols() && found < h; ++c) {
    if (!span.add(column_mod(comp.basis, c, ctx.ell))) continue;
    for (int i = 0; i < n; ++i) gens(i, found) = comp.basis(i, c);
    // the F_ell span of the O-orbit of an accepted generator has dimension
    // exactly d: each U^j v must enlarge the span
    IntMatrix w = comp.basis.submatrix(0, c, n, 1);
    for (int j = 1; j < d; ++j) {
      w = comp.U.lift() * w;
      for (int i = 0; i < n; ++i) w(i, 0) = ctx.reduce(w(i, 0));
      if (!span.add(column_mod(w, 0, ctx.ell)))
        throw std::logic_error("free_basis: orbit degenerates mod ell");
    }
    ++found;
  }
  if (found < h || span.dim() != comp.local_rank)
    throw std::logic_error("free_basis: failed to generate the component");
  return gens;
}

IntMatrix assembled_basis(const LambdaComponent& comp, const IntMatrix& gens) {
  int d = comp.factor.residue_degree;
  int n = comp.basis.rows();
  IntMatrix b(n, gens.cols() * d);
  for (int g = 0; g < gens.cols(); ++g) {
    IntMatrix w = gens.submatrix(0, g, n, 1);
    for (int j = 0; j < d; ++j) {
      if (j > 0) {
        w = comp.U.lift() * w;
        for (int i = 0; i < n; ++i) w(i, 0) = comp.context.reduce(w(i, 0));
      }
      for (int i = 0; i < n; ++i) b(i, g * d + j) = w(i, 0);
    }
  }
  return b;
}

IntMatrix full_basis(const std::vector<LambdaComponent>& comps) {
  if (comps.empty()) throw std::invalid_argument("full_basis: no components");
  int n = comps.front().basis.rows();
  IntMatrix b(n, n);
  int at = 0;
  for (const auto& comp : comps) {
    IntMatrix part = assembled_basis(comp, free_basis(comp));
    b.set_block(0, at, part);
    at += part.cols();
  }
  if (at != n) throw std::logic_error("full_basis: ranks do not fill the module");
  return b;
}

IntMatrix companion_model(const std::vector<LambdaComponent>& comps) {
  IntMatrix m(0, 0);
  for (const auto& comp : comps) {
    int d = comp.factor.residue_degree;
    IntMatrix block = block_companion(mp_lift(comp.factor.f_lambda), comp.local_rank / d);
    m = (m.rows() == 0) ? block : direct_sum(m, block);
  }
  if (comps.empty()) throw std::invalid_argument("companion_model: no components");
  return reduce_mod(comps.front().context, m).lift();
}

}  // namespace latcert
