#include "latcert/similarity.hpp"

#include <random>
#include <sstream>

#include "latcert/hensel.hpp"

namespace latcert {

std::vector<int> divisor_valuations(const PadicContext& ctx, const IntMatrix& m) {
  int n = m.rows();
  IntMatrix ext(n, 2 * n);
  ext.set_block(0, 0, m);
  for (int i = 0; i < n; ++i) ext(i, n + i) = ctx.modulus;
  auto r = snf(ext);
  std::vector<int> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = ctx.valuation(r.D(i, i));
  return vals;  // snf divisor chain is already ascending
}

std::optional<PadicMatrix> intertwiner_search(const PadicContext& ctx, const IntMatrix& a,
                                              const IntMatrix& u, int attempts) {
  int n = a.rows();
  // vec(P A - U P) = S vec(P), row-major vec
  IntMatrix s(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        s(i * n + j, i * n + k) += a(k, j);
        s(i * n + j, k * n + j) -= u(i, k);
      }
  IntMatrix gen = padic_kernel(ctx, s);
  auto as_matrix = [&](const IntMatrix& col) {
    IntMatrix p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = ctx.reduce(col(i * n + j, 0));
    return PadicMatrix(ctx, p);
  };
  for (int c = 0; c < gen.cols(); ++c) {
    PadicMatrix p = as_matrix(gen.submatrix(0, c, n * n, 1));
    if (p.is_unimodular()) return p;
  }
  std::mt19937_64 rng(0x5ca1ab1e);
  for (int t = 0; t < attempts; ++t) {
    IntMatrix comb(gen.cols(), 1);
    for (int c = 0; c < gen.cols(); ++c)
      comb(c, 0) = Int(static_cast<unsigned long>(rng())) % ctx.modulus;
    PadicMatrix p = as_matrix(gen * comb);
    if (p.is_unimodular()) return p;
  }
  return std::nullopt;
}

namespace {

std::string join_vals(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// first mismatch of a conjugation invariant among g(a) vs g(u), g in the family
std::optional<std::string> invariant_mismatch(const PadicContext& ctx, const IntMatrix& a,
                                              const IntMatrix& u,
                                              const std::vector<std::pair<std::string, IntPoly>>& family) {
  PadicMatrix pa(ctx, a), pu(ctx, u);
  for (const auto& [name, g] : family) {
    auto va = divisor_valuations(ctx, eval_poly_mod(g.coeffs(), pa).lift());
    auto vu = divisor_valuations(ctx, eval_poly_mod(g.coeffs(), pu).lift());
    if (va != vu)
      return "elementary divisors of " + name + " differ: [" + join_vals(va) + "] vs [" +
             join_vals(vu) + "]";
  }
  return std::nullopt;
}

}  // namespace

SimilarityResult similarity(const IntMatrix& a, const PadicMatrix& u, const Order& o) {
  const PadicContext& ctx = u.ctx();
  if (a.rows() != u.size()) throw std::invalid_argument("similarity: size mismatch");
  IntPoly cpa = charpoly(a);
  IntPoly cpu = u.charpoly_mod();
  for (int k = 0; k <= a.rows(); ++k)
    if (ctx.reduce(cpa.coeff(k)) != ctx.reduce(cpu.coeff(k)))
      throw CharpolyMismatch("similarity: characteristic polynomials differ mod ell^N");
  if (!eval_poly_mod(o.f.coeffs(), PadicMatrix(ctx, a)).lift().is_zero())
    throw std::invalid_argument("similarity: f(A) != 0 mod ell^N; A is not an f-model");

  if (o.is_good_prime(ctx.ell)) {
    if (!eval_poly_mod(o.f.coeffs(), u).lift().is_zero()) {
      // pin the refutation on a lambda-component invariant where possible
      auto factors = splitting(o, ctx);
      std::vector<std::pair<std::string, IntPoly>> family{{"f(X)", o.f}};
      if (factors.size() > 1) {
        std::vector<ModPoly> fls;
        for (const auto& lf : factors) fls.push_back(lf.f_lambda);
        auto es = idempotents(o.f, fls, ctx);
        for (size_t k = 0; k < es.size(); ++k)
          family.emplace_back("e_" + std::to_string(k) + "(X)", mp_lift(es[k]));
      }
      auto mism = invariant_mismatch(ctx, a, u.lift(), family);
      return {Similarity::Refuted, std::nullopt,
              mism ? *mism : "f(U) != 0 mod ell^N while f(A) = 0"};
    }
    // both modules are free over the local order: transport through the model
    LocalModule ta = make_local_module(ctx, a, o.f);
    LocalModule tu = make_local_module(ctx, u.lift(), o.f);
    auto ca = decompose(ta, o);
    auto cu = decompose(tu, o);
    IntMatrix ba = full_basis(ca);
    IntMatrix bu = full_basis(cu);
    if (companion_model(ca) != companion_model(cu))
      throw std::logic_error("similarity: equal charpolys produced different models");
    PadicMatrix p = PadicMatrix(ctx, bu) * PadicMatrix(ctx, ba).inverse();
    if (!(p * PadicMatrix(ctx, a) * p.inverse() == u))
      throw std::logic_error("similarity: conjugator failed self-check");
    return {Similarity::Verified, p, ""};
  }

  // bad prime: conjugation invariants, then a bounded intertwiner search
  std::vector<std::pair<std::string, IntPoly>> family{{"f(X)", o.f}, {"f'(X)", o.f.derivative()}};
  IntPoly xj = IntPoly::x();
  for (int j = 1; j < a.rows(); ++j) {
    family.emplace_back("X^" + std::to_string(j), xj);
    xj = xj * IntPoly::x();
  }
  if (auto mism = invariant_mismatch(ctx, a, u.lift(), family))
    return {Similarity::Refuted, std::nullopt, *mism};
  if (auto p = intertwiner_search(ctx, a, u.lift())) {
    if (!(*p * PadicMatrix(ctx, a) * p->inverse() == u))
      throw std::logic_error("similarity: conjugator failed self-check");
    return {Similarity::Verified, *p, ""};
  }
  return {Similarity::Unknown, std::nullopt,
          "invariants agree but no unimodular intertwiner found at this precision"};
}

}  // namespace latcert
