#include "latcert/engine.hpp"

#include <sstream>

namespace latcert {

namespace {

bool is_integral(const RatMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::invalid_argument("to_int: non-integral entry");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

int valuation_at(Int x, const Int& ell) {
  if (x == 0) throw std::invalid_argument("valuation_at: zero");
  int v = 0;
  while (mpz_divisible_p(x.get_mpz_t(), ell.get_mpz_t())) {
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t());
    ++v;
  }
  return v;
}

Int strip_primes(Int x, const std::vector<Int>& primes) {
  for (const Int& p : primes)
    if (p > 1)
      while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()))
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return x;
}

}  // namespace

IntPoly ProblemInstance::min_poly() const {
  IntPoly f = IntPoly::constant(Int(1));
  for (const auto& b : blocks) f = f * b.f;
  return f;
}

IntPoly ProblemInstance::char_poly() const {
  IntPoly f = IntPoly::constant(Int(1));
  for (const auto& b : blocks)
    for (int k = 0; k < b.r * b.h; ++k) f = f * b.f;
  return f;
}

std::vector<SubInstance> reduce_blocks(const ProblemInstance& inst) {
  if (inst.g <= 0) throw std::invalid_argument("reduce_blocks: g must be positive");
  if (inst.blocks.empty()) throw std::invalid_argument("reduce_blocks: no blocks");
  int total = 0;
  for (const auto& b : inst.blocks) {
    if (b.r < 1 || b.h < 1) throw std::invalid_argument("reduce_blocks: r, h must be positive");
    make_order(b.f);  // monic squarefree
    total += b.r * b.h * b.f.degree();
  }
  if (total != inst.n()) throw std::invalid_argument("reduce_blocks: block ranks do not sum to 2g");
  for (size_t i = 0; i < inst.blocks.size(); ++i)
    for (size_t j = i + 1; j < inst.blocks.size(); ++j)
      if (resultant(inst.blocks[i].f, inst.blocks[j].f) == 0)
        throw std::invalid_argument("reduce_blocks: block polynomials share a factor");
  std::vector<SubInstance> subs;
  for (const auto& b : inst.blocks) subs.push_back(SubInstance{b.f, b.h, b.r});
  return subs;
}

IntMatrix model_operator(const ProblemInstance& inst) {
  IntMatrix a(0, 0);
  for (const auto& b : inst.blocks) {
    IntMatrix block = block_companion(b.f, b.r * b.h);
    a = (a.rows() == 0) ? block : direct_sum(a, block);
  }
  return a;
}

GlobalLattice make_global(const RatMatrix& basis, const IntMatrix& ambient_op) {
  return GlobalLattice{basis, inverse(basis) * to_rat(ambient_op) * basis};
}

PadicMatrix reduce_rat_mod(const PadicContext& ctx, const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Int& den = m(i, j).get_den();
      if (mpz_divisible_p(den.get_mpz_t(), ctx.ell.get_mpz_t()))
        throw std::invalid_argument("reduce_rat_mod: denominator divisible by ell");
      r(i, j) = ctx.reduce(m(i, j).get_num() * ctx.unit_inverse(ctx.reduce(den)));
    }
  return PadicMatrix(ctx, r);
}

GlobalLattice glue_lattice(const GlobalLattice& m0, const IntMatrix& ambient_op,
                           const std::map<Int, RatMatrix>& targets, int precision) {
  int e = precision / 2;
  RatMatrix amb = to_rat(ambient_op);
  RatLattice base(m0.basis);
  RatLattice m = base;
  for (const auto& [ell, c] : targets) {
    RatMatrix tb = m0.basis * c;
    RatLattice t(tb);
    // target must carry the operator ell-integrally
    RatMatrix x = inverse(tb) * amb * tb;
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j)
        if (mpz_divisible_p(x(i, j).get_den().get_mpz_t(), ell.get_mpz_t()))
          throw std::invalid_argument("glue_lattice: target not u-stable at its prime");
    // denominator budget: ell-distance from m0 at most e each way
    for (const Rat& d : t.divisors_in(base)) {
      int v = valuation_at(d.get_num(), ell) - valuation_at(d.get_den(), ell);
      if (v > e || v < -e)
        throw std::invalid_argument("glue_lattice: target denominators exceed precision");
    }
    Int lke;
    mpz_pow_ui(lke.get_mpz_t(), ell.get_mpz_t(), static_cast<unsigned long>(e));
    m = intersect(sum(t, m.scaled(Rat(lke))), m.scaled(Rat(1, lke)));
  }
  // the result localizes to each target at its prime and to m0 elsewhere
  std::vector<Int> support;
  for (const auto& [ell, c] : targets) support.push_back(ell);
  for (const auto& [ell, c] : targets) {
    RatLattice t(m0.basis * c);
    for (const Rat& d : m.divisors_in(t))
      if (valuation_at(d.get_num(), ell) != valuation_at(d.get_den(), ell))
        throw std::logic_error("glue_lattice: localization does not match its target");
  }
  for (const Rat& d : m.divisors_in(base))
    if (strip_primes(d.get_num(), support) != strip_primes(d.get_den(), support))
      throw std::logic_error("glue_lattice: lattice moved outside the target primes");
  return make_global(m.basis(), ambient_op);
}

GlobalLattice operator_span(const GlobalLattice& m, const IntMatrix& ambient_op, int degree) {
  if (degree < 1) throw std::invalid_argument("operator_span: degree must be positive");
  int n = m.basis.rows();
  RatMatrix amb = to_rat(ambient_op);
  RatMatrix gens(n, n * degree);
  RatMatrix cur = m.basis;
  for (int j = 0; j < degree; ++j) {
    gens.set_block(0, j * n, cur);
    cur = amb * cur;
  }
  return make_global(RatLattice(gens).basis(), ambient_op);
}

Certificate solve(const ProblemInstance& inst) {
  auto subs = reduce_blocks(inst);
  (void)subs;
  if (inst.precision < 1) throw std::invalid_argument("solve: precision must be positive");
  if (inst.p != 0) {
    if (!is_prime(inst.p)) throw std::invalid_argument("solve: p must be 0 or prime");
    for (const Int& ell : inst.S)
      if (ell == inst.p) throw std::invalid_argument("solve: p may not lie in S");
  }
  IntPoly f = inst.min_poly();
  Order o = make_order(f);
  IntMatrix amodel = model_operator(inst);
  int n = inst.n();

  // one conjugator from the reference model to each prescribed local operator
  std::map<Int, PadicMatrix> q;
  for (const Int& ell : inst.S) {
    auto it = inst.locals.find(ell);
    if (it == inst.locals.end())
      throw std::invalid_argument("solve: missing local data at a prime of S");
    const LocalModule& lm = it->second;
    if (lm.context.ell != ell || lm.n != n)
      throw std::invalid_argument("solve: local module does not fit the instance");
    auto res = similarity(amodel, lm.U, o);
    if (res.status == Similarity::Refuted) {
      if (o.is_good_prime(ell))
        throw std::invalid_argument("solve: local data is not realizable: " + res.reason);
      // at a bad prime a refutation only rules out the free reference model,
      // not every global realization; degrade to an explicit non-answer
      throw EngineUnknown("solve: local module at ell = " + ell.get_str() +
                          " is not free over the order (bad prime): " + res.reason);
    }
    if (res.status == Similarity::Unknown) {
      // retry with a larger search budget before giving up
      auto p = intertwiner_search(lm.context, amodel, lm.U.lift(), 8000);
      if (!p)
        throw EngineUnknown("solve: no conjugator found at ell = " + lm.context.ell.get_str() +
                            " (bad prime, search exhausted): " + res.reason);
      res = SimilarityResult{Similarity::Verified, *p, ""};
    }
    q.emplace(ell, *res.conjugator);
  }

  // glue the localizations prescribed by the conjugators, then saturate
  std::map<Int, RatMatrix> targets;
  for (const auto& [ell, p] : q) targets.emplace(ell, to_rat(p.inverse().lift()));
  GlobalLattice m0 = make_global(to_rat(IntMatrix::identity(n)), amodel);
  GlobalLattice m = glue_lattice(m0, amodel, targets, inst.precision);
  m = operator_span(m, amodel, f.degree());
  if (!is_integral(m.operator_on_basis))
    throw std::logic_error("solve: span did not produce an integral operator");

  Certificate cert{to_int(m.operator_on_basis), {}, inst.precision, m.basis};
  for (const auto& [ell, p] : q)
    cert.conjugators.emplace(ell, p * reduce_rat_mod(p.ctx(), m.basis));

  auto check = verify_certificate(inst, cert);
  if (!check.ok) throw std::logic_error("solve: self-verification failed: " + check.reason);
  return cert;
}

VerifyResult verify_certificate(const ProblemInstance& inst, const Certificate& cert) {
  try {
    int n = inst.n();
    if (cert.A.rows() != n || cert.A.cols() != n) return {false, "operator has wrong size"};
    if (charpoly(cert.A) != inst.char_poly())
      return {false, "characteristic polynomial does not match the instance"};
    for (const Int& ell : inst.S) {
      auto pit = cert.conjugators.find(ell);
      if (pit == cert.conjugators.end())
        return {false, "missing conjugator at ell = " + ell.get_str()};
      auto lit = inst.locals.find(ell);
      if (lit == inst.locals.end()) return {false, "instance lacks local data at a prime of S"};
      int prec = std::min({cert.precision, pit->second.ctx().precision,
                           lit->second.context.precision});
      PadicContext ctx(ell, prec);
      PadicMatrix p(ctx, pit->second.lift());
      if (!p.is_unimodular())
        return {false, "conjugator not unimodular at ell = " + ell.get_str()};
      PadicMatrix a(ctx, cert.A), u(ctx, lit->second.U.lift());
      if (!(p * a == u * p)) return {false, "conjugacy fails at ell = " + ell.get_str()};
    }
    // the lattice may differ from Z^n only at S and p
    std::vector<Int> allowed = inst.S;
    if (inst.p != 0) allowed.push_back(inst.p);
    RatLattice lat(cert.basis);
    for (const Rat& d : lat.divisors_in(RatLattice::standard(n)))
      if (strip_primes(d.get_num(), allowed) != strip_primes(d.get_den(), allowed))
        return {false, "lattice index has support outside S and p"};
  } catch (const std::exception& e) {
    return {false, std::string("verification error: ") + e.what()};
  }
  return {true, ""};
}

}  // namespace latcert
