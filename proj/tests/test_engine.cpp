#include "doctest.h"

#include <random>

#include "latcert/engine.hpp"
#include "oracles.hpp"

using namespace latcert;

static IntPoly P(std::vector<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(v);
}

static RatMatrix rat(std::vector<std::vector<long>> rows) {
  RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

TEST_CASE("rational lattices: sum, intersection, dual") {
  RatLattice a(rat({{2, 0}, {0, 1}}));  // 2Z + Z
  RatLattice b(rat({{1, 0}, {0, 3}}));  // Z + 3Z
  CHECK(sum(a, b) == RatLattice::standard(2));
  CHECK(intersect(a, b) == RatLattice(rat({{2, 0}, {0, 3}})));

  CHECK(a.dual().dual() == a);
  RatMatrix v(2, 1);
  v(0, 0) = Rat(1, 2);
  CHECK(a.dual().contains(v));
  v(0, 0) = 2;
  v(1, 0) = -7;
  CHECK(a.contains(v));
  v(0, 0) = 1;
  CHECK(!a.contains(v));

  auto d = a.divisors_in(RatLattice::standard(2));
  CHECK(d == std::vector<Rat>{Rat(1), Rat(2)});
  CHECK(a.divisors_in(a) == std::vector<Rat>{Rat(1), Rat(1)});
  CHECK(RatLattice::standard(2).scaled(Rat(1, 5)).divisors_in(RatLattice::standard(2)) ==
        std::vector<Rat>{Rat(1, 5), Rat(1, 5)});
}

TEST_CASE("rational lattices: random inclusion and duality identities") {
  std::mt19937_64 rng(515);
  for (int t = 0; t < 30; ++t) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto rnd = [&]() {
      IntMatrix m(n, n);
      do {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m(i, j) = Int(static_cast<long>(rng() % 9) - 4);
      } while (det(m) == 0);
      return RatLattice(m);
    };
    RatLattice l = rnd(), m = rnd();
    RatLattice s = sum(l, m), i = intersect(l, m);
    // i <= l <= s as lattices: divisor chains are integral
    for (const Rat& d : i.divisors_in(l)) CHECK(d.get_den() == 1);
    for (const Rat& d : l.divisors_in(s)) CHECK(d.get_den() == 1);
    // duality exchanges sum and intersection
    CHECK(sum(l.dual(), m.dual()) == i.dual());
    // index multiplicativity: [s:l][l:i] = [s:m][m:i]
    auto idx = [](const std::vector<Rat>& ds) {
      Rat p(1);
      for (const Rat& d : ds) p *= d;
      return p;
    };
    CHECK(idx(l.divisors_in(s)) * idx(i.divisors_in(l)) ==
          idx(m.divisors_in(s)) * idx(i.divisors_in(m)));
  }
}

TEST_CASE("reduce_blocks bookkeeping") {
  ProblemInstance one{1, Int(0), {{1, P({5, 0, 1}), 1}}, {}, {}, 24};
  CHECK(reduce_blocks(one).size() == 1);

  ProblemInstance rep{1, Int(0), {{2, P({-1, 1}), 1}}, {}, {}, 24};
  auto subs = reduce_blocks(rep);
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].repeat == 2);
  CHECK(subs[0].f.degree() == 1);

  ProblemInstance two{2, Int(0), {{1, P({1, 0, 1}), 1}, {1, P({-2, 1}), 2}}, {}, {}, 24};
  auto st = reduce_blocks(two);
  REQUIRE(st.size() == 2);
  CHECK(st[0].f.degree() * st[0].h == 2);
  CHECK(st[1].f.degree() * st[1].h * st[1].repeat == 2);
  CHECK(model_operator(two).rows() == 4);

  ProblemInstance bad{2, Int(0), {{1, P({1, 0, 1}), 1}, {1, P({1, 0, 1}), 1}}, {}, {}, 24};
  CHECK_THROWS(reduce_blocks(bad));  // shared factor
  ProblemInstance short_{2, Int(0), {{1, P({1, 0, 1}), 1}}, {}, {}, 24};
  CHECK_THROWS(reduce_blocks(short_));  // rank 2 != 4
}

TEST_CASE("glue_lattice: trivial, scaling, and the disc -20 ideal class") {
  IntMatrix c = companion_matrix(P({5, 0, 1}));
  GlobalLattice m0 = make_global(to_rat(IntMatrix::identity(2)), c);

  CHECK(glue_lattice(m0, c, {}, 24).basis == m0.basis);

  std::map<Int, RatMatrix> scale{{Int(3), to_rat(IntMatrix::identity(2) * Int(3))}};
  GlobalLattice ms = glue_lattice(m0, c, scale, 24);
  CHECK(RatLattice(ms.basis) == RatLattice::standard(2).scaled(Rat(3)));

  // target: the ideal (3, 1 + sqrt(-5)) with operator [[-1,-2],[3,1]]
  std::map<Int, RatMatrix> ideal{{Int(3), rat({{3, 1}, {0, 1}})}};
  GlobalLattice mi = glue_lattice(m0, c, ideal, 24);
  CHECK(RatLattice(mi.basis) == RatLattice(rat({{3, 1}, {0, 1}})));
  IntMatrix op(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      REQUIRE(mi.operator_on_basis(i, j).get_den() == 1);
      op(i, j) = mi.operator_on_basis(i, j).get_num();
    }
  CHECK(charpoly(op) == P({5, 0, 1}));
  IntMatrix want(2, 2);
  want(0, 0) = -1;
  want(0, 1) = -2;
  want(1, 0) = 3;
  want(1, 1) = 1;
  CHECK(op == want);

  // a target that is not u-stable at its prime is rejected
  std::map<Int, RatMatrix> unstable{{Int(3), rat({{1, 0}, {0, 3}})}};
  CHECK_THROWS(glue_lattice(m0, c, unstable, 24));
}

TEST_CASE("operator_span is idempotent and forces integrality") {
  IntMatrix c = companion_matrix(P({5, 0, 1}));
  GlobalLattice m = make_global(rat({{1, 0}, {0, 3}}), c);  // not u-stable
  GlobalLattice s1 = operator_span(m, c, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(s1.operator_on_basis(i, j).get_den() == 1);
  GlobalLattice s2 = operator_span(s1, c, 2);
  CHECK(RatLattice(s1.basis) == RatLattice(s2.basis));
}

TEST_CASE("solve: empty S gives the bare companion certificate") {
  ProblemInstance inst{1, Int(0), {{1, P({5, 0, 1}), 1}}, {}, {}, 24};
  Certificate cert = solve(inst);
  CHECK(cert.A == companion_matrix(P({5, 0, 1})));
  CHECK(cert.conjugators.empty());
  CHECK(verify_certificate(inst, cert).ok);
}

TEST_CASE("solve: x^2+5 with prescribed operator at 3") {
  IntPoly f = P({5, 0, 1});
  PadicContext c3(Int(3), 24);
  IntMatrix u(2, 2);
  u(0, 0) = -1;
  u(0, 1) = -2;
  u(1, 0) = 3;
  u(1, 1) = 1;
  ProblemInstance inst{1, Int(0), {{1, f, 1}}, {Int(3)},
                       {{Int(3), make_local_module(c3, u, f)}}, 24};
  Certificate cert = solve(inst);
  CHECK(charpoly(cert.A) == f);
  REQUIRE(cert.conjugators.count(Int(3)) == 1);
  const PadicMatrix& p = cert.conjugators.at(Int(3));
  CHECK(p.is_unimodular());
  CHECK(p * PadicMatrix(c3, cert.A) == PadicMatrix(c3, u) * p);
  CHECK(verify_certificate(inst, cert).ok);

  // tampering is caught
  Certificate bad = cert;
  bad.A(0, 0) += 1;
  CHECK(!verify_certificate(inst, bad).ok);
  Certificate scaled = cert;
  scaled.conjugators.erase(Int(3));
  scaled.conjugators.emplace(Int(3), PadicMatrix(c3, p.lift() * Int(3)));
  CHECK(!verify_certificate(inst, scaled).ok);
}

TEST_CASE("solve: unimodular-conjugated data at a good prime recovers the companion") {
  IntPoly f = P({1, 0, 1});
  PadicContext c5(Int(5), 24);
  std::mt19937_64 rng(2);
  IntMatrix p0 = oracles::random_unimodular(rng, 2);
  PadicMatrix pp(c5, p0);
  IntMatrix u = (pp * PadicMatrix(c5, companion_matrix(f)) * pp.inverse()).lift();
  ProblemInstance inst{1, Int(0), {{1, f, 1}}, {Int(5)},
                       {{Int(5), make_local_module(c5, u, f)}}, 24};
  Certificate cert = solve(inst);
  CHECK(cert.A == companion_matrix(f));  // disc -4 is a 5-adic unit
  CHECK(verify_certificate(inst, cert).ok);
}

TEST_CASE("solve: bad prime in S handled by the intertwiner search") {
  IntPoly f = P({5, 0, 1});
  PadicContext c2(Int(2), 24);
  std::mt19937_64 rng(6);
  IntMatrix p0 = oracles::random_unimodular(rng, 2);
  PadicMatrix pp(c2, p0);
  IntMatrix u = (pp * PadicMatrix(c2, companion_matrix(f)) * pp.inverse()).lift();
  ProblemInstance inst{1, Int(0), {{1, f, 1}}, {Int(2)},
                       {{Int(2), make_local_module(c2, u, f)}}, 24};
  Certificate cert = solve(inst);
  CHECK(verify_certificate(inst, cert).ok);
}

TEST_CASE("solve roundtrip on random instances, including hidden lattices") {
  std::mt19937_64 rng(90210);
  long pool[] = {2, 3, 5, 7, 11};
  int done = 0;
  while (done < 30) {
    int d = 1 + static_cast<int>(rng() % 3);
    IntPoly f = oracles::random_monic(rng, d);
    if (!is_squarefree(f)) continue;
    Order o = make_order(f);
    int h = 1 + static_cast<int>(rng() % 2);
    int n = h * d;
    if (n % 2 != 0) {
      h *= 2;
      n *= 2;
    }
    ProblemInstance inst{n / 2, Int(0), {{1, f, h}}, {}, {}, 12 + static_cast<int>(rng() % 13)};
    IntMatrix amodel = model_operator(inst);

    // hidden u-stable lattice with integral operator
    IntMatrix seed(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) seed(i, j) = Int(static_cast<long>(rng() % 7) - 3);
    } while (det(seed) == 0);
    GlobalLattice hidden = operator_span(make_global(to_rat(seed), amodel), amodel, d);
    IntMatrix ahidden(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ahidden(i, j) = hidden.operator_on_basis(i, j).get_num();

    int nprimes = 1 + static_cast<int>(rng() % 2);
    bool bad_included = false;
    for (int k = 0; k < nprimes; ++k) {
      Int ell(pool[rng() % 5]);
      if (inst.locals.count(ell)) continue;
      if (!o.is_good_prime(ell)) bad_included = true;
      PadicContext ctx(ell, inst.precision);
      IntMatrix p0 = oracles::random_unimodular(rng, n);
      PadicMatrix pp(ctx, p0);
      IntMatrix u = (pp * PadicMatrix(ctx, ahidden) * pp.inverse()).lift();
      inst.S.push_back(ell);
      inst.locals.emplace(ell, make_local_module(ctx, u, f));
    }
    try {
      Certificate cert = solve(inst);
      CHECK(verify_certificate(inst, cert).ok);
    } catch (const EngineUnknown&) {
      CHECK(bad_included);  // the only admissible non-answer
    }
    ++done;
  }
}

TEST_CASE("block recombination: direct sums of certificates verify") {
  IntPoly f1 = P({1, 0, 1}), f2 = P({-2, 1});
  PadicContext c7(Int(7), 16);
  std::mt19937_64 rng(31337);
  IntMatrix full = direct_sum(block_companion(f1, 1), block_companion(f2, 2));
  IntMatrix p0 = oracles::random_unimodular(rng, 4);
  PadicMatrix pp(c7, p0);
  IntMatrix u = (pp * PadicMatrix(c7, full) * pp.inverse()).lift();
  ProblemInstance inst{2, Int(0), {{1, f1, 1}, {1, f2, 2}}, {Int(7)},
                       {{Int(7), make_local_module(c7, u, f1 * f2)}}, 16};
  Certificate cert = solve(inst);
  CHECK(cert.A == full);  // direct sum of the per-block companions
  CHECK(verify_certificate(inst, cert).ok);
}

TEST_CASE("p > 0: excluded characteristic respected") {
  IntPoly f = P({5, 0, 1});
  ProblemInstance inst{1, Int(3), {{1, f, 1}}, {}, {}, 24};
  Certificate cert = solve(inst);
  CHECK(verify_certificate(inst, cert).ok);
  ProblemInstance clash{1, Int(3), {{1, f, 1}}, {Int(3)},
                        {{Int(3), make_local_module(PadicContext(Int(3), 24),
                                                    companion_matrix(f), f)}}, 24};
  CHECK_THROWS(solve(clash));
}
