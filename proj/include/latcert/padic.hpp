#pragma once

#include <optional>
#include <vector>

#include "latcert/matrix.hpp"
#include "latcert/poly.hpp"

namespace latcert {

/// Work modulo ell^N: absolute-precision model of Z_ell.
struct PadicContext {
  Int ell;
  int precision;  // N >= 1
  Int modulus;    // ell^N, cached

  PadicContext(Int ell_, int precision_);
  bool operator==(const PadicContext& o) const {
    return ell == o.ell && precision == o.precision;
  }

  Int reduce(const Int& x) const {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    return r;
  }
  // valuation of a residue class; values >= precision are reported as precision
  int valuation(const Int& x) const;
  Int unit_inverse(const Int& x) const;  // x must be a unit mod ell
  Int pow_ell(int k) const;              // ell^k, 0 <= k <= precision
};

bool is_prime(const Int& n);

/// Square matrix of residues mod ell^N.
class PadicMatrix {
 public:
  PadicMatrix(PadicContext ctx, int n) : ctx_(std::move(ctx)), m_(n, n) {}
  PadicMatrix(PadicContext ctx, const IntMatrix& m);
  static PadicMatrix identity(const PadicContext& ctx, int n);

  const PadicContext& ctx() const { return ctx_; }
  int size() const { return m_.rows(); }
  const Int& operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, const Int& v) { m_(i, j) = ctx_.reduce(v); }
  const IntMatrix& lift() const { return m_; }  // entries in [0, ell^N)

  bool operator==(const PadicMatrix& o) const { return ctx_ == o.ctx_ && m_ == o.m_; }

  PadicMatrix operator*(const PadicMatrix& o) const;
  PadicMatrix operator+(const PadicMatrix& o) const;
  PadicMatrix operator-(const PadicMatrix& o) const;

  // exact valuation of det when < N, otherwise N ("≥ N")
  int det_valuation() const;
  bool is_unimodular() const { return det_valuation() == 0; }

  // inverse mod ell^N; requires det_valuation() == 0
  PadicMatrix inverse() const;

  IntPoly charpoly_mod() const;  // charpoly of the lift, reduced mod ell^N

 private:
  PadicContext ctx_;
  IntMatrix m_;
};

PadicMatrix eval_poly_mod(const std::vector<Int>& f_low_to_high, const PadicMatrix& m);
PadicMatrix reduce_mod(const PadicContext& ctx, const IntMatrix& m);

struct PadicPivot {
  int row;
  int col;
  int val;  // pivot is ell^val
};

/// Column echelon form mod ell^N: E = A * V with V unimodular, pivots are
/// powers of ell, entries in a pivot row vanish in the columns after the
/// pivot column. Pivot rows increase left to right.
struct PadicHnfResult {
  IntMatrix E;  // n x m residues
  IntMatrix V;  // m x m, unimodular mod ell^N
  std::vector<PadicPivot> pivots;
};

PadicHnfResult padic_hnf(const PadicContext& ctx, const IntMatrix& a);

inline PadicHnfResult padic_hnf(const PadicMatrix& a) { return padic_hnf(a.ctx(), a.lift()); }

// Generators of {x : A x = 0 mod ell^N}, as columns.
IntMatrix padic_kernel(const PadicContext& ctx, const IntMatrix& a);

}  // namespace latcert
