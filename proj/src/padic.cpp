#include "latcert/padic.hpp"

#include <stdexcept>

namespace latcert {

bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

PadicContext::PadicContext(Int ell_, int precision_) : ell(std::move(ell_)), precision(precision_) {
  if (precision < 1) throw std::invalid_argument("PadicContext: precision must be >= 1");
  if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("PadicContext: ell must be prime");
  mpz_pow_ui(modulus.get_mpz_t(), ell.get_mpz_t(), precision);
}

int PadicContext::valuation(const Int& x) const {
  Int r = reduce(x);
  if (r == 0) return precision;
  int v = 0;
  while (mpz_divisible_p(r.get_mpz_t(), ell.get_mpz_t())) {
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), ell.get_mpz_t());
    ++v;
  }
  return v;
}

Int PadicContext::unit_inverse(const Int& x) const {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()))
    throw std::invalid_argument("unit_inverse: not a unit");
  return r;
}

Int PadicContext::pow_ell(int k) const {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), ell.get_mpz_t(), k);
  return r;
}

PadicMatrix::PadicMatrix(PadicContext ctx, const IntMatrix& m) : ctx_(std::move(ctx)), m_(m) {
  if (!m_.is_square()) throw std::invalid_argument("PadicMatrix: square matrix required");
  for (int i = 0; i < m_.rows(); ++i)
    for (int j = 0; j < m_.cols(); ++j) m_(i, j) = ctx_.reduce(m_(i, j));
}

PadicMatrix PadicMatrix::identity(const PadicContext& ctx, int n) {
  return PadicMatrix(ctx, IntMatrix::identity(n));
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
  return PadicMatrix(ctx_, m_ * o.m_);
}
PadicMatrix PadicMatrix::operator+(const PadicMatrix& o) const {
  return PadicMatrix(ctx_, m_ + o.m_);
}
PadicMatrix PadicMatrix::operator-(const PadicMatrix& o) const {
  return PadicMatrix(ctx_, m_ - o.m_);
}

int PadicMatrix::det_valuation() const {
  // exact integer determinant of the lift, then valuation of its residue
  return ctx_.valuation(det(m_));
}

PadicMatrix PadicMatrix::inverse() const {
  int n = size();
  IntMatrix a = m_;
  IntMatrix inv = IntMatrix::identity(n);
  const Int& q = ctx_.modulus;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (ctx_.valuation(a(i, k)) == 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("PadicMatrix::inverse: matrix not unimodular");
    a.swap_rows(k, piv);
    inv.swap_rows(k, piv);
    Int pinv = ctx_.unit_inverse(a(k, k));
    for (int j = 0; j < n; ++j) {
      a(k, j) = ctx_.reduce(a(k, j) * pinv);
      inv(k, j) = ctx_.reduce(inv(k, j) * pinv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Int f = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) = ctx_.reduce(a(i, j) - f * a(k, j));
        inv(i, j) = ctx_.reduce(inv(i, j) - f * inv(k, j));
      }
    }
  }
  (void)q;
  return PadicMatrix(ctx_, inv);
}

IntPoly PadicMatrix::charpoly_mod() const {
  IntPoly c = charpoly(m_);
  std::vector<Int> r(c.coeffs());
  for (auto& v : r) v = ctx_.reduce(v);
  return IntPoly(std::move(r));
}

PadicMatrix eval_poly_mod(const std::vector<Int>& f, const PadicMatrix& m) {
  int n = m.size();
  const PadicContext& ctx = m.ctx();
  IntMatrix r(n, n);
  for (size_t idx = f.size(); idx-- > 0;) {
    r = r * m.lift();
    for (int k = 0; k < n; ++k) r(k, k) += f[idx];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = ctx.reduce(r(i, j));
  }
  return PadicMatrix(ctx, r);
}

PadicMatrix reduce_mod(const PadicContext& ctx, const IntMatrix& m) {
  return PadicMatrix(ctx, m);
}

PadicHnfResult padic_hnf(const PadicContext& ctx, const IntMatrix& a_in) {
  int n = a_in.rows(), m = a_in.cols();
  IntMatrix e(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) e(i, j) = ctx.reduce(a_in(i, j));
  IntMatrix v = IntMatrix::identity(m);
  std::vector<PadicPivot> pivots;
  int cur = 0;  // next pivot column slot
  auto reduce_col = [&](IntMatrix& x, int col) {
    for (int i = 0; i < x.rows(); ++i) x(i, col) = ctx.reduce(x(i, col));
  };
  for (int row = 0; row < n && cur < m; ++row) {
    // pivot: minimal valuation among active columns at this row
    int best = -1, bestval = ctx.precision;
    for (int j = cur; j < m; ++j) {
      int val = ctx.valuation(e(row, j));
      if (val < bestval) {
        bestval = val;
        best = j;
      }
    }
    if (best < 0 || bestval >= ctx.precision) continue;
    e.swap_cols(cur, best);
    v.swap_cols(cur, best);
    // scale pivot column by a unit so the pivot becomes exactly ell^val
    Int pw = ctx.pow_ell(bestval);
    Int unit = e(row, cur) / pw;
    Int uinv = ctx.unit_inverse(unit);
    for (int i = 0; i < n; ++i) e(i, cur) = ctx.reduce(e(i, cur) * uinv);
    for (int i = 0; i < m; ++i) v(i, cur) = ctx.reduce(v(i, cur) * uinv);
    // clear this row in the remaining active columns (valuation >= pivot's)
    for (int j = cur + 1; j < m; ++j) {
      if (e(row, j) == 0) continue;
      Int f = e(row, j) / pw;
      for (int i = 0; i < n; ++i) e(i, j) = ctx.reduce(e(i, j) - f * e(i, cur));
      for (int i = 0; i < m; ++i) v(i, j) = ctx.reduce(v(i, j) - f * v(i, cur));
    }
    // reduce earlier pivot columns at this row modulo ell^val
    for (int j = 0; j < cur; ++j) {
      Int f = e(row, j) / pw;  // floor division; residues are nonnegative
      if (f == 0) continue;
      for (int i = 0; i < n; ++i) e(i, j) = ctx.reduce(e(i, j) - f * e(i, cur));
      for (int i = 0; i < m; ++i) v(i, j) = ctx.reduce(v(i, j) - f * v(i, cur));
    }
    pivots.push_back({row, cur, bestval});
    ++cur;
    (void)reduce_col;
  }
  return {std::move(e), std::move(v), std::move(pivots)};
}

IntMatrix padic_kernel(const PadicContext& ctx, const IntMatrix& a_in) {
  // diagonalize with row ops (kernel-preserving) and tracked column ops
  int n = a_in.rows(), m = a_in.cols();
  IntMatrix d(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) d(i, j) = ctx.reduce(a_in(i, j));
  IntMatrix v = IntMatrix::identity(m);
  int steps = std::min(n, m);
  std::vector<int> vals;
  int t = 0;
  for (; t < steps; ++t) {
    int pi = -1, pj = -1, bv = ctx.precision;
    for (int i = t; i < n; ++i)
      for (int j = t; j < m; ++j) {
        int val = ctx.valuation(d(i, j));
        if (val < bv) {
          bv = val;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0 || bv >= ctx.precision) break;
    d.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);
    Int pw = ctx.pow_ell(bv);
    Int unit = d(t, t) / pw;
    Int uinv = ctx.unit_inverse(unit);
    for (int j = 0; j < m; ++j) d(t, j) = ctx.reduce(d(t, j) * uinv);
    for (int i = t + 1; i < n; ++i) {
      if (d(i, t) == 0) continue;
      Int f = d(i, t) / pw;
      for (int j = 0; j < m; ++j) d(i, j) = ctx.reduce(d(i, j) - f * d(t, j));
    }
    for (int j = t + 1; j < m; ++j) {
      if (d(t, j) == 0) continue;
      Int f = d(t, j) / pw;
      for (int i = 0; i < n; ++i) d(i, j) = ctx.reduce(d(i, j) - f * d(i, t));
      for (int i = 0; i < m; ++i) v(i, j) = ctx.reduce(v(i, j) - f * v(i, t));
    }
    vals.push_back(bv);
  }
  // kernel generators: ell^{N-v_i} * v_i for pivots, plus all free columns
  std::vector<int> gens_cols;
  IntMatrix k(m, m - t + static_cast<int>(std::count_if(vals.begin(), vals.end(),
                                                        [](int v) { return v > 0; })));
  int out = 0;
  for (int i = 0; i < t; ++i) {
    if (vals[i] == 0) continue;
    Int s = ctx.pow_ell(ctx.precision - vals[i]);
    for (int r = 0; r < m; ++r) k(r, out) = ctx.reduce(v(r, i) * s);
    ++out;
  }
  for (int j = t; j < m; ++j) {
    for (int r = 0; r < m; ++r) k(r, out) = v(r, j);
    ++out;
  }
  return k;
}

}  // namespace latcert
