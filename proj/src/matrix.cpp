#include "latcert/matrix.hpp"

namespace latcert {

IntMatrix companion_matrix(const IntPoly& f) {
  if (!f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("companion_matrix: monic polynomial of degree >= 1 required");
  int d = f.degree();
  IntMatrix c(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -f.coeff(i);
  return c;
}

IntMatrix block_companion(const IntPoly& f, int h) {
  IntMatrix c = companion_matrix(f);
  int d = c.rows();
  IntMatrix b(d * h, d * h);
  for (int k = 0; k < h; ++k) b.set_block(k * d, k * d, c);
  return b;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

std::pair<Int, IntMatrix> clear_denominators(const RatMatrix& m) {
  Int d(1);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
  IntMatrix b(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Rat v = m(i, j) * d;
      b(i, j) = v.get_num();
    }
  return {d, b};
}

// Bareiss fraction-free elimination; all divisions are exact.
Int det(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det: square matrix required");
  int n = m.rows();
  if (n == 0) return Int(1);
  IntMatrix a = m;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return Int(0);
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Rat det(const RatMatrix& m) {
  auto [d, b] = clear_denominators(m);
  Rat r(det(b));
  Rat dp(1);
  for (int i = 0; i < m.rows(); ++i) dp *= d;
  return r / dp;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: square matrix required");
  int n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("inverse: singular matrix");
    a.swap_rows(k, piv);
    inv.swap_rows(k, piv);
    Rat p = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IntPoly charpoly(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly: square matrix required");
  int n = m.rows();
  if (n == 0) return IntPoly({Int(1)});
  // evaluate det(xI - M) at x = 0..n, then Newton interpolation over Q
  std::vector<Rat> xs, ys;
  for (int t = 0; t <= n; ++t) {
    IntMatrix a = m * Int(-1);
    for (int i = 0; i < n; ++i) a(i, i) += t;
    xs.emplace_back(t);
    ys.emplace_back(det(a));
  }
  // divided differences
  std::vector<Rat> dd = ys;
  for (int level = 1; level <= n; ++level)
    for (int i = n; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  // expand Newton form
  std::vector<Rat> coeff(n + 1, Rat(0));
  std::vector<Rat> basis(n + 1, Rat(0));  // product (x - x_0)...(x - x_{k-1})
  basis[0] = 1;
  int bdeg = 0;
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i <= bdeg; ++i) coeff[i] += dd[k] * basis[i];
    if (k < n) {
      for (int i = bdeg + 1; i >= 1; --i) basis[i] = basis[i - 1] - xs[k] * basis[i];
      basis[0] = -xs[k] * basis[0];
      ++bdeg;
    }
  }
  std::vector<Int> ic(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (coeff[i].get_den() != 1) throw std::logic_error("charpoly: non-integral coefficient");
    ic[i] = coeff[i].get_num();
  }
  return IntPoly(std::move(ic));
}

std::vector<Rat> charpoly(const RatMatrix& m) {
  // charpoly of M from charpoly of D*M: c_k(M) = c_k(DM) / D^{n-k}
  auto [d, b] = clear_denominators(m);
  IntPoly ci = charpoly(b);
  int n = m.rows();
  std::vector<Rat> out(n + 1);
  Rat scale(1);
  for (int k = n; k >= 0; --k) {
    out[k] = Rat(ci.coeff(k)) / scale;
    scale *= d;
  }
  return out;
}

IntMatrix eval_poly(const IntPoly& f, const IntMatrix& m) {
  int n = m.rows();
  IntMatrix r(n, n);
  for (int i = f.degree(); i >= 0; --i) {
    r = r * m;
    for (int k = 0; k < n; ++k) r(k, k) += f.coeff(i);
  }
  return r;
}

HnfResult hnf(const IntMatrix& m) {
  int n = m.rows(), cols = m.cols();
  HnfResult res{m, IntMatrix::identity(cols), 0};
  IntMatrix& h = res.H;
  IntMatrix& u = res.U;
  auto colop = [&](int dst, int src, const Int& p, const Int& q, const Int& r, const Int& s) {
    // (col_dst, col_src) <- (p*col_dst + q*col_src, r*col_src - s*col_dst)
    for (int i = 0; i < n; ++i) {
      Int a = h(i, dst), b = h(i, src);
      h(i, dst) = p * a + q * b;
      h(i, src) = r * b - s * a;
    }
    for (int i = 0; i < cols; ++i) {
      Int a = u(i, dst), b = u(i, src);
      u(i, dst) = p * a + q * b;
      u(i, src) = r * b - s * a;
    }
  };
  int col = cols - 1;
  for (int row = n - 1; row >= 0 && col >= 0; --row) {
    for (int j = col - 1; j >= 0; --j) {
      if (h(row, j) == 0) continue;
      if (h(row, col) == 0) {
        h.swap_cols(j, col);
        u.swap_cols(j, col);
        continue;
      }
      Int a = h(row, col), b = h(row, j), g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      colop(col, j, p, q, a / g, b / g);
    }
    if (h(row, col) != 0) {
      if (h(row, col) < 0) {
        for (int i = 0; i < n; ++i) h(i, col) = -h(i, col);
        for (int i = 0; i < cols; ++i) u(i, col) = -u(i, col);
      }
      const Int piv = h(row, col);
      for (int k = col + 1; k < cols; ++k) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h(row, k).get_mpz_t(), piv.get_mpz_t());
        if (q == 0) continue;
        for (int i = 0; i < n; ++i) h(i, k) -= q * h(i, col);
        for (int i = 0; i < cols; ++i) u(i, k) -= q * u(i, col);
      }
      --col;
    }
  }
  res.rank = cols - 1 - col;
  return res;
}

SnfResult snf(const IntMatrix& m) {
  int n = m.rows(), cols = m.cols();
  SnfResult res{m, IntMatrix::identity(n), IntMatrix::identity(cols)};
  IntMatrix& d = res.D;
  IntMatrix& u = res.U;
  IntMatrix& v = res.V;
  int t = 0;
  int steps = std::min(n, cols);
  while (t < steps) {
    // find nonzero pivot of minimal |value| in the trailing block
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < n; ++i)
      for (int j = t; j < cols; ++j)
        if (d(i, j) != 0) {
          Int a = abs(d(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
    if (pi < 0) break;  // all zero
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);
    bool clean = true;
    for (int i = t + 1; i < n; ++i)
      if (d(i, t) != 0) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        for (int j = 0; j < cols; ++j) d(i, j) -= q * d(t, j);
        for (int j = 0; j < n; ++j) u(i, j) -= q * u(t, j);
        if (d(i, t) != 0) clean = false;
      }
    for (int j = t + 1; j < cols; ++j)
      if (d(t, j) != 0) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        for (int i = 0; i < n; ++i) d(i, j) -= q * d(i, t);
        for (int i = 0; i < cols; ++i) v(i, j) -= q * v(i, t);
        if (d(t, j) != 0) clean = false;
      }
    if (!clean) continue;  // remainders left, repeat with a smaller pivot
    // enforce divisibility: d(t,t) must divide the trailing block
    bool redo = false;
    for (int i = t + 1; i < n && !redo; ++i)
      for (int j = t + 1; j < cols && !redo; ++j)
        if (d(i, j) % d(t, t) != 0) {
          for (int jj = 0; jj < cols; ++jj) d(t, jj) += d(i, jj);
          for (int jj = 0; jj < n; ++jj) u(t, jj) += u(i, jj);
          redo = true;
        }
    if (redo) continue;
    ++t;
  }
  // normalize signs (negate row of U and diagonal together)
  for (int i = 0; i < steps; ++i)
    if (d(i, i) < 0) {
      d(i, i) = -d(i, i);
      for (int j = 0; j < n; ++j) u(i, j) = -u(i, j);
    }
  return res;
}

IntMatrix kernel(const IntMatrix& m) {
  HnfResult r = hnf(m);
  int zero_cols = m.cols() - r.rank;
  IntMatrix k(m.cols(), zero_cols);
  for (int j = 0; j < zero_cols; ++j)
    for (int i = 0; i < m.cols(); ++i) k(i, j) = r.U(i, j);
  return k;
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.is_square()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

}  // namespace latcert
