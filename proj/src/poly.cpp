#include "latcert/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace latcert {

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& k) const {
  std::vector<Int> r(c_);
  for (auto& v : r) v *= k;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<Int> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
  return IntPoly(std::move(r));
}

Int IntPoly::eval(const Int& x) const {
  Int v(0);
  for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& a = coeff(i);
    if (a == 0) continue;
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Int mag = abs(a);
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) {
      if (mag != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

RatPoly to_rat(const IntPoly& f) {
  RatPoly r;
  r.reserve(f.coeffs().size());
  for (const Int& a : f.coeffs()) r.emplace_back(a);
  return r;
}

void rp_normalize(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int rp_degree(const RatPoly& f) { return static_cast<int>(f.size()) - 1; }

RatPoly rp_rem(RatPoly f, const RatPoly& g) {
  rp_normalize(f);
  int dg = rp_degree(g);
  if (dg < 0) throw std::invalid_argument("rp_rem: division by zero polynomial");
  while (rp_degree(f) >= dg) {
    Rat q = f.back() / g.back();
    int shift = rp_degree(f) - dg;
    for (int i = 0; i <= dg; ++i) f[i + shift] -= q * g[i];
    f.pop_back();
    rp_normalize(f);
  }
  return f;
}

static Rat rat_pow(Rat x, int e) {
  Rat r(1);
  for (; e > 0; e >>= 1, x *= x)
    if (e & 1) r *= x;
  return r;
}

Rat resultant(const IntPoly& fi, const IntPoly& gi) {
  RatPoly f = to_rat(fi), g = to_rat(gi);
  rp_normalize(f);
  rp_normalize(g);
  if (f.empty() || g.empty()) return Rat(0);
  Rat res(1);
  while (true) {
    int df = rp_degree(f), dg = rp_degree(g);
    if (dg == 0) return res * rat_pow(g.back(), df);
    RatPoly r = rp_rem(f, g);
    int dr = rp_degree(r);
    if (dr < 0) return Rat(0);
    // Res(f,g) = (-1)^{df dg} lc(g)^{df-dr} Res(g,r)
    res *= rat_pow(g.back(), df - dr);
    if ((df & 1) && (dg & 1)) res = -res;
    f = std::move(g);
    g = std::move(r);
  }
}

Int poly_disc(const IntPoly& f) {
  if (!f.is_monic()) throw std::invalid_argument("poly_disc: polynomial must be monic");
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("poly_disc: degree must be >= 1");
  if (d == 1) return Int(1);
  Rat r = resultant(f, f.derivative());
  if ((Int(d) * (d - 1) / 2) % 2 != 0) r = -r;
  if (r.get_den() != 1) throw std::logic_error("poly_disc: non-integral discriminant");
  return r.get_num();
}

bool is_squarefree(const IntPoly& f) {
  if (f.degree() < 1) return true;
  return resultant(f, f.derivative()) != 0;
}

}  // namespace latcert
