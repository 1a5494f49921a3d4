#pragma once

#include <gmpxx.h>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror {

using Rat = mpq_class;

// Canonical a/b; mpq_class(a, b) alone leaves the fraction unreduced.
inline Rat rat(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

// Element of Q(zeta) with zeta^4 = -1, stored in the basis 1, zeta, zeta^2, zeta^3.
class QZ {
 public:
  QZ() = default;
  QZ(long v) { c_[0] = v; }
  QZ(const Rat& v) { c_[0] = v; }
  static QZ zeta_pow(int k, const Rat& coeff = 1);
  static QZ i() { return zeta_pow(2); }
  static QZ sqrt2() { return zeta_pow(1) - zeta_pow(3); }

  const Rat& operator[](int k) const { return c_[k]; }
  Rat& operator[](int k) { return c_[k]; }

  bool is_zero() const;
  bool is_rational() const;  // no zeta component
  QZ inverse() const;
  QZ conj_zeta() const;  // zeta -> -zeta
  QZ conj_i() const;     // zeta -> zeta^3 (i -> -i)
  QZ pow(int e) const;

  QZ& operator+=(const QZ& o);
  QZ& operator-=(const QZ& o);
  QZ& operator*=(const QZ& o);
  QZ& operator*=(const Rat& r);
  friend QZ operator+(QZ a, const QZ& b) { return a += b; }
  friend QZ operator-(QZ a, const QZ& b) { return a -= b; }
  friend QZ operator*(QZ a, const QZ& b) { return a *= b; }
  friend QZ operator*(QZ a, const Rat& b) { return a *= b; }
  QZ operator-() const;
  friend bool operator==(const QZ& a, const QZ& b);
  friend bool operator!=(const QZ& a, const QZ& b) { return !(a == b); }
  friend bool operator<(const QZ& a, const QZ& b);

 private:
  std::array<Rat, 4> c_{};
};

// Element of K = Q(zeta)(w): a rational function in w. Stored as
// w^lo * num(w) / den(w) with num(0) != 0, den monic, den(0) != 0 and
// gcd(num, den) = 1. An empty den means 1, an empty num means zero.
class NF {
 public:
  NF() = default;
  NF(long v);
  NF(const Rat& v);
  NF(const QZ& v);
  static NF w_pow(int k, const QZ& coeff = QZ(1));
  static NF s_pow(int k, const QZ& coeff = QZ(1)) { return w_pow(2 * k, coeff); }
  static NF zeta_pow(int k) { return NF(QZ::zeta_pow(k)); }
  static NF i() { return NF(QZ::i()); }
  static NF sqrt2() { return NF(QZ::sqrt2()); }
  static NF from_parts(int lo, std::vector<QZ> num, std::vector<QZ> den);

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return den_.empty() && num_.size() == 1; }
  bool is_polynomial_in_w() const { return den_.empty(); }
  bool is_rational_in_s() const;
  bool is_zeta_free() const;

  int lo() const { return lo_; }
  const std::vector<QZ>& num() const { return num_; }
  const std::vector<QZ>& den() const { return den_; }
  // Coefficient of w^k when the element is a Laurent polynomial in w.
  QZ w_coeff(int k) const;

  NF inverse() const;
  NF pow(int e) const;
  NF conj_i() const;  // i -> -i on the zeta coefficients
  // s -> -s, realized as w -> i w.
  NF flip_s() const;

  NF& operator+=(const NF& o);
  NF& operator-=(const NF& o);
  NF& operator*=(const NF& o);
  NF& operator/=(const NF& o) { return *this *= o.inverse(); }
  friend NF operator+(NF a, const NF& b) { return a += b; }
  friend NF operator-(NF a, const NF& b) { return a -= b; }
  friend NF operator*(NF a, const NF& b) { return a *= b; }
  friend NF operator/(NF a, const NF& b) { return a /= b; }
  NF operator-() const;
  friend bool operator==(const NF& a, const NF& b);
  friend bool operator!=(const NF& a, const NF& b) { return !(a == b); }

  std::string str() const;
  static NF parse(const std::string& text);

 private:
  void normalize();
  int lo_ = 0;
  std::vector<QZ> num_;
  std::vector<QZ> den_;
};

std::string rat_str(const Rat& r);
Rat factorial(int n);
Rat binomial(int n, int k);
Rat double_factorial(int n);  // (2k-1)!! style; (-1)!! = 1, (-3)!! = -1

}  // namespace mirror
