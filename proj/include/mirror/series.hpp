#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mirror/nfield.hpp"

namespace mirror {

// Absolute precision value meaning "no truncation".
inline constexpr int kExact = std::numeric_limits<int>::max() / 4;

inline int prec_add(int a, int b) { return (a >= kExact || b >= kExact) ? kExact : std::min(a + b, kExact); }

// Truncated Laurent series sum_k c_k t^k + O(t^prec) with coefficients in C.
// C must provide is_zero(), ring operations, unary minus and inverse().
template <class C>
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(const C& c, int prec = kExact) : prec_(prec) {
    if (prec > 0) c_.push_back(c);
    normalize();
  }
  static Laurent monomial(const C& c, int k, int prec = kExact) {
    Laurent r;
    r.prec_ = prec;
    if (k < prec) {
      r.lo_ = k;
      r.c_.push_back(c);
    }
    r.normalize();
    return r;
  }
  static Laurent zero(int prec = kExact) {
    Laurent r;
    r.prec_ = prec;
    return r;
  }
  static Laurent from_coeffs(int lo, std::vector<C> c, int prec = kExact) {
    Laurent r;
    r.lo_ = lo;
    r.c_ = std::move(c);
    r.prec_ = prec;
    r.normalize();
    return r;
  }

  int prec() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_zero() const { return c_.empty(); }
  // Lowest exponent with a nonzero coefficient; prec() for the zero series.
  int val() const { return c_.empty() ? prec_ : lo_; }
  // One past the highest stored exponent.
  int end() const { return c_.empty() ? val() : lo_ + static_cast<int>(c_.size()); }

  C coeff(int k) const {
    if (k >= prec_) throw std::out_of_range("Laurent::coeff: exponent beyond truncation");
    if (c_.empty() || k < lo_ || k >= end()) return C();
    return c_[k - lo_];
  }
  // Coefficient without the truncation check; zero beyond the stored range.
  C at(int k) const {
    if (c_.empty() || k < lo_ || k >= end()) return C();
    return c_[k - lo_];
  }

  Laurent truncated(int prec) const {
    Laurent r = *this;
    r.prec_ = std::min(prec_, prec);
    r.normalize();
    return r;
  }
  Laurent shifted(int k) const {
    Laurent r = *this;
    r.lo_ += k;
    r.prec_ = prec_add(prec_, k);
    return r;
  }
  template <class F>
  Laurent map_coeffs(F f) const {
    Laurent r = *this;
    for (auto& x : r.c_) x = f(x);
    r.normalize();
    return r;
  }
  template <class F>
  Laurent map_indexed(F f) const {
    Laurent r = *this;
    for (size_t j = 0; j < r.c_.size(); ++j) r.c_[j] = f(r.lo_ + static_cast<int>(j), r.c_[j]);
    r.normalize();
    return r;
  }

  Laurent& operator+=(const Laurent& o) {
    int p = std::min(prec_, o.prec_);
    if (o.c_.empty()) {
      prec_ = p;
      normalize();
      return *this;
    }
    if (c_.empty()) {
      *this = o;
      prec_ = p;
      normalize();
      return *this;
    }
    int lo = std::min(lo_, o.lo_);
    int hi = std::min(std::max(end(), o.end()), p);
    if (hi <= lo) {
      *this = zero(p);
      return *this;
    }
    std::vector<C> r(hi - lo);
    for (int k = lo_; k < std::min(end(), hi); ++k) r[k - lo] += c_[k - lo_];
    for (int k = o.lo_; k < std::min(o.end(), hi); ++k) r[k - lo] += o.c_[k - o.lo_];
    lo_ = lo;
    c_ = std::move(r);
    prec_ = p;
    normalize();
    return *this;
  }
  Laurent operator-() const {
    Laurent r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Laurent& operator-=(const Laurent& o) { return *this += -o; }
  Laurent& operator*=(const C& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    normalize();
    return *this;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    int p = std::min(prec_add(a.prec_, b.val()), prec_add(b.prec_, a.val()));
    Laurent r = zero(p);
    if (a.c_.empty() || b.c_.empty()) return r;
    int lo = a.lo_ + b.lo_;
    int hi = std::min(a.end() + b.end() - 1, p);
    if (hi <= lo) return r;
    r.lo_ = lo;
    r.c_.assign(hi - lo, C());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      int ki = a.lo_ + static_cast<int>(i);
      for (size_t j = 0; j < b.c_.size(); ++j) {
        int k = ki + b.lo_ + static_cast<int>(j);
        if (k >= hi) break;
        if (b.c_[j].is_zero()) continue;
        r.c_[k - lo] += a.c_[i] * b.c_[j];
      }
    }
    r.normalize();
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const C& s) { return a *= s; }
  friend Laurent operator*(const C& s, Laurent a) { return a *= s; }

  // Multiplicative inverse. The relative precision is preserved; an exact
  // input is expanded up to absolute exponent `cap`.
  Laurent inverse(int cap = kExact) const {
    if (c_.empty()) throw std::domain_error("Laurent::inverse: zero or unresolved series");
    int v = lo_;
    int rel = is_exact() ? prec_add(cap, v) : prec_ - v;
    if (rel >= kExact) {
      if (c_.size() == 1) return monomial(c_[0].inverse(), -v);
      throw std::domain_error("Laurent::inverse: exact non-monomial needs a cap");
    }
    C inv0 = c_[0].inverse();
    std::vector<C> r(std::max(rel, 0));
    for (int n = 0; n < rel; ++n) {
      C acc = (n == 0) ? C(1) : C();
      for (int k = 1; k <= n && k < static_cast<int>(c_.size()); ++k) acc -= c_[k] * r[n - k];
      r[n] = acc * inv0;
    }
    return from_coeffs(-v, std::move(r), -v + rel);
  }

  // Multiplication by a series that is exact up to the precision of *this.
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.prec_ == b.prec_ && a.val() == b.val() && a.c_ == b.c_;
  }
  // Equality of the coefficients both sides know about.
  bool agrees_with(const Laurent& o) const {
    int p = std::min(prec_, o.prec_);
    Laurent d = truncated(p) - o.truncated(p);
    return d.is_zero();
  }

  const std::vector<C>& raw() const { return c_; }
  int raw_lo() const { return lo_; }

 private:
  void normalize() {
    if (!is_exact()) {
      int keep = prec_ - lo_;
      if (keep <= 0)
        c_.clear();
      else if (static_cast<int>(c_.size()) > keep)
        c_.resize(keep);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    size_t z = 0;
    while (z < c_.size() && c_[z].is_zero()) ++z;
    if (z) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(z));
      lo_ += static_cast<int>(z);
    }
    if (c_.empty()) lo_ = 0;
  }
  int lo_ = 0;
  int prec_ = kExact;
  std::vector<C> c_;
};

// exp of a series with positive valuation, expanded to absolute exponent `cap`.
template <class C>
Laurent<C> exp_series(const Laurent<C>& a, int cap) {
  if (a.val() <= 0 && !a.is_zero()) throw std::domain_error("exp_series: argument needs positive valuation");
  int p = std::min(a.prec(), cap);
  Laurent<C> one(C(1), p), term = one, sum = one;
  for (int n = 1; !term.is_zero(); ++n) {
    term = (term * a).truncated(p);
    term *= C(rat(1, n));
    sum += term;
  }
  return sum;
}

// ---- series in p = q^{1/2} with field coefficients ----

using QS = Laurent<NF>;

struct Context {
  int p_max = 12;  // p-order kept (exponents <= p_max)
  int m_max = 6;   // winding cutoff
  int z_max = 6;   // z-order kept
  int pprec() const { return p_max + 1; }
};

QS qs_const(const NF& c, int prec);
QS qs_q(int prec);  // q = p^2
// Square root of a series with constant term 1 (the +1 branch).
QS qs_sqrt(const QS& a, int cap = kExact);
// q d/dq = (p/2) d/dp.
QS qs_q_dq(const QS& a);
QS qs_flip_s(const QS& a);
QS qs_conj_i(const QS& a);
bool qs_is_rational_in_s(const QS& a);
bool qs_is_zeta_free(const QS& a);
// Whether every nonzero coefficient sits at a p-exponent congruent to parity mod 2.
bool qs_has_parity(const QS& a, int parity);
std::string qs_str(const QS& a);

// ---- Laurent polynomials in winding variables with QS coefficients ----

class XLaurent {
 public:
  using Key = std::vector<int>;
  explicit XLaurent(int nvars = 1) : n_(nvars) {}
  int nvars() const { return n_; }
  const std::map<Key, QS>& terms() const { return t_; }
  QS coeff(const Key& k) const;
  bool has(const Key& k) const { return t_.count(k) != 0; }
  void set(const Key& k, const QS& v);
  void add(const Key& k, const QS& v);
  XLaurent& operator+=(const XLaurent& o);
  XLaurent& operator-=(const XLaurent& o);
  XLaurent operator-() const;
  XLaurent scaled(const NF& c) const;
  XLaurent truncated(int prec) const;
  XLaurent flip_s() const;
  XLaurent symmetrized() const;  // average over permutations of the variables
  template <class F>
  XLaurent map(F f) const {
    XLaurent r(n_);
    for (const auto& [k, v] : t_) r.set(k, f(k, v));
    return r;
  }
  // Coefficientwise agreement on the common key set and common precision.
  bool agrees_with(const XLaurent& o, std::vector<Key>* bad = nullptr) const;
  bool is_rational_in_s() const;
  // p-parity: coefficient of prod X_i^{mu_i} lives on p^{k} with k = sum|mu_i| mod 2.
  bool obeys_parity() const;

 private:
  int n_;
  std::map<Key, QS> t_;
};

// ---- Laurent series in Y around Y = 0 ----
//
// Complete for Y-exponents <= ymax; terms with very negative exponents carry
// enough p-valuation that every p-order sees finitely many of them.
class YSeries {
 public:
  YSeries() = default;
  YSeries(int ymax, int pprec) : ymax_(ymax), pprec_(pprec) {}
  static YSeries monomial(const QS& c, int k, int ymax, int pprec);
  int ymax() const { return ymax_; }
  int pprec() const { return pprec_; }
  const std::map<int, QS>& terms() const { return t_; }
  QS coeff(int k) const;
  void add(int k, const QS& v);
  YSeries& operator+=(const YSeries& o);
  YSeries operator*(const YSeries& o) const;
  YSeries scaled(const QS& c) const;
  int min_exponent() const;
  // Coefficient of Y^{-1}, exact through p-exponent porder.
  QS residue_at_origin(int porder) const;

 private:
  std::map<int, QS> t_;
  int ymax_ = kExact;
  int pprec_ = kExact;
};

// ---- serialization ----

std::string qs_to_json(const QS& a);
QS qs_from_json(const std::string& text);
std::string xlaurent_to_json(const XLaurent& a, const std::string& variable = "X");
XLaurent xlaurent_from_json(const std::string& text);
// CSV rows: exponents..., p-exponent, coefficient string.
std::string xlaurent_to_csv(const XLaurent& a);

}  // namespace mirror
