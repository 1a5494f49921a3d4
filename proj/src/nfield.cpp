#include "mirror/nfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mirror {

// ---- QZ ----

QZ QZ::zeta_pow(int k, const Rat& coeff) {
  QZ r;
  int m = ((k % 8) + 8) % 8;
  Rat c = coeff;
  if (m >= 4) {
    m -= 4;
    c = -c;
  }
  r.c_[m] = c;
  return r;
}

bool QZ::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool QZ::is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

QZ& QZ::operator+=(const QZ& o) {
  for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

QZ& QZ::operator-=(const QZ& o) {
  for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

QZ& QZ::operator*=(const QZ& o) {
  if (o.is_rational()) return *this *= o.c_[0];
  if (is_rational()) {
    Rat a = c_[0];
    *this = o;
    return *this *= a;
  }
  std::array<Rat, 4> r{};
  for (int a = 0; a < 4; ++a) {
    if (sgn(c_[a]) == 0) continue;
    for (int b = 0; b < 4; ++b) {
      if (sgn(o.c_[b]) == 0) continue;
      int k = a + b;
      if (k < 4)
        r[k] += c_[a] * o.c_[b];
      else
        r[k - 4] -= c_[a] * o.c_[b];
    }
  }
  c_ = r;
  return *this;
}

QZ& QZ::operator*=(const Rat& r) {
  for (auto& x : c_) x *= r;
  return *this;
}

QZ QZ::operator-() const {
  QZ r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

bool operator==(const QZ& a, const QZ& b) {
  for (int k = 0; k < 4; ++k)
    if (a.c_[k] != b.c_[k]) return false;
  return true;
}

bool operator<(const QZ& a, const QZ& b) {
  for (int k = 0; k < 4; ++k) {
    if (a.c_[k] < b.c_[k]) return true;
    if (b.c_[k] < a.c_[k]) return false;
  }
  return false;
}

QZ QZ::conj_zeta() const {
  QZ r = *this;
  r.c_[1] = -r.c_[1];
  r.c_[3] = -r.c_[3];
  return r;
}

QZ QZ::conj_i() const {
  // zeta -> zeta^3: zeta^2 -> zeta^6 = -zeta^2, zeta^3 -> zeta^9 = zeta.
  QZ r;
  r.c_[0] = c_[0];
  r.c_[3] = c_[1];
  r.c_[2] = -c_[2];
  r.c_[1] = c_[3];
  return r;
}

QZ QZ::inverse() const {
  if (is_zero()) throw std::domain_error("QZ: division by zero");
  if (is_rational()) return QZ(Rat(1 / c_[0]));
  // a * a(-zeta) lies in Q(i); multiply by the Q(i)-conjugate to reach Q.
  QZ b = conj_zeta();
  QZ ab = *this * b;
  QZ c = ab.conj_i();
  QZ n = ab * c;
  Rat inv = 1 / n.c_[0];
  return b * c * inv;
}

QZ QZ::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  QZ r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// ---- polynomial helpers over QZ (index = degree) ----

namespace {

using Poly = std::vector<QZ>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly shift(const Poly& a, int k) {
  if (a.empty()) return a;
  Poly r(k, QZ());
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

void pdivmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, QZ());
  QZ lead_inv = b.back().inverse();
  while (!r.empty() && r.size() >= b.size()) {
    size_t k = r.size() - b.size();
    QZ f = r.back() * lead_inv;
    q[k] = f;
    for (size_t j = 0; j < b.size(); ++j) r[k + j] -= f * b[j];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

Poly monic(const Poly& a) {
  QZ inv = a.back().inverse();
  Poly r = a;
  for (auto& x : r) x *= inv;
  return r;
}

Poly pgcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly q, r;
    pdivmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return monic(a);
}

bool is_one_poly(const Poly& p) { return p.size() == 1 && p[0] == QZ(1); }

}  // namespace

// ---- NF ----

NF::NF(long v) : NF(QZ(v)) {}
NF::NF(const Rat& v) : NF(QZ(v)) {}
NF::NF(const QZ& v) {
  if (!v.is_zero()) num_.push_back(v);
}

NF NF::w_pow(int k, const QZ& coeff) {
  NF r(coeff);
  if (!r.is_zero()) r.lo_ = k;
  return r;
}

NF NF::from_parts(int lo, std::vector<QZ> num, std::vector<QZ> den) {
  NF r;
  r.lo_ = lo;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  if (r.den_.empty()) r.den_ = {};
  r.normalize();
  return r;
}

void NF::normalize() {
  trim(num_);
  trim(den_);
  if (num_.empty()) {
    lo_ = 0;
    den_.clear();
    return;
  }
  size_t z = 0;
  while (num_[z].is_zero()) ++z;
  if (z) {
    num_.erase(num_.begin(), num_.begin() + z);
    lo_ += static_cast<int>(z);
  }
  if (den_.empty()) return;
  if (den_.size() == 1) {
    QZ inv = den_[0].inverse();
    for (auto& x : num_) x *= inv;
    den_.clear();
    return;
  }
  size_t dz = 0;
  while (den_[dz].is_zero()) ++dz;
  if (dz) {
    den_.erase(den_.begin(), den_.begin() + dz);
    lo_ -= static_cast<int>(dz);
  }
  Poly g = pgcd(num_, den_);
  if (g.size() > 1) {
    Poly q, r;
    pdivmod(num_, g, q, r);
    num_ = q;
    pdivmod(den_, g, q, r);
    den_ = q;
  }
  QZ lead_inv = den_.back().inverse();
  for (auto& x : num_) x *= lead_inv;
  for (auto& x : den_) x *= lead_inv;
  if (is_one_poly(den_)) den_.clear();
}

bool NF::is_one() const { return lo_ == 0 && den_.empty() && num_.size() == 1 && num_[0] == QZ(1); }

bool NF::is_zeta_free() const {
  for (const auto& x : num_)
    if (!x.is_rational()) return false;
  for (const auto& x : den_)
    if (!x.is_rational()) return false;
  return true;
}

bool NF::is_rational_in_s() const {
  if (!is_zeta_free()) return false;
  for (size_t k = 0; k < num_.size(); ++k)
    if (!num_[k].is_zero() && ((lo_ + static_cast<int>(k)) % 2 != 0)) return false;
  for (size_t k = 0; k < den_.size(); ++k)
    if (!den_[k].is_zero() && (k % 2 != 0)) return false;
  return true;
}

QZ NF::w_coeff(int k) const {
  if (!den_.empty()) throw std::logic_error("NF::w_coeff: not a Laurent polynomial in w");
  int idx = k - lo_;
  if (idx < 0 || idx >= static_cast<int>(num_.size())) return QZ();
  return num_[idx];
}

NF NF::inverse() const {
  if (is_zero()) throw std::domain_error("NF: division by zero");
  NF r;
  if (num_.size() == 1) {
    QZ inv = num_[0].inverse();
    r.lo_ = -lo_;
    if (den_.empty()) {
      r.num_ = {inv};
    } else {
      r.num_ = den_;
      for (auto& x : r.num_) x *= inv;
    }
    return r;
  }
  r.lo_ = -lo_;
  r.num_ = den_.empty() ? Poly{QZ(1)} : den_;
  r.den_ = num_;
  r.normalize();
  return r;
}

NF NF::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  NF r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

NF NF::conj_i() const {
  NF r = *this;
  for (auto& x : r.num_) x = x.conj_i();
  for (auto& x : r.den_) x = x.conj_i();
  r.normalize();
  return r;
}

NF NF::flip_s() const {
  // w -> i w multiplies the w^k coefficient by i^k.
  NF r = *this;
  for (size_t k = 0; k < r.num_.size(); ++k) r.num_[k] *= QZ::zeta_pow(2 * (lo_ + static_cast<int>(k)));
  for (size_t k = 0; k < r.den_.size(); ++k) r.den_[k] *= QZ::zeta_pow(2 * static_cast<int>(k));
  r.normalize();
  return r;
}

NF& NF::operator+=(const NF& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int l = std::min(lo_, o.lo_);
  if (den_.empty() && o.den_.empty()) {
    int hi = std::max(lo_ + static_cast<int>(num_.size()), o.lo_ + static_cast<int>(o.num_.size()));
    Poly r(hi - l);
    for (size_t k = 0; k < num_.size(); ++k) r[lo_ - l + k] += num_[k];
    for (size_t k = 0; k < o.num_.size(); ++k) r[o.lo_ - l + k] += o.num_[k];
    lo_ = l;
    num_ = std::move(r);
    normalize();
    return *this;
  }
  Poly a = shift(num_, lo_ - l), b = shift(o.num_, o.lo_ - l);
  Poly da = den_.empty() ? Poly{QZ(1)} : den_;
  Poly db = o.den_.empty() ? Poly{QZ(1)} : o.den_;
  if (da == db) {
    num_ = padd(a, b);
    den_ = da;
  } else {
    num_ = padd(pmul(a, db), pmul(b, da));
    den_ = pmul(da, db);
  }
  lo_ = l;
  normalize();
  return *this;
}

NF NF::operator-() const {
  NF r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

NF& NF::operator-=(const NF& o) { return *this += -o; }

NF& NF::operator*=(const NF& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = NF();
  lo_ += o.lo_;
  if (num_.size() == 1 && o.num_.size() == 1 && den_.empty() && o.den_.empty()) {
    num_[0] *= o.num_[0];
    return *this;
  }
  num_ = pmul(num_, o.num_);
  if (!o.den_.empty()) den_ = den_.empty() ? o.den_ : pmul(den_, o.den_);
  normalize();
  return *this;
}

bool operator==(const NF& a, const NF& b) {
  return a.lo_ == b.lo_ && a.num_ == b.num_ && a.den_ == b.den_;
}

// ---- text form ----
//
// value := poly | "(" poly ")/(" poly ")"
// poly  := "0" | ["-"] term { (" + " | " - ") term }
// term  := rational ["*zeta^" k] ["*w^" j]      k in 1..3, j a nonzero integer
// Terms are ordered by w-exponent, then zeta-exponent. The denominator is monic.

std::string rat_str(const Rat& r) { return r.get_str(); }

namespace {

struct Mono {
  int wexp;
  int zexp;
  Rat c;
};

std::string poly_str(int lo, const Poly& p) {
  std::vector<Mono> terms;
  for (size_t k = 0; k < p.size(); ++k)
    for (int z = 0; z < 4; ++z)
      if (sgn(p[k][z]) != 0) terms.push_back({lo + static_cast<int>(k), z, p[k][z]});
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    Rat a = t.c;
    if (first) {
      if (sgn(a) < 0) os << "-";
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
    }
    first = false;
    os << rat_str(abs(a));
    if (t.zexp) os << "*zeta^" << t.zexp;
    if (t.wexp) os << "*w^" << t.wexp;
  }
  return os.str();
}

struct Parser {
  const std::string& s;
  size_t pos = 0;
  explicit Parser(const std::string& text) : s(text) {}
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("NF::parse: " + what + " at offset " + std::to_string(pos) + " in '" + s + "'");
  }
  void skip() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip();
    size_t n = std::char_traits<char>::length(w);
    if (s.compare(pos, n, w) == 0) {
      pos += n;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }
  Rat rational() {
    skip();
    size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    if (start == pos) fail("expected rational");
    Rat r(s.substr(start, pos - start));
    r.canonicalize();
    return r;
  }
  // Returns (lo, poly).
  std::pair<int, Poly> poly() {
    std::vector<Mono> terms;
    bool neg = eat('-');
    while (true) {
      Mono m{0, 0, rational()};
      if (neg) m.c = -m.c;
      while (eat('*')) {
        if (eat_word("zeta^")) {
          m.zexp = static_cast<int>(integer());
        } else if (eat_word("w^")) {
          m.wexp = static_cast<int>(integer());
        } else {
          fail("expected zeta^ or w^");
        }
      }
      terms.push_back(m);
      skip();
      if (eat('+')) {
        neg = false;
      } else if (eat('-')) {
        neg = true;
      } else {
        break;
      }
    }
    int lo = terms.front().wexp, hi = lo;
    for (const auto& t : terms) {
      lo = std::min(lo, t.wexp);
      hi = std::max(hi, t.wexp);
    }
    Poly p(hi - lo + 1);
    for (const auto& t : terms) p[t.wexp - lo] += QZ::zeta_pow(t.zexp, t.c);
    return {lo, p};
  }
};

}  // namespace

std::string NF::str() const {
  if (den_.empty()) return poly_str(lo_, num_);
  return "(" + poly_str(lo_, num_) + ")/(" + poly_str(0, den_) + ")";
}

NF NF::parse(const std::string& text) {
  Parser ps(text);
  NF r;
  if (ps.eat('(')) {
    auto [lo, num] = ps.poly();
    if (!ps.eat(')') || !ps.eat('/') || !ps.eat('(')) ps.fail("malformed quotient");
    auto [dlo, den] = ps.poly();
    if (!ps.eat(')')) ps.fail("expected ')'");
    r = from_parts(lo - dlo, num, den);
  } else {
    auto [lo, num] = ps.poly();
    r = from_parts(lo, num, {});
  }
  ps.skip();
  if (ps.pos != text.size()) ps.fail("trailing input");
  return r;
}

Rat factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

Rat binomial(int n, int k) {
  if (k < 0) return 0;
  if (n >= 0 && k > n) return 0;
  Rat r = 1;
  for (int j = 0; j < k; ++j) r = r * (n - j) / (j + 1);
  return r;
}

Rat double_factorial(int n) {
  if (n % 2 == 0) throw std::domain_error("double_factorial expects an odd argument");
  Rat r = 1;
  if (n >= 1) {
    for (int k = n; k > 1; k -= 2) r *= k;
  } else {
    for (int k = n + 2; k <= -1; k += 2) r /= k;
  }
  return r;
}

}  // namespace mirror
