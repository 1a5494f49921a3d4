#include "mirror/bmodel.hpp"

#include <sstream>
#include <stdexcept>

namespace mirror {

namespace {

QS qc(const NF& c, int P) { return QS(c, P); }

ZS zs_deriv(const ZS& a) {
  ZS r = ZS::zero(a.prec() >= kExact ? kExact : a.prec() - 1);
  for (int k = a.val(); k < a.end(); ++k)
    if (k != 0) r += ZS::monomial(a.at(k) * NF(k), k - 1, r.prec());
  return r;
}

// Square root of 1 + O(t).
ZS zs_sqrt1(const ZS& a, int prec, int pprec) {
  std::vector<QS> b(prec, QS::zero(pprec));
  for (int n = 0; n < prec; ++n) {
    if (n == 0) {
      b[0] = qc(NF(1), pprec);
      continue;
    }
    QS acc = a.at(n);
    for (int k = 1; k < n; ++k) acc -= b[k] * b[n - k];
    b[n] = acc * NF(rat(1, 2));
  }
  return ZS::from_coeffs(0, std::move(b), prec);
}

NF i_pow(int k) { return k >= 0 ? NF::i().pow(k) : NF::i().inverse().pow(-k); }

void erase_zero(std::map<int, QS>& m, int k) {
  auto it = m.find(k);
  if (it != m.end() && it->second.is_zero()) m.erase(it);
}

}  // namespace

BranchData branch_points(const Context& ctx, int extra_p, int zorder) {
  BranchData bd;
  int P = ctx.pprec() + extra_p;
  bd.pprec = P;
  bd.zorder = zorder;
  Context c2 = ctx;
  c2.p_max = P - 1;
  CanonicalData cd = canonical_data(c2);
  bd.sigma = cd.sigma;
  QS s = qc(NF::s_pow(1), P);
  for (int a = 0; a < 2; ++a) {
    bd.delta[a] = cd.delta[a];
    bd.sqrt_delta[a] = cd.sqrt_delta[a];
  }
  bd.P[0] = (s - s * bd.sigma) * NF(rat(1, 2));
  bd.P[1] = (s + s * bd.sigma) * NF(rat(1, 2));

  int N = zorder;
  for (int a = 0; a < 2; ++a) {
    BranchPoint& b = bd.bp[a];
    b.P = bd.P[a];
    const QS& other = bd.P[1 - a];
    b.c.assign(N + 2, QS::zero(P));
    for (int k = 2; k <= N + 1; ++k) {
      QS ck = qc(NF::s_pow(1, QZ(rat(1, k))), P) - other;
      b.c[k] = (k % 2 == 0) ? ck : -ck;
    }
    b.kappa = bd.sqrt_delta[a] * (NF::sqrt2() * NF(rat(-1, 2)));
    // zeta / kappa = u S(u), S = sqrt(1 + sum_{k >= 3} (c_k / c_2) u^{k-2})
    QS inv_c2 = b.c[2].inverse();
    ZS t(qc(NF(1), P), N);
    for (int k = 3; k <= N + 1; ++k) t += ZS::monomial(b.c[k] * inv_c2, k - 2, N);
    ZS sinv = zs_sqrt1(t, N, P).inverse();
    // Lagrange inversion: u = sum_n t^n (1/n) [u^{n-1}] S^{-n}, t = zeta / kappa.
    QS inv_kappa = b.kappa.inverse();
    b.u = ZS::zero(N + 1);
    ZS pw(qc(NF(1), P), N);
    QS kp = qc(NF(1), P);
    for (int n = 1; n <= N; ++n) {
      pw = (pw * sinv).truncated(N);
      kp = kp * inv_kappa;
      b.u += ZS::monomial(pw.at(n - 1) * NF(rat(1, n)) * kp, n, N + 1);
    }
    b.Y = ZS(b.P, N + 1) + b.u * b.P;
    b.dY = zs_deriv(b.u) * b.P;
    ZS lg = ZS::zero(N + 1), up(qc(NF(1), P), N + 1);
    for (int j = 1; j <= N; ++j) {
      up = up * b.u;
      lg += up * qc(NF(j % 2 == 1 ? rat(1, j) : rat(-1, j)), kExact);
    }
    b.h.assign(N + 1, QS::zero(P));
    for (int k = 1; k <= N; ++k) b.h[k] = -lg.at(k);
  }
  return bd;
}

ZS x_minus_branch_value(const BranchData& bd, int alpha) {
  const BranchPoint& b = bd.bp[alpha - 1];
  int N = bd.zorder;
  ZS r = ZS::zero(N + 1), up = b.u;
  for (int k = 2; k <= N; ++k) {
    up = up * b.u;
    r += up * b.c[k];
  }
  return r;
}

QS sqrt_m2_over_delta(const BranchData& bd, int alpha) {
  return bd.bp[alpha - 1].kappa.inverse() * NF::i();
}

NF sqrt_m2() { return NF::i() * NF::sqrt2(); }

// ---- RatY ----

RatY::RatY(const BranchData& bd) : P_{bd.P[0], bd.P[1]}, pprec_(bd.pprec) {}

RatY RatY::constant(const BranchData& bd, const QS& c) {
  RatY r(bd);
  r.add_poly(0, c);
  return r;
}

void RatY::add_poly(int k, const QS& c) {
  if (k < 0) throw std::invalid_argument("RatY: negative polynomial exponent");
  if (c.is_zero()) return;
  auto [it, fresh] = poly_.emplace(k, c);
  if (!fresh) it->second += c;
  erase_zero(poly_, k);
}

void RatY::add_pole(int alpha, int k, const QS& c) {
  if (k == 0) return add_poly(0, c);
  if (k < 0) throw std::invalid_argument("RatY: pole order must be positive");
  if (c.is_zero()) return;
  auto& m = pole_[alpha - 1];
  auto [it, fresh] = m.emplace(k, c);
  if (!fresh) it->second += c;
  erase_zero(m, k);
}

RatY& RatY::operator+=(const RatY& o) {
  if (pprec_ == 0) {
    P_[0] = o.P_[0];
    P_[1] = o.P_[1];
    pprec_ = o.pprec_;
  }
  for (const auto& [k, c] : o.poly_) add_poly(k, c);
  for (int a = 0; a < 2; ++a)
    for (const auto& [k, c] : o.pole_[a]) add_pole(a + 1, k, c);
  return *this;
}

RatY& RatY::operator-=(const RatY& o) { return *this += -o; }

RatY RatY::operator-() const { return scaled(qc(NF(-1), kExact)); }

RatY RatY::scaled(const QS& c) const {
  RatY r = *this;
  for (auto& [k, v] : r.poly_) v = v * c;
  for (auto& m : r.pole_)
    for (auto& [k, v] : m) v = v * c;
  return r;
}

RatY RatY::mul_y() const {
  RatY r;
  r.P_[0] = P_[0];
  r.P_[1] = P_[1];
  r.pprec_ = pprec_;
  for (const auto& [k, c] : poly_) r.add_poly(k + 1, c);
  for (int a = 0; a < 2; ++a)
    for (const auto& [k, c] : pole_[a]) {
      r.add_pole(a + 1, k - 1, c);
      r.add_pole(a + 1, k, c * P_[a]);
    }
  return r;
}

RatY RatY::mul_lin(int alpha) const {
  RatY r = mul_y();
  r -= scaled(P_[alpha - 1]);
  return r;
}

RatY RatY::div_lin(int alpha) const {
  int b = alpha - 1;
  const QS& pb = P_[b];
  RatY r;
  r.P_[0] = P_[0];
  r.P_[1] = P_[1];
  r.pprec_ = pprec_;
  if (!poly_.empty()) {
    int n = poly_.rbegin()->first;
    std::vector<QS> a(n + 1, QS::zero(kExact));
    for (const auto& [k, c] : poly_) a[k] = c;
    QS carry = QS::zero(kExact);
    for (int k = n; k >= 1; --k) {
      carry = a[k] + carry * pb;
      r.add_poly(k - 1, carry);
    }
    r.add_pole(alpha, 1, a[0] + carry * pb);
  }
  for (const auto& [k, c] : pole_[b]) r.add_pole(alpha, k + 1, c);
  int o = 1 - b;
  QS inv = (P_[o] - pb).inverse();
  for (const auto& [k, c] : pole_[o]) {
    // 1/((Y-a)^k (Y-b)) = sum_j (-1)^{k-j} inv^{k-j+1} (Y-a)^{-j} + (-1)^k inv^k/(Y-b)
    QS ip = c;
    for (int j = k; j >= 1; --j) {
      ip = ip * inv;
      r.add_pole(o + 1, j, (k - j) % 2 == 0 ? ip : -ip);
    }
    r.add_pole(alpha, 1, k % 2 == 0 ? ip : -ip);
  }
  return r;
}

RatY RatY::deriv() const {
  RatY r;
  r.P_[0] = P_[0];
  r.P_[1] = P_[1];
  r.pprec_ = pprec_;
  for (const auto& [k, c] : poly_)
    if (k > 0) r.add_poly(k - 1, c * NF(k));
  for (int a = 0; a < 2; ++a)
    for (const auto& [k, c] : pole_[a]) r.add_pole(a + 1, k + 1, c * NF(-k));
  return r;
}

RatY RatY::minus_d_dx() const { return -deriv().mul_y().mul_y().div_lin(1).div_lin(2); }

bool RatY::agrees_with(const RatY& o) const {
  RatY d = *this;
  d -= o;
  auto small = [](const std::map<int, QS>& m) {
    for (const auto& [k, c] : m)
      if (!c.is_zero()) return false;
    return true;
  };
  return small(d.poly_) && small(d.pole_[0]) && small(d.pole_[1]);
}

YSeries RatY::at_zero(int ymax, int pprec) const {
  YSeries r(ymax, pprec);
  for (const auto& [k, c] : poly_) r.add(k, c);
  // (Y - P2)^{-k} = (-P2)^{-k} sum_j binom(j+k-1, k-1) (Y/P2)^j
  QS inv2 = P_[1].inverse();
  for (const auto& [k, c] : pole_[1]) {
    QS lead = c;
    for (int j = 0; j < k; ++j) lead = lead * inv2 * NF(-1);
    QS term = lead;
    for (int j = 0; j <= ymax; ++j) {
      r.add(j, term * NF(binomial(j + k - 1, k - 1)));
      term = term * inv2;
    }
  }
  // (Y - P1)^{-k} = sum_j binom(j+k-1, k-1) P1^j Y^{-k-j}
  for (const auto& [k, c] : pole_[0]) {
    QS term = c;
    for (int j = 0; !term.is_zero() && term.val() < pprec; ++j) {
      r.add(-k - j, term * NF(binomial(j + k - 1, k - 1)));
      term = term * P_[0];
    }
  }
  return r;
}

ZS RatY::at_branch(const BranchData& bd, int alpha) const {
  const BranchPoint& b = bd.bp[alpha - 1];
  int N = bd.zorder + 1;
  ZS r = ZS::zero(N);
  if (!poly_.empty()) {
    ZS yp(qc(NF(1), kExact), kExact);
    for (int k = 0; k <= poly_.rbegin()->first; ++k) {
      auto it = poly_.find(k);
      if (it != poly_.end()) r += yp * it->second;
      yp = (yp * b.Y).truncated(N);
    }
  }
  for (int a = 1; a <= 2; ++a) {
    const auto& m = pole_[a - 1];
    if (m.empty()) continue;
    ZS lin = a == alpha ? b.u * b.P : ZS(b.P - bd.P[a - 1], N) + b.u * b.P;
    ZS inv = lin.inverse();
    ZS ip = inv;
    for (int k = 1; k <= m.rbegin()->first; ++k) {
      auto it = m.find(k);
      if (it != m.end()) r += ip * it->second;
      ip = ip * inv;
    }
  }
  return r;
}

ZS RatY::form_at_branch(const BranchData& bd, int alpha) const { return at_branch(bd, alpha) * bd.bp[alpha - 1].dY; }

std::string RatY::str() const {
  std::ostringstream os;
  for (const auto& [k, c] : poly_) os << "[Y^" << k << "] " << qs_str(c) << "\n";
  for (int a = 0; a < 2; ++a)
    for (const auto& [k, c] : pole_[a]) os << "[(Y-P" << a + 1 << ")^-" << k << "] " << qs_str(c) << "\n";
  return os.str();
}

}  // namespace mirror

// ---- forms ----

namespace mirror {

RatY dxi(const BranchData& bd, int alpha, int d) {
  const BranchPoint& b = bd.bp[alpha - 1];
  if (2 * d + 1 > bd.zorder) throw std::out_of_range("dxi: zeta-order too small");
  NF pref = NF(double_factorial(2 * d - 1) * Rat(2 * d + 1) / Rat(mpz_class(1) << d)) * i_pow(-(2 * d + 1));
  RatY r(bd);
  ZS up(qc(NF(1), kExact), kExact);
  QS pm = qc(NF(1), kExact);
  for (int m = 1; m <= 2 * d + 1; ++m) {
    up = up * b.u;
    pm = pm * b.P;
    r.add_pole(alpha, m + 1, up.coeff(2 * d + 1) * pm * pref);
  }
  return r;
}

RatY e_form(const BranchData& bd, int alpha, int m) {
  const BranchPoint& b = bd.bp[alpha - 1];
  if (m + 1 > bd.zorder) throw std::out_of_range("e_form: zeta-order too small");
  RatY r(bd);
  ZS up(qc(NF(1), kExact), kExact);
  QS pj = qc(NF(1), kExact);
  for (int j = 1; j <= m + 1; ++j) {
    up = up * b.u;
    pj = pj * b.P;
    r.add_pole(alpha, j + 1, up.coeff(m + 1) * pj * NF(m + 1));
  }
  return r;
}

RatY xi0(const BranchData& bd, int alpha) {
  RatY r(bd);
  r.add_pole(alpha, 1, sqrt_m2_over_delta(bd, alpha) * bd.P[alpha - 1]);
  return r;
}

RatY w_form(const BranchData& bd, int alpha, int k) {
  RatY f = xi0(bd, alpha);
  for (int j = 0; j < k; ++j) f = f.minus_d_dx();
  return f.deriv();
}

std::array<RatY, 3> eta_forms(const BranchData& bd) {
  QS c = sqrt_m2_over_delta(bd, 2);
  RatY a = xi0(bd, 2);
  a -= xi0(bd, 1).scaled(qc(NF::i(), kExact));
  RatY y(bd);
  y.add_poly(1, qc(NF(1), kExact));
  RatY b = y.div_lin(1).div_lin(2).scaled(c * bd.delta[1]);
  // (-1/s) sqrt(-2 Delta^2) (dY/(dX/X)) / Y with dY/(dX/X) = -s Y^2/((Y-P1)(Y-P2))
  RatY yy(bd);
  yy.add_poly(1, qc(NF::s_pow(1) * NF(-1), kExact));
  RatY third = yy.div_lin(1).div_lin(2).scaled(c * bd.delta[1] * qc(NF::s_pow(-1) * NF(-1), kExact));
  return {a, b, third};
}

std::array<RatY, 3> chi_forms(const BranchData& bd) {
  QS c = sqrt_m2_over_delta(bd, 2);
  RatY a = xi0(bd, 2);
  a += xi0(bd, 1).scaled(qc(NF::i(), kExact));
  QS q = qs_q(bd.pprec);
  RatY num(bd);
  num.add_poly(1, qc(NF::s_pow(1), kExact));
  num.add_poly(0, q * NF(2));
  RatY b = num.div_lin(1).div_lin(2).scaled(c);
  // -c (dY/(dX/X)) (1/Y + 2q/(s Y^2)) = c (s Y + 2q)/((Y-P1)(Y-P2))
  RatY t(bd);
  t.add_poly(1, qc(NF::s_pow(1) * NF(-1), kExact));
  t.add_poly(0, q * NF(-2));
  RatY third = t.div_lin(1).div_lin(2).scaled(-c);
  return {a, b, third};
}

// ---- Bergman kernel ----

namespace {

// Bivariate series truncated at total degree D.
struct Biv {
  int D;
  std::vector<QS> c;
  Biv(int D_, int P) : D(D_), c(static_cast<size_t>((D_ + 1) * (D_ + 2) / 2), QS::zero(P)) {}
  static size_t idx(int i, int j) { return static_cast<size_t>((i + j) * (i + j + 1) / 2 + j); }
  QS& at(int i, int j) { return c[idx(i, j)]; }
  const QS& at(int i, int j) const { return c[idx(i, j)]; }
  Biv operator*(const Biv& o) const {
    int d = std::min(D, o.D);
    Biv r(d, kExact);
    for (int n1 = 0; n1 <= d; ++n1)
      for (int j1 = 0; j1 <= n1; ++j1) {
        const QS& a = at(n1 - j1, j1);
        if (a.is_zero()) continue;
        for (int n2 = 0; n1 + n2 <= d; ++n2)
          for (int j2 = 0; j2 <= n2; ++j2) {
            const QS& b = o.at(n2 - j2, j2);
            if (b.is_zero()) continue;
            r.at(n1 - j1 + n2 - j2, j1 + j2) += a * b;
          }
      }
    return r;
  }
};

// Q with F = (z1 - z2) Q; requires F to vanish on the diagonal.
Biv divide_diagonal(const Biv& f) {
  for (int n = 0; n <= f.D; ++n) {
    QS sum = QS::zero(kExact);
    for (int j = 0; j <= n; ++j) sum += f.at(n - j, j);
    if (!sum.is_zero()) throw std::logic_error("Bergman: numerator does not vanish on the diagonal");
  }
  Biv q(f.D - 1, kExact);
  for (int n = 0; n <= q.D; ++n)
    for (int j = 0; j <= n; ++j) {
      int i = n - j;
      QS acc = QS::zero(kExact);
      for (int t = 0; t <= j; ++t) acc += f.at(i + 1 + t, j - t);
      q.at(i, j) = acc;
    }
  return q;
}

// Regular part of du1 du2/(u1 - u2)^2 - dz1 dz2/(z1 - z2)^2 at one branch point.
Biv bergman_diagonal(const BranchPoint& b, int D) {
  int Dg = D + 2;
  Biv g(Dg, kExact), num(Dg, kExact), u1(Dg, kExact), u2(Dg, kExact);
  for (int k = 1; k <= Dg + 1; ++k) {
    QS uk = b.u.coeff(k);
    for (int i = 0; i <= k - 1; ++i) g.at(i, k - 1 - i) += uk;
  }
  for (int k = 0; k <= Dg; ++k) {
    QS d = b.u.coeff(k + 1) * NF(k + 1);
    u1.at(k, 0) = d;
    u2.at(0, k) = d;
  }
  num = u1 * u2;
  QS g0inv = g.at(0, 0).inverse();
  Biv t = g;
  for (auto& x : t.c) x = x * g0inv;
  t.at(0, 0) = QS::zero(kExact);
  Biv ginv(Dg, kExact), term(Dg, kExact);
  term.at(0, 0) = qc(NF(1), kExact);
  for (int n = 0; n <= Dg; ++n) {
    for (size_t j = 0; j < ginv.c.size(); ++j) ginv.c[j] += term.c[j];
    term = term * t;
    for (auto& x : term.c) x = -x;
  }
  for (auto& x : ginv.c) x = x * g0inv;
  Biv f = num * (ginv * ginv);
  f.at(0, 0) -= qc(NF(1), kExact);
  return divide_diagonal(divide_diagonal(f));
}

}  // namespace

BergmanTable::BergmanTable(const BranchData& bd, int degree) : degree_(degree) {
  if (degree + 3 > bd.zorder) throw std::out_of_range("BergmanTable: zeta-order too small");
  for (int a = 1; a <= 2; ++a) {
    Biv d = bergman_diagonal(bd.bp[a - 1], degree);
    for (int n = 0; n <= degree; ++n)
      for (int l = 0; l <= n; ++l) c_[{a, a, n - l, l}] = d.at(n - l, l);
  }
  // B^{ab}_{k,l} = sum_{n <= l} [z_a^k] Y'(Y - P_b)^{-n-2} [z_b^l] (n+1)(Y - P_b)^n Y'
  for (int a = 1; a <= 2; ++a) {
    int b = 3 - a;
    const BranchPoint& pa = bd.bp[a - 1];
    const BranchPoint& pb = bd.bp[b - 1];
    ZS lin = ZS(pa.P - pb.P, bd.zorder + 1) + pa.u * pa.P;
    ZS inv = lin.inverse();
    ZS ia = inv * inv * pa.dY;
    ZS cb = pb.dY;
    ZS vb = pb.u * pb.P;
    std::vector<ZS> A, C;
    for (int n = 0; n <= degree; ++n) {
      A.push_back(ia);
      C.push_back(cb * qc(NF(n + 1), kExact));
      ia = ia * inv;
      cb = cb * vb;
    }
    for (int k = 0; k <= degree; ++k)
      for (int l = 0; k + l <= degree; ++l) {
        QS acc = QS::zero(kExact);
        for (int n = 0; n <= l; ++n) acc += A[n].coeff(k) * C[n].coeff(l);
        c_[{a, b, k, l}] = acc;
      }
  }
}

QS BergmanTable::at(int alpha, int beta, int k, int l) const {
  auto it = c_.find({alpha, beta, k, l});
  if (it == c_.end()) throw std::out_of_range("BergmanTable: index beyond degree");
  return it->second;
}

QS bergman_from_forms(const BranchData& bd, int alpha, int beta, int k, int l) {
  ZS f = e_form(bd, beta, l).form_at_branch(bd, alpha);
  return f.coeff(k);
}

QS bergman_check(const BergmanTable& bt, int alpha, int beta, int k, int l) {
  Rat c = double_factorial(2 * k - 1) * double_factorial(2 * l - 1) / Rat(mpz_class(1) << (k + l + 1));
  return bt.at(alpha, beta, 2 * k, 2 * l) * NF(c);
}

ZMatrix r_check(const BranchData& bd, int z_order) {
  if (2 * z_order + 2 > bd.zorder) throw std::out_of_range("r_check: zeta-order too small");
  ZMatrix m;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      ZS f = dxi(bd, b, 0).form_at_branch(bd, a);
      for (int k = f.val(); k < 0; ++k)
        if (k % 2 != 0 && !f.coeff(k).is_zero()) throw std::logic_error("r_check: odd pole in the local expansion");
      // Gaussian moments of exp(zeta^2/z), normalized so that R(0) = 1.
      ZS r = ZS::zero(z_order + 1);
      for (int k = -1; k + 1 <= z_order; ++k) {
        Rat c = double_factorial(2 * k - 1) * (k >= 0 ? Rat(k % 2 ? -1 : 1) / Rat(mpz_class(1) << k) : Rat(-2));
        r += ZS::monomial(f.coeff(2 * k) * (NF(c) * NF::i() * NF(rat(1, 2))), k + 1, z_order + 1);
      }
      m[b - 1][a - 1] = r;
    }
  return m;
}

QS h_check(const BranchData& bd, int alpha, int k) {
  return bd.bp[alpha - 1].h.at(2 * k - 1) * (NF(double_factorial(2 * k - 1) / Rat(mpz_class(1) << (k - 1))) * NF::i());
}

std::string dump_branch_data(const BranchData& bd, const BergmanTable& bt, const ZMatrix& r) {
  std::ostringstream os;
  for (int a = 1; a <= 2; ++a) {
    os << "P" << a << " = " << qs_str(bd.P[a - 1]) << "\n";
    for (int k = 1; k < static_cast<int>(bd.bp[a - 1].h.size()) && k <= 6; ++k)
      os << "h^" << a << "_" << k << " = " << qs_str(bd.bp[a - 1].h[k]) << "\n";
  }
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int n = 0; n <= std::min(bt.degree(), 4); ++n)
        for (int l = 0; l <= n; ++l)
          os << "B^" << a << b << "_" << n - l << "," << l << " = " << qs_str(bt.at(a, b, n - l, l)) << "\n";
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a)
      for (int k = 0; k < r[b][a].prec() && k < kExact; ++k)
        os << "R_" << b + 1 << "^" << a + 1 << "[z^" << k << "] = " << qs_str(r[b][a].at(k)) << "\n";
  return os.str();
}

}  // namespace mirror
