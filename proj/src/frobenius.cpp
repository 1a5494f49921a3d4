#include "mirror/frobenius.hpp"

#include <map>
#include <mutex>

namespace mirror {

namespace {

NF s_nf() { return NF::s_pow(1); }

QS scalar(const NF& c, int pprec) { return QS(c, pprec); }

int prefactor_exponent(int alpha, int d) {
  int e = alpha == 2 ? d : -d;
  if (d == 0 || e <= 0) throw std::invalid_argument("J at z = s/d: winding sign does not match the fixed point");
  return e;
}

// Coefficient of q^n in the reduced J^alpha at a fixed value of z.
NF j_term(int alpha, int n, const NF& z) {
  NF delta = delta_classical(alpha);
  NF den = NF(factorial(n)) * z.pow(n);
  for (int m = 1; m <= n; ++m) den *= delta + NF(m) * z;
  return den.inverse();
}

}  // namespace

NF delta_classical(int alpha) { return alpha == 1 ? -s_nf() : s_nf(); }

CanonicalData canonical_data(const Context& ctx) {
  CanonicalData cd;
  int P = ctx.pprec();
  cd.pprec = P;
  QS arg = scalar(NF(1), P) + QS::monomial(NF::s_pow(-2, QZ(4)), 2, P);
  cd.sigma = qs_sqrt(arg);
  QS root = qs_sqrt(cd.sigma);
  cd.delta[0] = cd.sigma * (-s_nf());
  cd.delta[1] = cd.sigma * s_nf();
  cd.sqrt_delta[1] = root * NF::w_pow(1);
  cd.sqrt_delta[0] = root * (NF::i() * NF::w_pow(1));
  for (int a = 0; a < 2; ++a) {
    cd.inv_sqrt_delta[a] = cd.sqrt_delta[a].inverse();
    cd.psi[0][a] = cd.inv_sqrt_delta[a];
    cd.psi[1][a] = cd.sqrt_delta[a] * NF(rat(1, 2));
    cd.psi_inv[a][0] = cd.sqrt_delta[a] * NF(rat(1, 2));
    cd.psi_inv[a][1] = cd.inv_sqrt_delta[a];
  }
  return cd;
}

std::array<QS, 2> h_star_h(int pprec) {
  // H*H = H u H + q (int H)^2 with H u H = s^2/4 and int H = 1.
  return {scalar(NF::s_pow(2, QZ(rat(1, 4))), pprec) + qs_q(pprec), QS::zero(pprec)};
}

QS bessel_I(int d, int pprec) {
  int ad = std::abs(d);
  QS r = QS::zero(pprec);
  NF ratio = NF(d) * NF::s_pow(-1);  // d/s
  for (int m = 0; 2 * m + ad < pprec; ++m) {
    NF c = ratio.pow(2 * m + ad) * NF(Rat(1) / (factorial(m) * factorial(m + ad)));
    r += QS::monomial(c, 2 * m + ad, pprec);
  }
  return r;
}

Rat bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rat> table{Rat(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    int m = static_cast<int>(table.size());
    Rat acc = 0;
    for (int k = 0; k < m; ++k) acc += binomial(m + 1, k) * table[k];
    table.push_back(-acc / (m + 1));
  }
  return table[n];
}

ZS j_component(int alpha, int u_order, int pprec) {
  NF delta = delta_classical(alpha);
  int uprec = u_order + 1;
  ZS r = ZS::zero(uprec);
  for (int n = 0; 2 * n <= u_order && 2 * n < pprec; ++n) {
    // q^n u^{2n} / (n!)^2 * prod_m 1/(1 + Delta u / m)
    Laurent<NF> f(NF(Rat(1) / (factorial(n) * factorial(n))), uprec);
    f = f.shifted(2 * n).truncated(uprec);
    for (int m = 1; m <= n; ++m) {
      Laurent<NF> g = Laurent<NF>(NF(1), kExact) + Laurent<NF>::monomial(delta * NF(rat(1, m)), 1);
      f = (f * g.inverse(uprec)).truncated(uprec);
    }
    for (int k = f.val(); k < f.end(); ++k)
      r += ZS::monomial(QS::monomial(f.at(k), 2 * n, pprec), k, uprec);
  }
  return r;
}

QS j_at(int alpha, int d, int pprec) {
  int e = prefactor_exponent(alpha, d);
  NF z = s_nf() * NF(rat(1, d));
  QS r = QS::zero(pprec);
  for (int n = 0; e + 2 * n < pprec; ++n) r += QS::monomial(j_term(alpha, n, z), e + 2 * n, pprec);
  return r;
}

QS zdq_j_at(int alpha, int d, int pprec) {
  int e = prefactor_exponent(alpha, d);
  NF z = s_nf() * NF(rat(1, d));
  NF half_delta = delta_classical(alpha) * NF(rat(1, 2));
  QS r = QS::zero(pprec);
  for (int n = 0; e + 2 * n < pprec; ++n)
    r += QS::monomial(j_term(alpha, n, z) * (half_delta + NF(n) * z), e + 2 * n, pprec);
  return r;
}

QS s_hat_at(const CanonicalData& cd, int gamma, int alpha, int d) {
  NF inv_delta = delta_classical(alpha).inverse();
  QS j = j_at(alpha, d, cd.pprec) * inv_delta;
  QS hj = zdq_j_at(alpha, d, cd.pprec) * inv_delta;
  return cd.psi_inv[gamma - 1][0] * j + cd.psi_inv[gamma - 1][1] * hj;
}

SMatrix s_matrix(const Context& ctx) {
  SMatrix sm;
  sm.u_order = 2 * ctx.z_max + 2;
  int P = ctx.pprec();
  for (int a = 1; a <= 2; ++a) {
    NF delta = delta_classical(a);
    ZS j = j_component(a, sm.u_order, P) * QS(delta.inverse(), P);
    sm.one[a - 1] = j;
    ZS dq = j.map_coeffs([](const QS& c) { return qs_q_dq(c); });
    sm.h[a - 1] = j * QS(delta * NF(rat(1, 2)), P) + dq.shifted(-1);
  }
  return sm;
}

ZS s_hat_series(const SMatrix& sm, const CanonicalData& cd, int gamma, int alpha) {
  return sm.one[alpha - 1] * cd.psi_inv[gamma - 1][0] + sm.h[alpha - 1] * cd.psi_inv[gamma - 1][1];
}

bool qde_check(const SMatrix& sm) {
  int P = sm.one[0].is_zero() ? 1 : sm.one[0].at(0).prec();
  auto hh = h_star_h(P);
  for (int a = 1; a <= 2; ++a) {
    NF delta = delta_classical(a);
    const ZS& h = sm.h[a - 1];
    ZS dq = h.map_coeffs([](const QS& c) { return qs_q_dq(c); });
    ZS lhs = h * QS(delta * NF(rat(1, 2)), P) + dq.shifted(-1);
    ZS rhs = sm.one[a - 1] * hh[0];
    if (!lhs.agrees_with(rhs)) return false;
  }
  return true;
}

ZS zs_neg(const ZS& a) {
  return a.map_indexed([](int k, const QS& c) { return (k % 2 == 0) ? c : -c; });
}

bool v_identity_check(const SMatrix& sm, const CanonicalData& cd) {
  for (int b = 1; b <= 2; ++b)
    for (int c = 1; c <= 2; ++c) {
      ZS sum = ZS::zero(sm.u_order + 1);
      for (int a = 1; a <= 2; ++a) sum += s_hat_series(sm, cd, a, b) * zs_neg(s_hat_series(sm, cd, a, c));
      NF expect = b == c ? delta_classical(b).inverse() : NF();
      ZS target(QS(expect, cd.pprec), kExact);
      if (!sum.agrees_with(target)) return false;
    }
  return true;
}

ZS bernoulli_limit(int alpha, int z_order) {
  int zp = z_order + 1;
  NF inv_delta = delta_classical(alpha).inverse();
  Laurent<NF> expo = Laurent<NF>::zero(zp);
  for (int n = 1; 2 * n - 1 < zp; ++n) {
    Rat c = -bernoulli(2 * n) / (2 * n * (2 * n - 1));
    expo += Laurent<NF>::monomial(NF(c) * inv_delta.pow(2 * n - 1), 2 * n - 1, zp);
  }
  Laurent<NF> e = exp_series(expo, zp);
  ZS r = ZS::zero(zp);
  for (int k = 0; k < zp; ++k) r += ZS::monomial(QS(e.at(k), kExact), k, zp);
  return r;
}

ZMatrix r_from_qde(const Context& ctx) {
  CanonicalData cd = canonical_data(ctx);
  int P = cd.pprec;
  int Z = ctx.z_max;
  QS gamma[2][2];
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a)
      gamma[b][a] = a == b ? QS::zero(P) : qs_q_dq(cd.sqrt_delta[a]) * cd.inv_sqrt_delta[b];
  ZS limit[2] = {bernoulli_limit(1, Z), bernoulli_limit(2, Z)};

  std::vector<std::array<std::array<QS, 2>, 2>> r(Z + 1);
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c) r[0][b][c] = QS(NF(b == c ? 1 : 0), P);
  for (int k = 0; k < Z; ++k) {
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        if (b == c) continue;
        QS lhs = qs_q_dq(r[k][b][c]);
        for (int a = 0; a < 2; ++a) lhs += gamma[b][a] * r[k][a][c];
        QS diff = cd.delta[b] - cd.delta[c];
        r[k + 1][b][c] = lhs * diff.inverse() * NF(2);
      }
    for (int b = 0; b < 2; ++b) {
      QS deriv = QS::zero(P);
      for (int a = 0; a < 2; ++a)
        if (a != b) deriv -= gamma[b][a] * r[k + 1][a][b];
      if (!deriv.at(0).is_zero()) throw std::logic_error("r_from_qde: nonintegrable constant term");
      QS integ = deriv.map_indexed([](int m, const NF& c) { return c * NF(rat(2, m)); });
      integ += QS(limit[b].at(k + 1).at(0), P);
      r[k + 1][b][b] = integ;
    }
  }
  ZMatrix out;
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c) {
      out[b][c] = ZS::zero(Z + 1);
      for (int k = 0; k <= Z; ++k) out[b][c] += ZS::monomial(r[k][b][c], k, Z + 1);
    }
  return out;
}

ZMatrix zm_transpose(const ZMatrix& m) {
  ZMatrix t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) t[a][b] = m[b][a];
  return t;
}

ZMatrix zm_mul(const ZMatrix& a, const ZMatrix& b) {
  ZMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

ZMatrix zm_neg(const ZMatrix& m) {
  ZMatrix r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r[a][b] = zs_neg(m[a][b]);
  return r;
}

bool zm_is_identity(const ZMatrix& m) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      int P = kExact;
      for (int k = m[a][b].val(); k < m[a][b].end(); ++k) P = std::min(P, m[a][b].at(k).prec());
      ZS target = a == b ? ZS(QS(NF(1), kExact), kExact) : ZS::zero();
      if (!m[a][b].agrees_with(target)) return false;
    }
  return true;
}

}  // namespace mirror
