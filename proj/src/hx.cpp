#include <map>
#include <stdexcept>

#include "mirror/bmodel.hpp"

namespace mirror {

QS exp_residue(int mu, int a, int pprec) {
  QS r = QS::zero(pprec);
  NF ratio = NF(mu) * NF::s_pow(-1);
  for (int m = std::max(0, a + 1); 2 * m < pprec; ++m) {
    int n = m - a - 1;
    Rat c = Rat(1) / (factorial(n) * factorial(m));
    r += QS::monomial(ratio.pow(n + m) * NF(c), 2 * m, pprec);
  }
  return r;
}

QS exp_residue_mu1(int mu, int pprec) { return exp_residue(mu, -mu - 1, pprec); }
QS exp_residue_mu2(int mu, int pprec) { return exp_residue(mu, -mu - 2, pprec); }

QS bessel_general(int nu, int mu, int pprec) {
  int an = std::abs(nu);
  QS r = QS::zero(pprec);
  NF ratio = NF(mu) * NF::s_pow(-1);
  for (int m = 0; 2 * m + an < pprec; ++m) {
    Rat c = Rat(1) / (factorial(m) * factorial(m + an));
    r += QS::monomial(ratio.pow(2 * m + an) * NF(c), 2 * m + an, pprec);
  }
  return r;
}

namespace {

// sum_mu weight(mu) p^mu sum_j f_j E_mu(j - mu) X^mu.
XLaurent residue_pairing(const YSeries& f, const Context& ctx, bool divide_by_mu) {
  int P = ctx.pprec();
  int PP = P + ctx.m_max;
  XLaurent r(1);
  for (int mu = -ctx.m_max; mu <= ctx.m_max; ++mu) {
    if (mu == 0) continue;
    QS acc = QS::zero(PP);
    for (const auto& [j, c] : f.terms()) {
      int a = j - mu;
      if (c.val() + 2 * std::max(0, a + 1) >= PP) continue;
      acc += c * exp_residue(mu, a, PP);
    }
    if (2 * f.ymax() + 4 - mu < P)
      throw std::out_of_range("h_X: Y-truncation too low for the requested p-order");
    QS v = acc.shifted(mu);
    if (divide_by_mu) v = v * NF(rat(1, mu));
    if (v.prec() < P) throw std::out_of_range("h_X: input precision too low; build branch data with hx_guard");
    r.set({mu}, v.truncated(P));
  }
  return r;
}

int hx_ymax(const Context& ctx) { return (ctx.pprec() + ctx.m_max) / 2 + 3; }

}  // namespace

XLaurent hx_form(const RatY& f, const Context& ctx) {
  return residue_pairing(f.at_zero(hx_ymax(ctx), ctx.pprec() + ctx.m_max), ctx, true);
}

XLaurent hx_function(const RatY& f, const Context& ctx) {
  // dX/X = (Y - P1)(Y - P2)/(-s Y^2) dY
  int ym = hx_ymax(ctx);
  int PP = ctx.pprec() + ctx.m_max;
  YSeries g = f.mul_lin(1).mul_lin(2).at_zero(ym + 2, PP);
  YSeries h(ym, PP);
  QS c(NF::s_pow(-1) * NF(-1), kExact);
  for (const auto& [k, v] : g.terms()) h.add(k - 2, v * c);
  return residue_pairing(h, ctx, false);
}

XLaurent w01(const Context& ctx) {
  int P = ctx.pprec();
  XLaurent r(1);
  for (int mu = -ctx.m_max; mu <= ctx.m_max; ++mu) {
    if (mu == 0) continue;
    QS rmu = exp_residue(mu, -mu - 1, P + ctx.m_max).shifted(mu) * NF(rat(1, mu));
    r.set({mu}, (rmu * (NF::s_pow(1) * NF(rat(-1, mu)))).truncated(P));
  }
  return r;
}

XLaurent w02(const Context& ctx, bool symmetrize) {
  int P = ctx.pprec();
  int M = ctx.m_max;
  XLaurent r(2);
  for (int m1 = -M; m1 <= M; ++m1)
    for (int m2 = -M; m2 <= M; ++m2) {
      if (m1 == 0 || m2 == 0 || std::abs(m1) + std::abs(m2) >= P) continue;
      int PP = P + std::abs(m1) + std::abs(m2);
      // B = sum_k (k+1) Y2^k Y1^{-k-2} dY1 dY2
      QS acc = QS::zero(PP);
      for (int k = 0; 2 * std::max(0, k - m2 + 1) + m1 + m2 < P; ++k)
        acc += exp_residue(m2, k - m2, PP) * exp_residue(m1, -k - 2 - m1, PP) * NF(k + 1);
      QS v = acc.shifted(m1 + m2) * NF(rat(1, m1 * m2));
      if (m1 < 0 && m2 == -m1) v += QS(NF(rat(1, m2)), kExact);
      r.set({m1, m2}, v.truncated(P));
    }
  return symmetrize ? r.symmetrized() : r;
}

}  // namespace mirror
