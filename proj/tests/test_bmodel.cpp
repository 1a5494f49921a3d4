#include "doctest.h"
#include "mirror/bmodel.hpp"
#include "mirror/frobenius.hpp"
#include "mirror/amodel.hpp"

using namespace mirror;

namespace {

struct Fixture {
  Context ctx;
  BranchData bd;
  BergmanTable bt;
  Fixture() {
    ctx.p_max = 6;
    ctx.m_max = 3;
    ctx.z_max = 4;
    bd = branch_points(ctx, hx_guard(ctx), 14);
    bt = BergmanTable(bd, 8);
  }
};

const Fixture& fx() {
  static Fixture f;
  return f;
}

std::vector<NF> poly_mul(const std::vector<NF>& a, const std::vector<NF>& b, size_t n) {
  std::vector<NF> r(n);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

// u(zeta) at q = 0 around Y = s from s(u - log(1 + u)) = zeta^2, u = zeta/kappa + ...
std::vector<NF> classical_u(const NF& kappa, int order) {
  size_t n = order + 2;
  std::vector<NF> u(n);
  u[1] = kappa.inverse();
  for (int m = 2; m <= order; ++m) {
    std::vector<NF> f(n), pw{NF(1)};
    for (int j = 1; j <= order + 1; ++j) {
      pw = poly_mul(pw, u, n);
      NF c = NF::s_pow(1) * NF(rat(j % 2 ? -1 : 1, j));  // s(u - log(1+u))
      if (j >= 2)
        for (size_t k = 0; k < n; ++k) f[k] += pw[k] * c;
    }
    // with u[m] = 0 the zeta^{m+1} coefficient is off by s u[1] u[m]
    u[m] = -f[m + 1] / (NF::s_pow(1) * u[1]);
  }
  return u;
}

}  // namespace

TEST_CASE("branch points") {
  const auto& b = fx().bd;
  QS q = qs_q(b.pprec);
  CHECK((b.P[0] + b.P[1]).agrees_with(QS(NF::s_pow(1), b.pprec)));
  CHECK((b.P[0] * b.P[1]).agrees_with(-q));
  CHECK(b.P[0].coeff(0).is_zero());
  CHECK(b.P[1].coeff(0) == NF::s_pow(1));
  for (int a = 1; a <= 2; ++a) {
    const QS& h1 = b.bp[a - 1].h[1];
    CHECK((h1 * h1 * b.delta[a - 1]).agrees_with(QS(NF(2), kExact)));
    CHECK((h1 * NF::sqrt2().inverse()).agrees_with(b.sqrt_delta[a - 1].inverse()));
    ZS x = x_minus_branch_value(b, a);
    CHECK(x.coeff(2).agrees_with(QS(NF(1), b.pprec)));
    for (int k = 3; k < 10; ++k) CHECK(x.coeff(k).is_zero());
  }
}

TEST_CASE("d xi forms") {
  const auto& b = fx().bd;
  for (int a = 1; a <= 2; ++a) {
    CHECK(dxi(b, a, 0).agrees_with(xi0(b, a).deriv()));
    for (int d = 0; d <= 3; ++d) {
      ZS loc = dxi(b, a, d).form_at_branch(b, a);
      CHECK(loc.val() == -2 * d - 2);
      CHECK(loc.coeff(-1).is_zero());
      // (2d+1)!!/(2^d i^{2d+1}) from the residue definition in this coordinate
      NF lead = NF(double_factorial(2 * d + 1) / Rat(mpz_class(1) << d)) * NF::i().pow(2 * d + 1).inverse();
      CHECK(loc.coeff(-2 * d - 2).agrees_with(QS(lead, b.pprec)));
      ZS other = dxi(b, a, d).form_at_branch(b, 3 - a);
      CHECK(other.val() >= 0);
    }
  }
  // d = 1 explicitly: 3/(2 i^3) = 3i/2
  CHECK(dxi(b, 2, 1).form_at_branch(b, 2).coeff(-4).coeff(0) == NF::i() * NF(rat(3, 2)));
}

TEST_CASE("Bergman coefficients") {
  const auto& f = fx();
  for (int a = 1; a <= 2; ++a)
    for (int c = 1; c <= 2; ++c)
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; k + l <= 4; ++l) {
          CHECK(f.bt.at(a, c, k, l).agrees_with(f.bt.at(c, a, l, k)));
          if (k + l <= 2) CHECK(f.bt.at(a, c, k, l).agrees_with(bergman_from_forms(f.bd, a, c, k, l)));
        }
  // classical limit at Y = s through the Schwarzian of u(zeta)
  NF kappa = f.bd.bp[1].kappa.coeff(0);
  auto u = classical_u(kappa, 5);
  NF a1 = u[1], a2 = u[2], a3 = u[3], a4 = u[4];
  NF S0 = NF(6) * a3 / a1 - NF(6) * (a2 / a1).pow(2);
  NF S1 = NF(24) * a4 / a1 - NF(12) * a3 * a2 / a1.pow(2) - NF(6) * (a2 / a1) * (NF(6) * a3 / a1 - NF(4) * (a2 / a1).pow(2));
  CHECK(f.bt.at(2, 2, 0, 0).coeff(0) == S0 / NF(6));
  CHECK(f.bt.at(2, 2, 1, 0).coeff(0) == S1 / NF(12));
  CHECK(f.bt.at(2, 2, 0, 1).coeff(0) == S1 / NF(12));
}

TEST_CASE("R-check") {
  const auto& f = fx();
  ZMatrix r = r_check(f.bd, 4);
  ZMatrix ra = r_from_qde(f.ctx);
  int P = f.ctx.pprec();
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k <= 3; ++k) CHECK(r[a][c].coeff(k).truncated(P).agrees_with(ra[a][c].coeff(k).truncated(P)));
  CHECK(zm_is_identity(zm_mul(zm_transpose(zm_neg(r)), r)));
  CHECK(r[1][1].coeff(1).coeff(0) == NF::s_pow(-1) * NF(rat(-1, 12)));
  CHECK(r[0][0].coeff(1).coeff(0) == NF::s_pow(-1) * NF(rat(1, 12)));
  CHECK(r[0][1].coeff(1).coeff(0).is_zero());
}

TEST_CASE("h-check two expressions") {
  const auto& f = fx();
  ZMatrix r = r_check(f.bd, 5);
  for (int a = 1; a <= 2; ++a)
    for (int k = 1; k <= 5; ++k) {
      QS rf = QS::zero(kExact);
      for (int b = 1; b <= 2; ++b) {
        QS c = r[b - 1][a - 1].coeff(k - 1) * f.bd.bp[b - 1].h[1] * NF::i();
        rf += (k - 1) % 2 ? -c : c;
      }
      CHECK(h_check(f.bd, a, k).agrees_with(rf));
    }
}

TEST_CASE("theta-R relation in this coordinate") {
  const auto& f = fx();
  ZMatrix r = r_check(f.bd, 4);
  for (int a = 1; a <= 2; ++a)
    for (int k = 0; k <= 3; ++k) {
      RatY rhs(f.bd);
      for (int i = 0; i <= k; ++i)
        for (int b = 1; b <= 2; ++b) {
          QS c = r[b - 1][a - 1].coeff(k - i);
          rhs += w_form(f.bd, b, i).scaled((k - i) % 2 ? -c : c);
        }
      // theta_alpha(-z) = sum_b R-check_b^alpha(-z) theta^_b(z)
      CHECK(dxi(f.bd, a, k).scaled(QS(NF(k % 2 ? -1 : 1), kExact)).agrees_with(rhs));
    }
}

TEST_CASE("eta and chi representations") {
  const auto& b = fx().bd;
  auto e = eta_forms(b);
  auto c = chi_forms(b);
  CHECK(e[0].agrees_with(e[1]));
  CHECK(e[0].agrees_with(e[2]));
  CHECK(c[0].agrees_with(c[1]));
  CHECK(c[0].agrees_with(c[2]));
}

TEST_CASE("residue engine against Bessel") {
  int P = 11;
  for (int mu = -5; mu <= 5; ++mu) {
    if (!mu) continue;
    CHECK(exp_residue_mu1(mu, P).agrees_with(bessel_general(mu, mu, P + 6).shifted(-mu)));
    CHECK(exp_residue_mu2(mu, P).agrees_with(bessel_general(mu + 1, mu, P + 6).shifted(-mu - 1)));
  }
  CHECK(exp_residue(1, -2, 6).coeff(0) == NF::s_pow(-1));
}

TEST_CASE("h_X integration by parts") {
  const auto& f = fx();
  for (int a = 1; a <= 2; ++a)
    for (int k = 0; k <= 2; ++k) {
      RatY g = xi0(f.bd, a);
      for (int j = 0; j < k; ++j) g = g.minus_d_dx();
      CHECK(hx_form(g.deriv(), f.ctx).agrees_with(hx_function(g, f.ctx)));
    }
}

TEST_CASE("disk and annulus B-model potentials") {
  Context ctx;
  ctx.p_max = 8;
  ctx.m_max = 4;
  XLaurent w = w01(ctx);
  CHECK(w.coeff({1}).coeff(1) == NF(-1));
  CHECK_FALSE(w.has({0}));
  CHECK(w.agrees_with(-f01_bessel(ctx)));
  XLaurent w2 = w02(ctx), raw = w02(ctx, false);
  CHECK(w2.agrees_with(w2.symmetrized()));
  CHECK(raw.agrees_with(w2));
  CHECK(w2.is_rational_in_s());
  CHECK(w2.obeys_parity());
}

TEST_CASE("branch data dump is deterministic") {
  const auto& f = fx();
  ZMatrix r = r_check(f.bd, 3);
  std::string a = dump_branch_data(f.bd, f.bt, r), b = dump_branch_data(f.bd, f.bt, r);
  CHECK(a == b);
  CHECK(a.size() > 100);
}
