#include "doctest.h"
#include "mirror/frobenius.hpp"

using namespace mirror;

TEST_CASE("Bessel series") {
  int P = 9;
  CHECK(bessel_I(0, P).coeff(0) == NF(1));
  QS i1 = bessel_I(1, P);
  // (sqrt q/s)(1 + q/(2 s^2) + ...)
  CHECK(i1.coeff(1) == NF::s_pow(-1));
  CHECK(i1.coeff(3) == NF::s_pow(-3) * NF(rat(1, 2)));
  // the argument carries d, so odd negative orders flip sign
  CHECK(bessel_I(-3, P).agrees_with(-bessel_I(3, P)));
  // I_2(2 sqrt(q) 2/s) starts at (2 sqrt(q)/s)^2/2
  CHECK(bessel_I(2, P).coeff(2) == NF::s_pow(-2) * NF(2));
}

TEST_CASE("J-function components") {
  int P = 9;
  ZS j2 = j_component(2, 6, P);
  CHECK(j2.coeff(0).coeff(0) == NF(1));
  // q^1 term of J^2 is 1/(z(s+z)) = u^2 - s u^3 + s^2 u^4 - ...
  CHECK(j2.coeff(2).coeff(2) == NF(1));
  CHECK(j2.coeff(3).coeff(2) == -NF::s_pow(1));
  CHECK(j2.coeff(4).coeff(2) == NF::s_pow(2));
  ZS j1 = j_component(1, 6, P);
  for (int k = 0; k <= 6; ++k) CHECK(j1.coeff(k).truncated(5).agrees_with(qs_flip_s(j2.coeff(k).truncated(5))));
}

TEST_CASE("canonical data") {
  Context ctx;
  ctx.p_max = 8;
  CanonicalData cd = canonical_data(ctx);
  CHECK((cd.delta[0] + cd.delta[1]).is_zero());
  CHECK(cd.delta[1].coeff(0) == NF::s_pow(1));
  CHECK(qs_is_rational_in_s(cd.delta[1]));
  for (int a = 0; a < 2; ++a) {
    CHECK((cd.sqrt_delta[a] * cd.sqrt_delta[a]).agrees_with(cd.delta[a]));
    for (int b = 0; b < 2; ++b) {
      QS e = cd.psi_inv[a][0] * cd.psi[0][b] + cd.psi_inv[a][1] * cd.psi[1][b];
      CHECK(e.agrees_with(QS(NF(a == b ? 1 : 0), cd.pprec)));
    }
  }
  auto hh = h_star_h(ctx.pprec());
  CHECK(hh[0].coeff(0) == NF::s_pow(2) * NF(rat(1, 4)));
  CHECK(hh[0].coeff(2) == NF(1));
  CHECK(hh[1].is_zero());
}

TEST_CASE("S-matrix identities") {
  Context ctx;
  ctx.p_max = 6;
  ctx.z_max = 5;
  SMatrix sm = s_matrix(ctx);
  CanonicalData cd = canonical_data(ctx);
  CHECK(qde_check(sm));
  CHECK(v_identity_check(sm, cd));
  // no instanton corrections at q = 0
  for (int a = 0; a < 2; ++a)
    for (int k = 1; k <= ctx.z_max; ++k) CHECK(sm.one[a].coeff(k).coeff(0).is_zero());
}

TEST_CASE("R-matrix from the quantum differential equation") {
  Context ctx;
  ctx.p_max = 6;
  ctx.z_max = 5;
  ZMatrix r = r_from_qde(ctx);
  CHECK(zm_is_identity(zm_mul(zm_transpose(zm_neg(r)), r)));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k <= ctx.z_max; ++k) {
        NF lim = r[a][b].coeff(k).coeff(0);
        CHECK(lim == (a == b ? bernoulli_limit(a + 1, ctx.z_max).coeff(k).coeff(0) : NF(0)));
      }
  CHECK(r[1][1].coeff(1).coeff(0) == NF::s_pow(-1) * NF(rat(-1, 12)));
  CHECK(bernoulli(2) == rat(1, 6));
  CHECK(bernoulli(4) == rat(-1, 30));
}
