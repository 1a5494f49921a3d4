#include "doctest.h"
#include "mirror/amodel.hpp"
#include "mirror/frobenius.hpp"

using namespace mirror;

TEST_CASE("disk factors") {
  CHECK(disk_factor(1, 1) == NF::s_pow(1));
  CHECK(disk_factor(2, 2) == NF(rat(1, 2)));
  CHECK(disk_factor(1, 2) == NF(rat(-1, 2)));
  // mu^{mu-2}/(mu! s^{mu-2}) at mu = 3
  CHECK(disk_factor(2, 3) == NF(rat(1, 2)) * NF::s_pow(-1));
  CHECK_THROWS(disk_factor(1, 0));
  CHECK(edge_factor(1) == -NF::s_pow(-2));
}

TEST_CASE("decorated graph enumeration") {
  auto a = enumerate_decorated(0, 0, {1});
  REQUIRE(a.size() == 1);
  CHECK(a[0].label.size() == 1);
  CHECK(a[0].label[0] == 2);
  auto b = enumerate_decorated(0, 0, {-1});
  REQUIRE(b.size() == 1);
  CHECK(b[0].label[0] == 1);
  for (const auto& gr : enumerate_decorated(1, 2, {1, -1})) {
    int gsum = 0;
    for (int x : gr.genus) gsum += x;
    CHECK(gsum + static_cast<int>(gr.edges.size()) - static_cast<int>(gr.label.size()) + 1 == 1);
    for (const auto& e : gr.edges) CHECK(gr.label[e[0]] != gr.label[e[1]]);
  }
  CHECK_THROWS(open_invariant(0, 0, {0}));
}

TEST_CASE("open invariants") {
  CHECK(open_invariant(0, 0, {1}) == NF(1));
  // [X^2] F_{0,1} at leading order: (s/4) I_2 = (s/4)(2/s^2) q
  Context ctx;
  ctx.p_max = 6;
  ctx.m_max = 3;
  XLaurent f = f01_bessel(ctx);
  CHECK(f.coeff({2}).coeff(2) == open_invariant(0, 0, {2}));
  for (int g = 0; g <= 1; ++g)
    for (int d = 0; d <= 2; ++d)
      for (const auto& mu : std::vector<std::vector<int>>{{1}, {-2}, {1, 1}, {2, -1}, {1, -1}, {3}}) {
        if (g == 0 && mu.size() == 1 && d > 1) continue;
        CHECK(open_invariant(g, d, mu) == f_via_open_descendant(g, d, mu));
      }
}

TEST_CASE("xi-tilde ladder") {
  int M = 4;
  XLaurent x2 = xi_tilde(2, -2, M);
  CHECK(x2.coeff({1}).coeff(0) == NF::s_pow(1));
  CHECK(x2.coeff({2}).coeff(0) == NF(rat(1, 2)));
  XLaurent x1 = xi_tilde(1, 0, M);
  for (const auto& [k, v] : x1.terms()) CHECK(k[0] < 0);
  for (int a = 1; a <= 2; ++a)
    for (int k = -2; k < 3; ++k) {
      XLaurent lo = xi_tilde(a, k, M), hi = xi_tilde(a, k + 1, M);
      for (int d = -M; d <= M; ++d) {
        if (!d) continue;
        CHECK((lo.coeff({d}) * (NF(d) * NF::s_pow(-1))).agrees_with(hi.coeff({d})));
      }
    }
}

TEST_CASE("disk potential") {
  Context ctx;
  ctx.p_max = 8;
  ctx.m_max = 4;
  XLaurent f = f01_bessel(ctx);
  CHECK(f.coeff({1}).coeff(1) == NF(1));
  CHECK_FALSE(f.has({0}));
  // (s/d^2) I_d(2 sqrt(q) d/s) is odd under (s, d) -> (-s, -d)
  CHECK(f.flip_s().coeff({3}).agrees_with(-f.coeff({-3})));
  CHECK(f.is_rational_in_s());
  CHECK(f.obeys_parity());
  CHECK(assemble_F(0, 1, ctx).agrees_with(f));
}

TEST_CASE("annulus potential") {
  Context ctx;
  ctx.p_max = 6;
  ctx.m_max = 3;
  XLaurent f = assemble_F(0, 2, ctx);
  CHECK(f.agrees_with(f.symmetrized()));
  CHECK(f.is_rational_in_s());
  CHECK(f.obeys_parity());
  // the S-product route covers the slots with mu_1 + mu_2 != 0
  XLaurent s = f02_from_s(ctx);
  for (const auto& [k, v] : s.terms()) CHECK(v.agrees_with(f.coeff(k)));
  CHECK(assemble_F(0, 2, ctx, ARoute::OpenDescendant).agrees_with(f));
}
