#include "doctest.h"
#include "mirror/amodel.hpp"
#include "mirror/graphsum.hpp"

using namespace mirror;

namespace {

const GraphSumInput& input() {
  static GraphSumInput in = [] {
    Context ctx;
    ctx.p_max = 6;
    ctx.m_max = 3;
    ctx.z_max = 3;
    return graphsum_input(ctx, 5);
  }();
  return in;
}

}  // namespace

TEST_CASE("stable graph enumeration") {
  CHECK(enumerate_stable(0, 3).size() == 2);
  CHECK(enumerate_stable(1, 1).size() == 6);
  CHECK_THROWS(enumerate_stable(0, 2));
  CHECK_THROWS(enumerate_stable(1, 0));
  for (auto [g, n] : {std::pair{0, 3}, {1, 1}, {0, 4}, {1, 2}})
    for (const auto& gr : enumerate_stable(g, n)) {
      CHECK(gr.aut >= 1);
      for (size_t v = 0; v < gr.genus.size(); ++v)
        if (gr.genus[v] == 0) CHECK(gr.valence(static_cast<int>(v)) >= 3);
      int h1 = static_cast<int>(gr.edges.size()) - static_cast<int>(gr.genus.size()) + 1;
      int gsum = h1;
      for (int gv : gr.genus) gsum += gv;
      CHECK(gsum == g);
      CHECK(static_cast<int>(gr.leaf.size()) == n);
    }
}

TEST_CASE("edge weights match the Bergman coefficients") {
  const auto& in = input();
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; k + l <= 3; ++l) {
          QS e = edge_weight(in.r, a, b, k, l);
          CHECK(e.agrees_with(edge_weight(in.r, b, a, l, k)));
          CHECK(e.agrees_with(bergman_check(in.bt, a, b, k, l)));
        }
}

TEST_CASE("dilaton weights agree") {
  const auto& in = input();
  for (int b = 1; b <= 2; ++b) {
    CHECK_THROWS(dilaton_weight_a(in.r, in.bd, b, 1));
    CHECK_THROWS(dilaton_weight_b(in.bd, b, 1));
    for (int k = 2; k <= 5; ++k) CHECK(dilaton_weight_a(in.r, in.bd, b, k).agrees_with(dilaton_weight_b(in.bd, b, k)));
  }
}

TEST_CASE("open leaves") {
  const auto& in = input();
  NF inv = sqrt_m2().inverse();
  for (int b = 1; b <= 2; ++b)
    for (int k = 0; k <= 3; ++k) {
      CHECK(open_leaf_bare(in, b, k).agrees_with(hx_form(w_form(in.bd, b, k), in.ctx).scaled(inv)));
      XLaurent lb = open_leaf_b(in, b, k);
      CHECK(open_leaf_a(in, b, k).agrees_with(k % 2 ? -lb : lb));
    }
}

TEST_CASE("A-model graph sum matches localization") {
  const auto& in = input();
  for (auto [g, n] : {std::pair{0, 3}, {1, 1}}) {
    XLaurent F = assemble_F(g, n, in.ctx);
    CHECK(assemble_graphsum(g, n, in, Side::A).agrees_with(F));
  }
}

TEST_CASE("the two B prefactors differ by (-1)^(g-1+sum k)") {
  const auto& in = input();
  FormTensor b = graphsum_table(1, 1, in, Side::B), r = graphsum_table(1, 1, in, Side::BRecursion);
  REQUIRE(b.size() == r.size());
  for (const auto& [key, v] : b) {
    int sign = key[0][1] % 2;
    CHECK(r.at(key).agrees_with(sign ? -v : v));
  }
}
