#include <random>

#include "doctest.h"
#include "mirror/intersect.hpp"

using namespace mirror;

TEST_CASE("Witten-Kontsevich spot values") {
  CHECK(psi_number(0, {0, 0, 0}) == 1);
  CHECK(psi_number(1, {1}) == rat(1, 24));
  CHECK(psi_number(0, {1, 0, 0, 0}) == 1);
  CHECK(psi_number(2, {4}) == rat(1, 1152));
  CHECK(psi_number(1, {1, 1}) == rat(1, 24));
  CHECK(psi_number(0, {2, 0, 0}) == 0);
  CHECK_THROWS(psi_number(0, {0, 0}));
  CHECK_THROWS(psi_number(1, {}));
}

TEST_CASE("genus two value through string and dilaton") {
  // <tau_0 tau_5>_2 reduces by string, <tau_1 tau_4>_2 by dilaton.
  CHECK(psi_number(2, {0, 5}) == psi_number(2, {4}));
  CHECK(psi_number(2, {1, 4}) == 3 * psi_number(2, {4}));
  CHECK(psi_number(2, {0, 0, 6}) == psi_number(2, {0, 5}));
}

TEST_CASE("string and dilaton equations on random keys") {
  std::mt19937 rng(5);
  for (int t = 0; t < 80; ++t) {
    int g = static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 3);
    if (2 * g - 2 + m <= 0) continue;
    int total = 3 * g - 3 + m;
    std::vector<int> h(m, 0);
    for (int i = 0; i < total; ++i) h[rng() % m]++;
    // string equation on each key one step above the dimension of h
    for (int j = 0; j < m; ++j) {
      std::vector<int> k = h;
      k[j] += 1;
      std::vector<int> s = k;
      s.push_back(0);
      Rat sum = 0;
      for (int i = 0; i < m; ++i) {
        if (k[i] == 0) continue;
        std::vector<int> r = k;
        r[i] -= 1;
        sum += psi_number(g, r);
      }
      CHECK(psi_number(g, s) == sum);
    }
    std::vector<int> with1 = h;
    with1.push_back(1);
    CHECK(psi_number(g, with1) == (2 * g - 2 + m) * psi_number(g, h));
  }
}

TEST_CASE("heights are unordered") {
  CHECK(psi_number(1, {2, 0, 1}) == psi_number(1, {0, 1, 2}));
  CHECK(psi_number(2, {3, 1, 1}) == psi_number(2, {1, 3, 1}));
}

TEST_CASE("genus-one lambda_1 reduction") {
  CHECK(hodge_lambda1_number(1, {0}) == rat(1, 24));
  CHECK(hodge_lambda1_number(1, {1, 0}) == rat(1, 24));
  CHECK(hodge_lambda1_number(1, {1, 1}) == 0);
  CHECK_THROWS(hodge_lambda1_number(2, {0}));
}
