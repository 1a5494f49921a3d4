#include <random>

#include "doctest.h"
#include "mirror/series.hpp"

using namespace mirror;

namespace {

NF random_nf(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-4, 4), e(-2, 2);
  NF num, den(1);
  for (int k = 0; k < 3; ++k) num += NF::w_pow(e(rng), QZ::zeta_pow(k, rat(c(rng), 1 + (k % 2))));
  for (int k = 0; k < 2; ++k) den += NF::w_pow(k + 1, QZ(c(rng)));
  if (num.is_zero()) num = NF(1);
  if (den.is_zero()) den = NF(1);
  return num / den;
}

QS random_unit_series(std::mt19937& rng, int prec) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::vector<NF> cs{NF(1)};
  for (int k = 1; k < prec; ++k) cs.push_back(NF::s_pow(-k % 3, QZ(rat(c(rng), 1 + k % 2))));
  return QS::from_coeffs(0, cs, prec);
}

}  // namespace

TEST_CASE("cyclotomic tower identities") {
  NF z = NF::zeta_pow(1);
  CHECK((z - z.pow(3)).pow(2) == NF(2));
  CHECK(z.pow(2).pow(2) == NF(-1));
  CHECK(NF::w_pow(2) * NF::w_pow(-2) == NF(1));
  CHECK(z.pow(8) == NF(1));
  CHECK(NF::s_pow(3).is_rational_in_s());
  CHECK_FALSE(NF::w_pow(1).is_rational_in_s());
  CHECK_FALSE(NF::i().is_rational_in_s());
  CHECK_THROWS(NF(0).inverse());
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    NF a = random_nf(rng), b = random_nf(rng), c = random_nf(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == NF(1));
    CHECK(NF::parse(a.str()) == a);
  }
}

TEST_CASE("series square root") {
  QS q = qs_q(7);
  QS a = QS(NF(1), 7) + q * NF::s_pow(-2) * NF(4);
  QS r = qs_sqrt(a);
  CHECK(r.coeff(0) == NF(1));
  CHECK(r.coeff(2) == NF::s_pow(-2) * NF(2));
  CHECK(r.coeff(4) == NF::s_pow(-4) * NF(-2));
  QS b = qs_sqrt(QS(NF(1), 7) + QS::monomial(NF(1), 2, 7));
  CHECK(b.coeff(2) == NF(rat(1, 2)));
  CHECK(b.coeff(4) == NF(rat(-1, 8)));
  CHECK(qs_sqrt(QS(NF(1), 5)).agrees_with(QS(NF(1), 5)));
  CHECK_THROWS(qs_sqrt(QS(NF(2), 5)));
}

TEST_CASE("square root squares back") {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    QS a = random_unit_series(rng, 6);
    QS r = qs_sqrt(a);
    CHECK((r * r).agrees_with(a));
  }
}

TEST_CASE("residue at the origin") {
  int P = 6;
  CHECK(YSeries::monomial(QS(NF(1), P), -1, 4, P).residue_at_origin(P - 1).agrees_with(QS(NF(1), P)));
  YSeries poly(4, P);
  poly.add(-3, QS(NF(2), P));
  poly.add(2, QS(NF(5), P));
  CHECK(poly.residue_at_origin(P - 1).is_zero());

  // e^{(Y + q/Y)/s}: the Y^{-2} coefficient is sum_m q^{m+2}/(s^{2m+2} m!(m+2)!),
  // whose leading term is q^2/(2 s^2) ... and the residue of Y * e^{...} picks it.
  YSeries e(8, P);
  for (int m = 0; m <= 8; ++m)
    for (int n = 0; 2 * n < P; ++n) {
      NF c = NF(1 / (factorial(m) * factorial(n))) * NF::s_pow(-(m + n));
      e.add(m - n, QS::monomial(c, 2 * n, P));
    }
  CHECK(e.coeff(-1).coeff(2) == NF::s_pow(-1));
  YSeries shifted = e * YSeries::monomial(QS(NF(1), P), 1, 8, P);
  CHECK(shifted.residue_at_origin(P - 1).coeff(4) == NF::s_pow(-2) * NF(rat(1, 2)));
}

TEST_CASE("residue agrees with term collection") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-5, 5), k(-6, 6);
  for (int t = 0; t < 40; ++t) {
    int P = 7;
    YSeries f(6, P);
    NF expect(0);
    for (int j = 0; j < 8; ++j) {
      int e = k(rng);
      NF v(c(rng));
      f.add(e, QS(v, P));
      if (e == -1) expect += v;
    }
    CHECK(f.residue_at_origin(P - 1).agrees_with(QS(expect, P)));
  }
}

TEST_CASE("series serialization round trip") {
  XLaurent a(2);
  a.set({1, -2}, QS::monomial(NF::s_pow(-3) * NF(rat(5, 7)), 3, 6));
  a.set({-1, 1}, QS::monomial(NF::i() * NF::w_pow(1), 2, 6));
  std::string j = xlaurent_to_json(a);
  XLaurent b = xlaurent_from_json(j);
  CHECK(b.agrees_with(a));
  CHECK(xlaurent_to_json(b) == j);
  QS q = QS::monomial(NF::sqrt2(), 1, 9);
  CHECK(qs_from_json(qs_to_json(q)).agrees_with(q));
}

TEST_CASE("p-parity predicate") {
  XLaurent a(1);
  a.set({2}, QS::monomial(NF(1), 2, 6));
  CHECK(a.obeys_parity());
  a.set({1}, QS::monomial(NF(1), 2, 6));
  CHECK_FALSE(a.obeys_parity());
}
