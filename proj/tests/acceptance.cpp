// One pass/fail line per acceptance criterion. Exit status is nonzero if any
// selected criterion fails.
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mirror/amodel.hpp"
#include "mirror/ceo.hpp"
#include "mirror/graphsum.hpp"
#include "mirror/intersect.hpp"

using namespace mirror;

namespace {

// Tolerances: all comparisons are exact over Q(zeta_8)(w), so the tolerances
// are the truncation windows below.
constexpr int kDiskWinding = 6, kDiskP = 12;
constexpr int kAnnulusWinding = 4, kAnnulusP = 8;
constexpr int kStableWinding = 3, kStableP = 6;
constexpr int kUnitarityZ = 6, kUnitarityP = 8, kBernoulliZ = 5;
constexpr int kResidueWinding = 5, kResidueP = 10;
constexpr int kEdgeDegree = 4, kDilatonHeight = 5, kLeafHeight = 4, kLeafWinding = 4, kLeafP = 6;

struct Result {
  bool ok = true;
  std::ostringstream detail;
  void check(bool c, const std::string& what) {
    if (!c) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

std::string keys(const std::vector<XLaurent::Key>& bad) {
  std::ostringstream os;
  for (size_t i = 0; i < bad.size() && i < 4; ++i) {
    os << (i ? " " : "") << "(";
    for (size_t j = 0; j < bad[i].size(); ++j) os << (j ? "," : "") << bad[i][j];
    os << ")";
  }
  if (bad.size() > 4) os << " +" << bad.size() - 4;
  return os.str();
}

Context window(int m, int p, int z = 3) {
  Context ctx;
  ctx.m_max = m;
  ctx.p_max = p;
  ctx.z_max = z;
  return ctx;
}

void criterion1(Result& r) {
  Context ctx = window(kDiskWinding, kDiskP);
  XLaurent bessel = f01_bessel(ctx), loc = assemble_F(0, 1, ctx), w = w01(ctx);
  std::vector<XLaurent::Key> bad;
  bool ok = loc.agrees_with(bessel, &bad);
  r.check(ok, "localization != Bessel at " + keys(bad));
  bad.clear();
  ok = bessel.agrees_with(-w, &bad);
  r.check(ok, "F01 != -W01 at " + keys(bad));
}

void criterion2(Result& r) {
  Context ctx = window(kAnnulusWinding, kAnnulusP);
  XLaurent f = assemble_F(0, 2, ctx), w = w02(ctx);
  std::vector<XLaurent::Key> bad;
  bool ok = f.agrees_with(-w, &bad);
  r.check(ok, "F02 != -W02 at " + keys(bad) + (f.agrees_with(w) ? " (F02 = +W02 on all slots)" : ""));
}

void criterion3(Result& r) {
  Context ctx = window(kStableWinding, kStableP);
  GraphSumInput in = graphsum_input(ctx, 5);
  for (auto [g, n] : {std::pair{0, 3}, {1, 1}}) {
    BranchData bd = branch_points(ctx, hx_guard(ctx), ceo_zorder(g, n));
    BergmanTable bt(bd, ceo_bergman_degree(g, n));
    XLaurent w = ceo_w(ceo_direct(g, n, bd, bt), bd, ctx);
    XLaurent f = assemble_F(g, n, ctx);
    XLaurent expect = (g - 1) % 2 ? -w : w;
    std::vector<XLaurent::Key> bad;
    std::string tag = "(" + std::to_string(g) + "," + std::to_string(n) + ")";
    bool ok = f.agrees_with(expect, &bad);
    r.check(ok, "F" + tag + " != (-1)^(g-1) W at " + keys(bad) + (f.agrees_with(-expect) ? " (opposite sign on all slots)" : ""));
    r.check(assemble_graphsum(g, n, in, Side::A).agrees_with(f), "A graph sum != localization " + tag);
  }
}

void criterion4(Result& r) {
  Context ctx = window(1, kUnitarityP, kUnitarityZ);
  ZMatrix ra = r_from_qde(ctx);
  r.check(zm_is_identity(zm_mul(zm_transpose(zm_neg(ra)), ra)), "R^T(-z) R(z) != 1");
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k <= kBernoulliZ; ++k) {
        NF lim = ra[a][b].coeff(k).coeff(0);
        NF want = a == b ? bernoulli_limit(a + 1, kBernoulliZ).coeff(k).coeff(0) : NF(0);
        r.check(lim == want, "q = 0 limit of R[" + std::to_string(a) + "][" + std::to_string(b) + "] at z^" + std::to_string(k));
      }
  r.check(qde_check(s_matrix(ctx)), "quantum differential equation");
  BranchData bd = branch_points(ctx, 0, 2 * kUnitarityZ + 6);
  ZMatrix rb = r_check(bd, kUnitarityZ);
  int P = ctx.pprec();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k <= kUnitarityZ; ++k)
        r.check(rb[a][b].coeff(k).truncated(P).agrees_with(ra[a][b].coeff(k).truncated(P)),
                "R-check != R at [" + std::to_string(a) + "][" + std::to_string(b) + "] z^" + std::to_string(k));
}

void criterion5(Result& r) {
  for (int mu = -kResidueWinding; mu <= kResidueWinding; ++mu) {
    if (!mu) continue;
    int P = kResidueP + 1;
    QS bc = bessel_general(mu, mu, P + kResidueWinding + 2).shifted(-mu);
    QS bd = bessel_general(mu + 1, mu, P + kResidueWinding + 2).shifted(-mu - 1);
    r.check(exp_residue_mu1(mu, P).agrees_with(bc), "C residue at mu = " + std::to_string(mu));
    r.check(exp_residue_mu2(mu, P).agrees_with(bd), "D residue at mu = " + std::to_string(mu));
  }
}

void criterion6(Result& r) {
  r.check(psi_number(0, {0, 0, 0}) == 1, "<tau_0^3>_0");
  r.check(psi_number(1, {1}) == rat(1, 24), "<tau_1>_1");
  r.check(psi_number(2, {4}) == rat(1, 1152), "<tau_4>_2");
  r.check(psi_number(0, {1, 1, 0, 0, 0}) == 2, "<tau_1^2 tau_0^3>_0");
  r.check(psi_number(2, {2, 3}) == rat(29, 5760), "<tau_2 tau_3>_2");
  // string and dilaton on every key with at most four insertions up to genus 2
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 3; ++n) {
      int dim = 3 * g - 3 + n;
      if (dim < 0 || (g == 0 && n < 3)) continue;
      std::vector<int> k(n, 0);
      std::function<void(int, int)> walk = [&](int j, int left) {
        if (j == n - 1) {
          k[j] = left;
          std::vector<int> with0 = k, with1 = k;
          with0.push_back(0);
          with1.push_back(1);
          Rat s = 0;
          for (int i = 0; i < n; ++i)
            if (k[i] > 0) {
              auto kk = k;
              --kk[i];
              s += psi_number(g, kk);
            }
          r.check(psi_number(g, with0) == s, "string equation");
          r.check(psi_number(g, with1) == Rat(2 * g - 2 + n) * psi_number(g, k), "dilaton equation");
          return;
        }
        for (int a = 0; a <= left; ++a) {
          k[j] = a;
          walk(j + 1, left - a);
        }
      };
      walk(0, dim);
    }
  r.check(hodge_lambda1_number(1, {0}) == rat(1, 24), "lambda_1 on M_{1,1}");
  r.check(hodge_lambda1_number(1, {1, 0}) == rat(1, 24), "lambda_1 psi_1 on M_{1,2}");
  r.check(hodge_lambda1_number(1, {1, 1, 0}) == rat(1, 12), "lambda_1 psi_1 psi_2 on M_{1,3}");
}

void criterion7(Result& r) {
  Context ctx = window(kLeafWinding, kLeafP);
  GraphSumInput in = graphsum_input(ctx, kDilatonHeight);
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int k = 0; k <= kEdgeDegree; ++k)
        for (int l = 0; k + l <= kEdgeDegree; ++l)
          r.check(edge_weight(in.r, a, b, k, l).agrees_with(bergman_check(in.bt, a, b, k, l)), "edge weight");
  for (int b = 1; b <= 2; ++b)
    for (int k = 2; k <= kDilatonHeight; ++k)
      r.check(dilaton_weight_a(in.r, in.bd, b, k).agrees_with(dilaton_weight_b(in.bd, b, k)), "dilaton weight");
  for (int b = 1; b <= 2; ++b)
    for (int k = 0; k <= kLeafHeight; ++k) {
      std::vector<XLaurent::Key> bad;
      bool ok = open_leaf_a(in, b, k).agrees_with(-open_leaf_b(in, b, k), &bad);
      r.check(ok, "open leaf beta=" + std::to_string(b) + " k=" + std::to_string(k) + " at " + keys(bad));
    }
  Context small = window(kStableWinding, kStableP);
  std::vector<XLaurent> ws{w01(small), w02(small)};
  for (auto [g, n] : {std::pair{0, 3}, {1, 1}}) {
    BranchData bd = branch_points(small, hx_guard(small), ceo_zorder(g, n));
    BergmanTable bt(bd, ceo_bergman_degree(g, n));
    ws.push_back(ceo_w(ceo_direct(g, n, bd, bt), bd, small));
  }
  for (size_t i = 0; i < ws.size(); ++i) {
    r.check(ws[i].is_rational_in_s(), "W #" + std::to_string(i) + " not rational in s");
    r.check(ws[i].obeys_parity(), "W #" + std::to_string(i) + " violates parity");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-7)")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::function<void(Result&)> all[] = {criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7};
  bool pass = true;
  for (int c = 1; c <= 7; ++c) {
    if (only && c != only) continue;
    Result r;
    try {
      all[c - 1](r);
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << c << ": " << (r.ok ? "PASS" : "FAIL");
    if (!r.ok) std::cout << " (" << r.detail.str() << ")";
    std::cout << std::endl;
    pass = pass && r.ok;
  }
  return pass ? 0 : 1;
}
