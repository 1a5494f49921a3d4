#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mirror/frobenius.hpp"
#include "mirror/series.hpp"

namespace mirror {

// Local data at one branch point. The local coordinate satisfies
// x = u_check + zeta^2 and Y = P (1 + u(zeta)).
struct BranchPoint {
  QS P;
  QS kappa;            // zeta = kappa u + O(u^2), kappa = -sqrt(Delta)/sqrt(2)
  std::vector<QS> c;   // x - x(P) = sum_{k >= 2} c[k] u^k
  ZS u;                // u(zeta)
  ZS Y, dY;            // Y(zeta) and dY/dzeta
  std::vector<QS> h;   // y = v_check - sum_k h[k] zeta^k; h[0] unused
};

struct BranchData {
  int pprec = 0;   // p-precision, including guard orders
  int zorder = 0;  // local expansions kept through zeta^zorder
  QS sigma;
  QS delta[2], sqrt_delta[2];
  QS P[2];
  BranchPoint bp[2];
};

// Branch data with p-precision ctx.pprec() + extra_p.
BranchData branch_points(const Context& ctx, int extra_p, int zorder);
// x(Y(zeta)) - x(P_alpha) as a zeta-series; equals zeta^2.
ZS x_minus_branch_value(const BranchData& bd, int alpha);
// sqrt(-2/Delta^alpha(q)) in the branch set by the local coordinate.
QS sqrt_m2_over_delta(const BranchData& bd, int alpha);
// The square root of -2 used by the leaves and dilaton terms.
NF sqrt_m2();

// Rational function of Y with poles only at P_1, P_2 (and infinity).
// 1-forms are stored as the coefficient of dY.
class RatY {
 public:
  RatY() = default;
  explicit RatY(const BranchData& bd);
  static RatY constant(const BranchData& bd, const QS& c);

  const std::map<int, QS>& poly() const { return poly_; }
  const std::map<int, QS>& pole(int alpha) const { return pole_[alpha - 1]; }
  void add_poly(int k, const QS& c);
  void add_pole(int alpha, int k, const QS& c);  // c (Y - P_alpha)^{-k}

  RatY& operator+=(const RatY& o);
  RatY& operator-=(const RatY& o);
  RatY operator-() const;
  RatY scaled(const QS& c) const;
  RatY mul_y() const;
  RatY mul_lin(int alpha) const;  // times (Y - P_alpha)
  RatY div_lin(int alpha) const;  // divided by (Y - P_alpha)
  RatY deriv() const;             // d/dY
  RatY minus_d_dx() const;        // -d/dx = -Y^2/((Y-P1)(Y-P2)) d/dY
  bool agrees_with(const RatY& o) const;

  // Expansion at Y = 0, with P_1-poles expanded in |Y| > |P_1| (formal in q).
  YSeries at_zero(int ymax, int pprec) const;
  // Expansion in zeta_alpha (as a function).
  ZS at_branch(const BranchData& bd, int alpha) const;
  // Expansion of the form f dY in zeta_alpha: coefficient of d zeta.
  ZS form_at_branch(const BranchData& bd, int alpha) const;
  std::string str() const;

 private:
  std::map<int, QS> poly_;
  std::map<int, QS> pole_[2];
  QS P_[2];
  int pprec_ = 0;
};

// d xi_{alpha,d} from the residue definition.
RatY dxi(const BranchData& bd, int alpha, int d);
// e(alpha, m)(Y) = [zeta_alpha^m] B(Y, zeta_alpha) / d zeta_alpha.
RatY e_form(const BranchData& bd, int alpha, int m);
// xi_{alpha,0} = sqrt(-2/Delta^alpha) P_alpha/(Y - P_alpha).
RatY xi0(const BranchData& bd, int alpha);
// W^alpha_k = d((-d/dx)^k xi_{alpha,0}).
RatY w_form(const BranchData& bd, int alpha, int k);
// eta and chi: partial-fraction form and two equivalent closed forms.
std::array<RatY, 3> eta_forms(const BranchData& bd);
std::array<RatY, 3> chi_forms(const BranchData& bd);

// B^{alpha beta}_{k,l} for k + l <= degree.
class BergmanTable {
 public:
  BergmanTable() = default;
  BergmanTable(const BranchData& bd, int degree);
  int degree() const { return degree_; }
  QS at(int alpha, int beta, int k, int l) const;
  // Direct evaluation of the alpha = beta block from the coordinate u.
 private:
  int degree_ = 0;
  std::map<std::array<int, 4>, QS> c_;
};
// B^{alpha beta}_{k,l} by expanding dY1 dY2/(Y1 - Y2)^2 through e(beta, l).
QS bergman_from_forms(const BranchData& bd, int alpha, int beta, int k, int l);
// B-check_{k,l} = (2k-1)!!(2l-1)!!/2^{k+l+1} B_{2k,2l}.
QS bergman_check(const BergmanTable& bt, int alpha, int beta, int k, int l);

// Entry [beta][alpha] is R-check_beta^alpha(z), from the Gaussian moments of
// d xi_{beta,0} expanded at P_alpha.
ZMatrix r_check(const BranchData& bd, int z_order);
// h-check^alpha_k = i (2k-1)!! h^alpha_{2k-1} / 2^{k-1}; equals
// [z^{k-1}] sum_b i h^b_1 R-check_b^alpha(-z).
QS h_check(const BranchData& bd, int alpha, int k);

// ---- the h_X operator ----

// Extra p-orders a branch data set needs before h_X truncates to ctx.pprec().
inline int hx_guard(const Context& ctx) { return ctx.m_max + 4; }
// E_mu(a) = Res_{Y=0} Y^a exp(mu (Y + q/Y)/s) dY.
QS exp_residue(int mu, int a, int pprec);
// Res e^{mu(Y+q/Y)/s} dY/Y^{mu+1} and Res e^{mu(Y+q/Y)/s} dY/Y^{mu+2}.
QS exp_residue_mu1(int mu, int pprec);
QS exp_residue_mu2(int mu, int pprec);
// I_nu(2 sqrt(q) mu / s).
QS bessel_general(int nu, int mu, int pprec);

// sum_mu (1/mu) Res(f dY X^{-mu}) X^mu.
XLaurent hx_form(const RatY& f, const Context& ctx);
// sum_mu Res(f X^{-mu} dX/X) X^mu.
XLaurent hx_function(const RatY& f, const Context& ctx);
// W_{0,1} from (-1/s) X d/dX W_{0,1} = h_X(dY/Y).
XLaurent w01(const Context& ctx);
// W_{0,2} = h_X(B - dX1 dX2/(X1 - X2)^2), expanded in |Y2| < |Y1|.
XLaurent w02(const Context& ctx, bool symmetrize = true);

// Text dump of h_k, B_{k,l} and R entries for regression snapshots.
std::string dump_branch_data(const BranchData& bd, const BergmanTable& bt, const ZMatrix& r);

}  // namespace mirror
