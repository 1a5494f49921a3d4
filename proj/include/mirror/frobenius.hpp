#pragma once

#include <array>

#include "mirror/series.hpp"

namespace mirror {

// Series in a descendant variable (z or 1/z) with p-series coefficients.
using ZS = Laurent<QS>;
// 2x2 matrix of z-series. Index [a][b].
using ZMatrix = std::array<std::array<ZS, 2>, 2>;

// Labels alpha in {1, 2} are stored at index alpha - 1 throughout.
struct CanonicalData {
  int pprec = 0;
  QS sigma;           // sqrt(1 + 4q/s^2)
  QS delta[2];        // Delta^alpha(q)
  QS sqrt_delta[2];   // sqrt(Delta^2) = w sigma^{1/2}, sqrt(Delta^1) = i sqrt(Delta^2)
  QS inv_sqrt_delta[2];
  QS psi[2][2];      // Psi_i^alpha, [i][alpha]
  QS psi_inv[2][2];  // (Psi^{-1})_alpha^i, [alpha][i]
};

CanonicalData canonical_data(const Context& ctx);
NF delta_classical(int alpha);  // -s, s
// Quantum product in the basis {1, H}: returns the coordinates of H*H.
std::array<QS, 2> h_star_h(int pprec);

// I_d(2 sqrt(q) d / s) as a series in p.
QS bessel_I(int d, int pprec);
// Bernoulli number B_n.
Rat bernoulli(int n);

// J^alpha without the exp((t^0 + t^1 Delta^alpha/2)/z) prefactor, as a
// series in u = 1/z (exponent k means z^{-k}), kept through u^{u_order}.
ZS j_component(int alpha, int u_order, int pprec);

// J^alpha and z q d/dq J^alpha evaluated at z = s/d, including the
// q^{|d|/2} coming from the t^1 prefactor. Requires sign(d) to match alpha.
QS j_at(int alpha, int d, int pprec);
QS zdq_j_at(int alpha, int d, int pprec);
// S_z(hat phi_gamma(q), phi_alpha) at z = s/d.
QS s_hat_at(const CanonicalData& cd, int gamma, int alpha, int d);

// Rows S_z(1, phi_alpha) and S_z(H, phi_alpha) with the t^1 prefactor
// removed, as series in u = 1/z.
struct SMatrix {
  int u_order = 0;
  ZS one[2];
  ZS h[2];
};
SMatrix s_matrix(const Context& ctx);
// S_z(hat phi_gamma(q), phi_alpha) with the prefactor removed, as a series in u.
ZS s_hat_series(const SMatrix& sm, const CanonicalData& cd, int gamma, int alpha);
// z d/dt^1 applied twice to the unit row reproduces multiplication by H*H.
bool qde_check(const SMatrix& sm);
// sum_a S_z(hat phi_a, phi_b) S_{-z}(hat phi_a, phi_c) = (phi_b, phi_c).
bool v_identity_check(const SMatrix& sm, const CanonicalData& cd);

// R(z) = 1 + R_1 z + ... solved from the quantum differential equation in the
// normalized canonical frame; entry [b][c] is the b-component of the c-th
// solution column. Diagonal constants from the Bernoulli limit.
ZMatrix r_from_qde(const Context& ctx);
// The Bernoulli exponential exp(-sum B_{2n}/(2n(2n-1)) (z/Delta)^{2n-1}).
ZS bernoulli_limit(int alpha, int z_order);

ZS zs_neg(const ZS& a);  // z -> -z
ZMatrix zm_transpose(const ZMatrix& m);
ZMatrix zm_mul(const ZMatrix& a, const ZMatrix& b);
ZMatrix zm_neg(const ZMatrix& m);  // entrywise z -> -z
bool zm_is_identity(const ZMatrix& m);

}  // namespace mirror
