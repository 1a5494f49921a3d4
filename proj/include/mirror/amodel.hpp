#pragma once

#include <array>
#include <string>
#include <vector>

#include "mirror/frobenius.hpp"
#include "mirror/series.hpp"

namespace mirror {

// D^1(mu), D^2(mu) for mu > 0.
NF disk_factor(int alpha, int mu);
// Fixed point carrying a boundary of winding mu: 2 for mu > 0, 1 for mu < 0.
inline int winding_label(int mu) { return mu > 0 ? 2 : 1; }
NF fixed_point_weight(int alpha);  // w(p_1) = -s, w(p_2) = s
NF edge_factor(int d);             // h(e, d)

// A torus-fixed locus. Vertices carry a label in {1,2} and a genus; edges join
// vertices of different labels. `attach[j]` is the vertex of the j-th
// boundary half-edge (graphs of type (a)) or of the j-th marking (type (b)).
struct DecoratedGraph {
  std::vector<int> label;
  std::vector<int> genus;
  std::vector<std::array<int, 3>> edges;  // {u, v, degree} with u < v
  std::vector<int> attach;
  std::vector<int> attach_degree;  // half-edge degrees; empty for type (b)
  int aut = 1;
  std::string dump() const;
};

// Type (a): boundary half-edges of degree |mu_j| at label winding_label(mu_j).
std::vector<DecoratedGraph> enumerate_decorated(int g, int d, const std::vector<int>& mu);
// Type (b): closed degree-d graphs with `markings` markings on arbitrary vertices.
std::vector<DecoratedGraph> enumerate_marked(int g, int d, int markings);

// Localization contribution of a type (a) graph, without the 1/|Aut| factor.
NF localization_weight(const DecoratedGraph& gr);
// Open invariant with no interior insertions; genus <= 1.
NF open_invariant(int g, int d, const std::vector<int>& mu);
// The same invariant via disk factors times a closed descendant integral.
NF f_via_open_descendant(int g, int d, const std::vector<int>& mu);

// xi~^alpha_k(X) with windings |d| <= mmax; coefficients are exact constants.
XLaurent xi_tilde(int alpha, int k, int mmax);
// F_{0,1} = sum_{d != 0} (s/d^2) I_d(2 sqrt(q) d/s) X^d.
XLaurent f01_bessel(const Context& ctx);

enum class ARoute { Localization, OpenDescendant };
// F_{g,h} for g <= 1 with |mu_j| <= m_max and p-order <= p_max.
XLaurent assemble_F(int g, int h, const Context& ctx, ARoute route = ARoute::Localization);
// F_{0,2} on slots with mu_1 + mu_2 != 0 from the S-matrix product formula.
XLaurent f02_from_s(const Context& ctx);

// Rows "g,d,mu_1;...;mu_h,value" for the computed invariants.
std::string invariants_csv(int g, int h, const Context& ctx);

}  // namespace mirror
