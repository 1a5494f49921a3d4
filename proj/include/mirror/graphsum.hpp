#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mirror/bmodel.hpp"
#include "mirror/ceo.hpp"
#include "mirror/frobenius.hpp"
#include "mirror/series.hpp"

namespace mirror {

// Stable graph without heights. Loops are edges {v, v}. Ordinary leaves are
// ordered; dilaton leaves are counted per vertex.
struct StableGraph {
  std::vector<int> genus;
  std::vector<int> label;
  std::vector<int> dilaton;
  std::vector<std::array<int, 2>> edges;  // u <= v
  std::vector<int> leaf;                  // vertex of ordinary leaf j
  int aut = 1;
  int valence(int v) const;  // all half-edges, dilaton leaves included
  std::string dump() const;
};

// Graphs of genus g with n ordinary leaves whose vertex budgets admit
// dilaton heights >= 2. Rejects 2g - 2 + n <= 0.
std::vector<StableGraph> enumerate_stable(int g, int n);

// E^{ab}_{k,l} = [z^k w^l] (delta_ab - sum_c R_c^a(-z) R_c^b(-w))/(z + w).
QS edge_weight(const ZMatrix& r, int a, int b, int k, int l);
// [z^{k-1}](-sum_a R_a^b(-z)/sqrt(Delta^a)), k >= 2.
QS dilaton_weight_a(const ZMatrix& r, const BranchData& bd, int beta, int k);
// (-1/sqrt(-2)) h-check^beta_k.
QS dilaton_weight_b(const BranchData& bd, int beta, int k);

// Inputs shared by both assemblies.
struct GraphSumInput {
  Context ctx;
  BranchData bd;
  BergmanTable bt;
  ZMatrix r;  // R-check, entry [beta][alpha]
  CanonicalData cd;
};
GraphSumInput graphsum_input(const Context& ctx, int max_height);

// A-model open leaf [z^k](sum_{a,c} (xi~^a S^{c^}_a)_+ R(-z)_c^b).
XLaurent open_leaf_a(const GraphSumInput& in, int beta, int k);
// B-model open leaf (1/sqrt(-2)) h_X(d xi_{beta,k}).
XLaurent open_leaf_b(const GraphSumInput& in, int beta, int k);
// [z^k] sum_a (xi~^a S^{c^}_a)_+ without the R factor.
XLaurent open_leaf_bare(const GraphSumInput& in, int gamma, int k);

enum class Side { A, B, BRecursion };
// Graph-sum coefficients of prod_j (leaf)^{beta_j}_{k_j}, keyed by {beta_j, k_j}.
// Side B carries the prefactor (-1)^{g-1+n}. Side BRecursion carries
// (-1)^n prod_j (-1)^{k_j} instead; with the leaves d xi_{beta,k}/sqrt(-2) it
// reproduces omega_{g,n} of the recursion in this coordinate.
FormTensor graphsum_table(int g, int n, const GraphSumInput& in, Side side);
// F_{g,n} (side A) or W_{g,n} (side B) from the graph sum.
XLaurent assemble_graphsum(int g, int n, const GraphSumInput& in, Side side);

}  // namespace mirror
