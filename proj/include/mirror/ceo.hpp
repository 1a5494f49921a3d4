#pragma once

#include <array>
#include <map>
#include <vector>

#include "mirror/bmodel.hpp"
#include "mirror/series.hpp"

namespace mirror {

// A multidifferential as a polynomial in one-variable forms. Each key lists,
// slot by slot, {alpha, m}; its meaning (e(alpha, m) or d xi_{alpha, m})
// depends on the basis.
using FormKey = std::vector<std::array<int, 2>>;
using FormTensor = std::map<FormKey, QS>;

// Bergman-table degree and zeta-order the recursion needs for (g, n).
int ceo_bergman_degree(int g, int n);
int ceo_zorder(int g, int n);

// omega_{g,n} in the e(alpha, m) basis by direct residue evaluation, for
// (g, n) in {(0,3), (1,1), (0,4), (1,2)}.
FormTensor ceo_direct(int g, int n, const BranchData& bd, const BergmanTable& bt);
// e(alpha, 2d) = d xi_{alpha,d} 2^d i^{2d+1}/(2d-1)!!; throws on odd m.
FormTensor to_dxi_basis(const FormTensor& e);
// Whether the tensor is invariant under permutations of its slots.
bool is_symmetric(const FormTensor& t);
// h_{X_1..X_n} applied slotwise to an e-basis tensor.
XLaurent ceo_w(const FormTensor& e, const BranchData& bd, const Context& ctx);

}  // namespace mirror
