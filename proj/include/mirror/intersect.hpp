#pragma once

#include <vector>

#include "mirror/nfield.hpp"

namespace mirror {

// <tau_{k_1} ... tau_{k_m}>_g on the moduli space of stable genus-g curves.
// Heights are an unordered multiset; unstable keys throw.
Rat psi_number(int g, std::vector<int> heights);

// Genus-one integral of lambda_1 times psi powers.
Rat hodge_lambda1_number(int g, const std::vector<int>& heights);

}  // namespace mirror
