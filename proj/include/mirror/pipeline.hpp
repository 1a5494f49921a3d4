#pragma once

#include <string>

#include "mirror/series.hpp"

namespace mirror {

// F_{g,n}: localization for g <= 1, the A graph sum otherwise.
XLaurent compute_f(int g, int n, const Context& ctx);
// W_{g,n}: closed forms for n <= 2 in genus 0, the recursion where it is
// implemented, the recursion-normalized B graph sum otherwise.
XLaurent compute_w(int g, int n, const Context& ctx);
std::string f_source(int g, int n);
std::string w_source(int g, int n);

}  // namespace mirror
