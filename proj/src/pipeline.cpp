#include "mirror/pipeline.hpp"

#include <set>

#include "mirror/amodel.hpp"
#include "mirror/ceo.hpp"
#include "mirror/graphsum.hpp"

namespace mirror {

namespace {

bool recursion_supported(int g, int n) {
  static const std::set<std::pair<int, int>> s{{0, 3}, {1, 1}, {0, 4}, {1, 2}};
  return s.count({g, n}) != 0;
}

}  // namespace

std::string f_source(int g, int) { return g <= 1 ? "localization" : "graph-sum"; }

std::string w_source(int g, int n) {
  if (g == 0 && n <= 2) return "closed-form";
  return recursion_supported(g, n) ? "recursion" : "graph-sum";
}

XLaurent compute_f(int g, int n, const Context& ctx) {
  if (g <= 1) return assemble_F(g, n, ctx);
  return assemble_graphsum(g, n, graphsum_input(ctx, 3 * g - 3 + n + 2), Side::A);
}

XLaurent compute_w(int g, int n, const Context& ctx) {
  if (g == 0 && n == 1) return w01(ctx);
  if (g == 0 && n == 2) return w02(ctx);
  if (recursion_supported(g, n)) {
    BranchData bd = branch_points(ctx, hx_guard(ctx), ceo_zorder(g, n));
    BergmanTable bt(bd, ceo_bergman_degree(g, n));
    return ceo_w(ceo_direct(g, n, bd, bt), bd, ctx);
  }
  return assemble_graphsum(g, n, graphsum_input(ctx, 3 * g - 3 + n + 2), Side::BRecursion);
}

}  // namespace mirror
