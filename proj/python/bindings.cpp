#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mirror/intersect.hpp"
#include "mirror/pipeline.hpp"

namespace py = pybind11;
using namespace mirror;

namespace {

Context context(int q_order, int max_winding) {
  if (q_order < 1 || max_winding < 1) throw py::value_error("cutoffs must be positive");
  Context ctx;
  ctx.p_max = q_order;
  ctx.m_max = max_winding;
  return ctx;
}

void check_topology(int g, int n) {
  if (n <= 0) throw py::value_error("boundaries must be positive");
  if (g < 0) throw py::value_error("genus must be non-negative");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact open A-model and B-model potentials";

  m.def("psi_number", [](int g, std::vector<int> heights) { return rat_str(psi_number(g, std::move(heights))); },
        py::arg("genus"), py::arg("heights"));
  m.def("normal_form", [](const std::string& text) { return NF::parse(text).str(); }, py::arg("text"));

  m.def(
      "potential_json",
      [](const std::string& kind, int g, int n, int q_order, int max_winding) {
        check_topology(g, n);
        Context ctx = context(q_order, max_winding);
        XLaurent t;
        {
          py::gil_scoped_release release;
          if (kind == "F")
            t = compute_f(g, n, ctx);
          else if (kind == "W")
            t = compute_w(g, n, ctx);
          else
            throw py::value_error("kind must be 'F' or 'W'");
        }
        return xlaurent_to_json(t);
      },
      py::arg("kind"), py::arg("genus"), py::arg("boundaries"), py::arg("q_order") = 6, py::arg("max_winding") = 3);

  m.def(
      "mismatched_slots",
      [](int g, int n, int q_order, int max_winding) {
        check_topology(g, n);
        Context ctx = context(q_order, max_winding);
        std::vector<std::vector<int>> bad;
        py::gil_scoped_release release;
        XLaurent f = compute_f(g, n, ctx), w = compute_w(g, n, ctx);
        f.agrees_with((g - 1) % 2 ? -w : w, &bad);
        return bad;
      },
      py::arg("genus"), py::arg("boundaries"), py::arg("q_order") = 6, py::arg("max_winding") = 3);
}
