#include <gmp.h>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mirror/amodel.hpp"
#include "mirror/graphsum.hpp"
#include "mirror/intersect.hpp"
#include "mirror/pipeline.hpp"
#include <functional>

using namespace mirror;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string action = "compute";
  int genus = 0;
  int boundaries = 1;
  int q_order = 6;
  int max_winding = 3;
  int z_order = 3;
  std::string mode = "amodel";
  std::string output;
  std::string format = "json";
  std::string config;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& c) {
  if (c.boundaries <= 0) throw ConfigError("--boundaries must be positive");
  if (c.genus < 0) throw ConfigError("--genus must be non-negative");
  if (c.q_order < 1) throw ConfigError("--q-order must be at least 1");
  if (c.max_winding < 1) throw ConfigError("--max-winding must be at least 1");
  if (c.z_order < 1) throw ConfigError("--z-order must be at least 1");
  if (c.boundaries > c.q_order) throw ConfigError("--q-order below the number of boundaries leaves no coefficients");
}

Context context(const RunConfig& c) {
  Context ctx;
  ctx.p_max = c.q_order;
  ctx.m_max = c.max_winding;
  ctx.z_max = c.z_order;
  return ctx;
}

json provenance(const RunConfig& c, const std::string& potential, const std::string& source) {
  return {{"tool", "mirror"},
          {"version", kVersion},
          {"gmp", gmp_version},
          {"genus", c.genus},
          {"boundaries", c.boundaries},
          {"q_order", c.q_order},
          {"max_winding", c.max_winding},
          {"z_order", c.z_order},
          {"mode", c.mode},
          {"potential", potential},
          {"source", source}};
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + c.output);
  out << text;
}

int cmd_compute(const RunConfig& c) {
  Context ctx = context(c);
  bool a = c.mode == "amodel";
  XLaurent t = a ? compute_f(c.genus, c.boundaries, ctx) : compute_w(c.genus, c.boundaries, ctx);
  std::string potential = a ? "F" : "W";
  std::string source = a ? f_source(c.genus, c.boundaries) : w_source(c.genus, c.boundaries);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "# " << provenance(c, potential, source).dump() << "\n" << xlaurent_to_csv(t);
    emit(c, os.str());
  } else {
    json j{{"provenance", provenance(c, potential, source)}, {"table", json::parse(xlaurent_to_json(t))}};
    emit(c, j.dump(1) + "\n");
  }
  return 0;
}

int cmd_compare(const RunConfig& c) {
  Context ctx = context(c);
  int g = c.genus, n = c.boundaries;
  XLaurent f = compute_f(g, n, ctx), w = compute_w(g, n, ctx);
  XLaurent expect = (g - 1) % 2 ? -w : w;
  json bad = json::array();
  std::set<XLaurent::Key> keys;
  for (const auto& [k, v] : f.terms()) keys.insert(k);
  for (const auto& [k, v] : expect.terms()) keys.insert(k);
  size_t checked = 0;
  for (const auto& k : keys) {
    QS fk = f.coeff(k), wk = expect.coeff(k);
    int P = std::min(fk.prec(), wk.prec());
    QS d = fk.truncated(P) - wk.truncated(P);
    ++checked;
    if (d.is_zero()) continue;
    json orders = json::array();
    for (size_t j = 0; j < d.raw().size(); ++j)
      if (!d.raw()[j].is_zero()) orders.push_back(d.raw_lo() + static_cast<int>(j));
    bad.push_back({{"mu", k}, {"p_orders", orders}});
  }
  json report{{"provenance", provenance(c, "F - (-1)^(g-1) W", f_source(g, n) + " vs " + w_source(g, n))},
              {"slots_checked", checked},
              {"mismatches", bad},
              {"match", bad.empty()}};
  emit(c, report.dump(1) + "\n");
  return bad.empty() ? 0 : 1;
}

int cmd_selftest(const RunConfig& c) {
  json r;
  auto run = [&](const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    try {
      ok = f();
    } catch (const std::exception&) {
      ok = false;
    }
    r[name] = ok;
  };
  Context ctx;
  ctx.p_max = 6;
  ctx.m_max = 3;
  ctx.z_max = 4;
  run("residues_vs_bessel", [] {
    for (int mu = -5; mu <= 5; ++mu) {
      if (!mu) continue;
      if (!exp_residue_mu1(mu, 11).agrees_with(bessel_general(mu, mu, 18).shifted(-mu))) return false;
      if (!exp_residue_mu2(mu, 11).agrees_with(bessel_general(mu + 1, mu, 18).shifted(-mu - 1))) return false;
    }
    return true;
  });
  run("r_unitarity", [&] {
    ZMatrix r = r_from_qde(ctx);
    return zm_is_identity(zm_mul(zm_transpose(zm_neg(r)), r));
  });
  run("quantum_differential_equation", [&] { return qde_check(s_matrix(ctx)); });
  run("psi_spot_values", [] {
    return psi_number(0, {0, 0, 0}) == 1 && psi_number(1, {1}) == rat(1, 24) && psi_number(2, {4}) == rat(1, 1152) &&
           psi_number(3, {7}) == rat(1, 82944);
  });
  run("disk_mirror", [&] { return assemble_F(0, 1, ctx).agrees_with(-w01(ctx)); });
  run("graph_weights", [&] {
    GraphSumInput in = graphsum_input(ctx, 4);
    for (int a = 1; a <= 2; ++a)
      for (int k = 2; k <= 4; ++k)
        if (!dilaton_weight_a(in.r, in.bd, a, k).agrees_with(dilaton_weight_b(in.bd, a, k))) return false;
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int k = 0; k <= 2; ++k)
          if (!edge_weight(in.r, a, b, k, 2 - k).agrees_with(bergman_check(in.bt, a, b, k, 2 - k))) return false;
    return true;
  });
  bool all = true;
  for (const auto& [k, v] : r.items()) all = all && v.get<bool>();
  emit(c, json{{"version", kVersion}, {"results", r}, {"pass", all}}.dump(1) + "\n");
  return all ? 0 : 1;
}

int cmd_dump_branch(const RunConfig& c) {
  Context ctx = context(c);
  BranchData bd = branch_points(ctx, 0, 2 * c.z_order + 6);
  BergmanTable bt(bd, 2 * c.z_order);
  emit(c, dump_branch_data(bd, bt, r_check(bd, c.z_order)));
  return 0;
}

// Values from the config file fill in every option not given on the command line.
void apply_config(CLI::App& app, RunConfig& c) {
  std::ifstream in(c.config);
  if (!in) throw ConfigError("cannot read config " + c.config);
  json j = json::parse(in);
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key) && app.count(std::string("--") + key) == 0) j.at(key).get_to(field);
  };
  take("genus", c.genus);
  take("boundaries", c.boundaries);
  take("q-order", c.q_order);
  take("max-winding", c.max_winding);
  take("z-order", c.z_order);
  take("mode", c.mode);
  take("output", c.output);
  take("format", c.format);
  if (j.contains("action") && app.count("action") == 0) j.at("action").get_to(c.action);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Open A-model and B-model potentials with winding and p-order cutoffs"};
  app.add_option("action", c.action, "compute, compare, selftest or dump-branch")
      ->check(CLI::IsMember({"compute", "compare", "selftest", "dump-branch"}));
  app.add_option("--genus", c.genus, "genus g");
  app.add_option("--boundaries", c.boundaries, "number of boundary components n");
  app.add_option("--q-order", c.q_order, "keep p-orders up to this value");
  app.add_option("--max-winding", c.max_winding, "winding cutoff |mu_j|");
  app.add_option("--z-order", c.z_order, "z-order for R and branch data");
  app.add_option("--mode", c.mode, "amodel, bmodel, compare or selftest")
      ->check(CLI::IsMember({"amodel", "bmodel", "compare", "selftest"}));
  app.add_option("-o,--output", c.output, "output path, stdout if empty");
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", c.config, "JSON file with the same keys as the flags");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!c.config.empty()) apply_config(app, c);
    if (c.action == "compute" && (c.mode == "compare" || c.mode == "selftest")) c.action = c.mode;
    if (c.action == "compare") c.mode = "compare";
    if (c.action == "selftest") return cmd_selftest(c);
    validate(c);
    if (c.action == "dump-branch") return cmd_dump_branch(c);
    if (c.action == "compare") return cmd_compare(c);
    return cmd_compute(c);
  } catch (const ConfigError& e) {
    std::cerr << "mirror: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mirror: " << e.what() << "\n";
    return 3;
  }
}
