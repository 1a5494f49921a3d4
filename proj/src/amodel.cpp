#include "mirror/amodel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mirror/intersect.hpp"
#include "mirror/parallel.hpp"

namespace mirror {

namespace {

using Edge = std::array<int, 3>;

// ---- graph canonical forms ----

std::vector<int> encode(const DecoratedGraph& gr, const std::vector<int>& perm) {
  int V = static_cast<int>(gr.label.size());
  std::vector<int> inv(V);
  for (int i = 0; i < V; ++i) inv[perm[i]] = i;
  std::vector<int> key{V};
  for (int n = 0; n < V; ++n) {
    key.push_back(gr.label[inv[n]]);
    key.push_back(gr.genus[inv[n]]);
  }
  std::vector<Edge> es;
  for (const auto& e : gr.edges) {
    int u = perm[e[0]], v = perm[e[1]];
    es.push_back({std::min(u, v), std::max(u, v), e[2]});
  }
  std::sort(es.begin(), es.end());
  for (const auto& e : es) key.insert(key.end(), e.begin(), e.end());
  for (int a : gr.attach) key.push_back(perm[a]);
  key.insert(key.end(), gr.attach_degree.begin(), gr.attach_degree.end());
  return key;
}

DecoratedGraph permuted(const DecoratedGraph& gr, const std::vector<int>& perm) {
  DecoratedGraph r = gr;
  int V = static_cast<int>(gr.label.size());
  for (int i = 0; i < V; ++i) {
    r.label[perm[i]] = gr.label[i];
    r.genus[perm[i]] = gr.genus[i];
  }
  for (auto& e : r.edges) {
    int u = perm[e[0]], v = perm[e[1]];
    e = {std::min(u, v), std::max(u, v), e[2]};
  }
  std::sort(r.edges.begin(), r.edges.end());
  for (auto& a : r.attach) a = perm[a];
  return r;
}

// Puts the graph in canonical vertex order and fills in |Aut|.
std::vector<int> canonicalize(DecoratedGraph& gr) {
  int V = static_cast<int>(gr.label.size());
  std::vector<int> perm(V), best_perm;
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  int count = 0;
  do {
    auto k = encode(gr, perm);
    if (best.empty() || k < best) {
      best = std::move(k);
      best_perm = perm;
      count = 1;
    } else if (k == best) {
      ++count;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  gr = permuted(gr, best_perm);
  int aut = count;
  for (size_t i = 0; i < gr.edges.size();) {
    size_t j = i;
    while (j < gr.edges.size() && gr.edges[j] == gr.edges[i]) ++j;
    aut *= static_cast<int>(factorial(static_cast<int>(j - i)).get_num().get_si());
    i = j;
  }
  gr.aut = aut;
  return best;
}

bool connected(int V, const std::vector<Edge>& edges) {
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges) parent[find(e[0])] = find(e[1]);
  for (int i = 1; i < V; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

// Calls f on every vector of n nonnegative (or positive) parts summing to total.
void for_each_composition(int n, int total, bool positive, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> parts(n);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      if (left < (positive ? 1 : 0)) return;
      parts[i] = left;
      f(parts);
      return;
    }
    for (int a = positive ? 1 : 0; a <= left; ++a) {
      parts[i] = a;
      rec(i + 1, left - a);
    }
  };
  if (n == 0) {
    if (total == 0) f(parts);
    return;
  }
  rec(0, total);
}

// Nondecreasing index sequences of length k into [0, m).
void for_each_multiset(int m, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int i, int from) {
    if (i == k) {
      f(idx);
      return;
    }
    for (int a = from; a < m; ++a) {
      idx[i] = a;
      rec(i + 1, a);
    }
  };
  rec(0, 0);
}

// required[j] is the label the j-th attachment must sit on, or 0 for any.
std::vector<DecoratedGraph> enumerate_impl(int g, int d, const std::vector<int>& required,
                                           const std::vector<int>& degrees) {
  if (g < 0 || d < 0) return {};
  std::map<std::vector<int>, DecoratedGraph> found;
  int h = static_cast<int>(required.size());
  int vmax = d == 0 ? 1 : d + 1;
  for (int V = 1; V <= vmax; ++V)
    for (int G = 0; G <= g; ++G) {
      int E = V - 1 + g - G;
      if (E < 0 || E > d || ((d == 0) != (E == 0))) continue;
      // Vertices are sorted by (label, genus) without loss of generality.
      for (int n1 = 0; n1 <= V; ++n1) {
        std::vector<int> label(V);
        for (int i = 0; i < V; ++i) label[i] = i < n1 ? 1 : 2;
        std::vector<std::array<int, 2>> pairs;
        for (int u = 0; u < V; ++u)
          for (int v = u + 1; v < V; ++v)
            if (label[u] != label[v]) pairs.push_back({u, v});
        if (E > 0 && pairs.empty()) continue;
        for_each_composition(V, G, false, [&](const std::vector<int>& genus) {
          for (int i = 1; i < V; ++i)
            if (label[i] == label[i - 1] && genus[i] < genus[i - 1]) return;
          for_each_multiset(static_cast<int>(pairs.size()), E, [&](const std::vector<int>& pidx) {
            std::vector<Edge> shape;
            for (int p : pidx) shape.push_back({pairs[p][0], pairs[p][1], 0});
            if (!connected(V, shape)) return;
            for_each_composition(E, d, true, [&](const std::vector<int>& degs) {
              std::vector<Edge> edges = shape;
              for (int e = 0; e < E; ++e) edges[e][2] = degs[e];
              std::vector<int> attach(h);
              std::function<void(int)> place = [&](int j) {
                if (j == h) {
                  DecoratedGraph gr{label, genus, edges, attach, degrees, 1};
                  auto key = canonicalize(gr);
                  found.emplace(std::move(key), std::move(gr));
                  return;
                }
                for (int v = 0; v < V; ++v) {
                  if (required[j] != 0 && label[v] != required[j]) continue;
                  attach[j] = v;
                  place(j + 1);
                }
              };
              place(0);
            });
          });
        });
      }
    }
  std::vector<DecoratedGraph> out;
  for (auto& [k, gr] : found) out.push_back(std::move(gr));
  return out;
}

// ---- vertex integrals ----

// Sum over heights of prod_f coef[f][a_f] times the psi (or lambda_1 psi) number.
NF height_sum(int g, const std::vector<std::vector<NF>>& coef, int total, bool lambda1) {
  NF acc;
  int n = static_cast<int>(coef.size());
  if (total < 0) return acc;
  for_each_composition(n, total, false, [&](const std::vector<int>& a) {
    Rat num = lambda1 ? hodge_lambda1_number(g, a) : psi_number(g, a);
    if (num == 0) return;
    NF term(num);
    for (int f = 0; f < n; ++f) term *= coef[f][a[f]];
    acc += term;
  });
  return acc;
}

// Integral over a stable vertex of h(p, g) times the flag series coef[f][a] psi_f^a.
NF stable_vertex(int g, const NF& wp, const std::vector<std::vector<NF>>& coef) {
  int n = static_cast<int>(coef.size());
  NF inv_w = wp.inverse();
  if (g == 0) return inv_w * height_sum(0, coef, n - 3, false);
  if (g == 1) return height_sum(1, coef, n, false) - inv_w * height_sum(1, coef, n - 1, true);
  throw std::domain_error("oracle limit: direct localization supports vertex genus <= 1 only");
}

// Coefficients x^{-a-1-shift} for a = 0..amax.
std::vector<NF> flag_series(const NF& x, int shift, int amax) {
  std::vector<NF> c(amax + 1);
  NF inv = x.inverse();
  NF cur = inv.pow(1 + shift);
  for (int a = 0; a <= amax; ++a) {
    c[a] = cur;
    cur *= inv;
  }
  return c;
}

NF invariant_sum(const std::vector<DecoratedGraph>& graphs, const std::function<NF(const DecoratedGraph&)>& weight) {
  std::vector<NF> parts(graphs.size());
  parallel_for(graphs.size(), [&](size_t i) { parts[i] = weight(graphs[i]) * NF(Rat(1) / graphs[i].aut); });
  NF acc;
  for (const auto& p : parts) acc += p;
  return acc;
}

void check_windings(const std::vector<int>& mu) {
  if (mu.empty()) throw std::invalid_argument("open invariant needs at least one boundary");
  for (int m : mu)
    if (m == 0) throw std::invalid_argument("winding numbers must be nonzero");
}

}  // namespace

NF disk_factor(int alpha, int mu) {
  if (mu <= 0) throw std::invalid_argument("disk_factor: winding must be positive");
  Rat r = Rat(1) / factorial(mu);
  if (mu >= 2) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(mu), static_cast<unsigned long>(mu - 2));
    r *= pw;
  }
  if (alpha == 1 && mu % 2 == 0) r = -r;
  return NF::s_pow(2 - mu, QZ(r));
}

NF fixed_point_weight(int alpha) { return alpha == 1 ? -NF::s_pow(1) : NF::s_pow(1); }

NF edge_factor(int d) {
  Rat r = Rat(1) / (factorial(d) * factorial(d));
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(2 * d));
  r *= pw;
  if (d % 2) r = -r;
  return NF::s_pow(-2 * d, QZ(r));
}

std::string DecoratedGraph::dump() const {
  std::ostringstream os;
  os << "graph aut=" << aut << "\n";
  for (size_t v = 0; v < label.size(); ++v) os << "  v" << v << " [label=" << label[v] << ", genus=" << genus[v] << "]\n";
  for (const auto& e : edges) os << "  v" << e[0] << " -- v" << e[1] << " [degree=" << e[2] << "]\n";
  for (size_t j = 0; j < attach.size(); ++j) {
    os << "  leaf" << j + 1 << " -- v" << attach[j];
    if (!attach_degree.empty()) os << " [degree=" << attach_degree[j] << "]";
    os << "\n";
  }
  return os.str();
}

std::vector<DecoratedGraph> enumerate_decorated(int g, int d, const std::vector<int>& mu) {
  check_windings(mu);
  std::vector<int> req, deg;
  for (int m : mu) {
    req.push_back(winding_label(m));
    deg.push_back(std::abs(m));
  }
  return enumerate_impl(g, d, req, deg);
}

std::vector<DecoratedGraph> enumerate_marked(int g, int d, int markings) {
  return enumerate_impl(g, d, std::vector<int>(markings, 0), {});
}

NF localization_weight(const DecoratedGraph& gr) {
  int V = static_cast<int>(gr.label.size());
  NF wt(1);
  for (const auto& e : gr.edges) wt *= edge_factor(e[2]) * NF(Rat(1, 1) / e[2]);
  for (size_t j = 0; j < gr.attach.size(); ++j) wt *= disk_factor(gr.label[gr.attach[j]], gr.attach_degree[j]);
  for (int v = 0; v < V; ++v) {
    NF wp = fixed_point_weight(gr.label[v]);
    // flags as (weight, extra inverse power)
    std::vector<std::pair<NF, int>> flags;
    for (const auto& e : gr.edges)
      for (int end = 0; end < 2; ++end)
        if (e[end] == v) {
          flags.push_back({wp * NF(rat(1, e[2])), 0});
          wt *= wp;
        }
    for (size_t j = 0; j < gr.attach.size(); ++j)
      if (gr.attach[j] == v) flags.push_back({wp * NF(rat(1, gr.attach_degree[j])), 1});
    int n = static_cast<int>(flags.size());
    NF inv_w = wp.inverse();
    if (gr.genus[v] == 0 && n == 1) {
      wt *= inv_w * flags[0].first.pow(1 - flags[0].second);
    } else if (gr.genus[v] == 0 && n == 2) {
      const auto& [x1, k1] = flags[0];
      const auto& [x2, k2] = flags[1];
      wt *= inv_w * x1.pow(-k1) * x2.pow(-k2) * (x1 + x2).inverse();
    } else {
      std::vector<std::vector<NF>> coef;
      for (const auto& [x, k] : flags) coef.push_back(flag_series(x, k, n));
      wt *= stable_vertex(gr.genus[v], wp, coef);
    }
    if (wt.is_zero()) return wt;
  }
  return wt;
}

NF open_invariant(int g, int d, const std::vector<int>& mu) {
  check_windings(mu);
  if (g > 1) throw std::domain_error("oracle limit: direct localization supports genus <= 1 only");
  return invariant_sum(enumerate_decorated(g, d, mu), localization_weight);
}

NF f_via_open_descendant(int g, int d, const std::vector<int>& mu) {
  check_windings(mu);
  if (g > 1) throw std::domain_error("oracle limit: direct localization supports genus <= 1 only");
  int h = static_cast<int>(mu.size());
  NF disks(1);
  std::vector<NF> c(h);  // descendant denominators (s/mu)((s/mu) - psi)
  for (int j = 0; j < h; ++j) {
    disks *= disk_factor(winding_label(mu[j]), std::abs(mu[j]));
    c[j] = NF::s_pow(1) * NF(rat(1, mu[j]));
  }
  // Degree zero, genus zero, one or two markings: the unstable conventions
  // <g/(z - psi)> = z int g and <g1/(z1-psi), g2/(z2-psi)> = int g1 g2/(z1+z2).
  if (d == 0 && g == 0 && h <= 2) {
    NF integral;
    if (h == 1) {
      integral = c[0].inverse() * c[0] * delta_classical(winding_label(mu[0])).inverse();
    } else if (winding_label(mu[0]) == winding_label(mu[1])) {
      integral = (c[0] * c[1] * (c[0] + c[1])).inverse() * delta_classical(winding_label(mu[0])).inverse();
    }
    return disks * integral;
  }
  auto weight = [&](const DecoratedGraph& gr) {
    int V = static_cast<int>(gr.label.size());
    for (int j = 0; j < h; ++j)
      if (gr.label[gr.attach[j]] != winding_label(mu[j])) return NF();  // phi_alpha restricted to p_beta
    NF wt(1);
    for (const auto& e : gr.edges) wt *= edge_factor(e[2]) * NF(Rat(1, 1) / e[2]);
    for (int v = 0; v < V; ++v) {
      NF wp = fixed_point_weight(gr.label[v]);
      std::vector<NF> edge_w;
      std::vector<int> marks;
      for (const auto& e : gr.edges)
        for (int end = 0; end < 2; ++end)
          if (e[end] == v) {
            edge_w.push_back(wp * NF(rat(1, e[2])));
            wt *= wp;
          }
      for (int j = 0; j < h; ++j)
        if (gr.attach[j] == v) marks.push_back(j);
      int n = static_cast<int>(edge_w.size() + marks.size());
      NF inv_w = wp.inverse();
      if (gr.genus[v] == 0 && n == 1) {
        wt *= inv_w * edge_w[0];
      } else if (gr.genus[v] == 0 && n == 2 && marks.empty()) {
        wt *= inv_w * (edge_w[0] + edge_w[1]).inverse();
      } else if (gr.genus[v] == 0 && n == 2) {
        // int_{M_{0,2}} psi_2^a/(w - psi_1) = (-w)^a, summed against c^{-a-2}
        const NF& cj = c[marks[0]];
        wt *= inv_w * (cj * (cj + edge_w[0])).inverse();
      } else {
        std::vector<std::vector<NF>> coef;
        for (const auto& x : edge_w) coef.push_back(flag_series(x, 0, n));
        for (int j : marks) coef.push_back(flag_series(c[j], 1, n));
        wt *= stable_vertex(gr.genus[v], wp, coef);
      }
      if (wt.is_zero()) return wt;
    }
    return wt;
  };
  return disks * invariant_sum(enumerate_marked(g, d, h), weight);
}

XLaurent xi_tilde(int alpha, int k, int mmax) {
  XLaurent r(1);
  for (int m = 1; m <= mmax; ++m) {
    int d = alpha == 2 ? m : -m;
    NF c = (NF(d) * NF::s_pow(-1)).pow(k + 2) * disk_factor(alpha, m);
    r.set({d}, QS(c, kExact));
  }
  return r;
}

XLaurent f01_bessel(const Context& ctx) {
  XLaurent r(1);
  int P = ctx.pprec();
  for (int m = 1; m <= ctx.m_max && m <= ctx.p_max; ++m)
    for (int d : {m, -m}) r.set({d}, bessel_I(d, P) * (NF::s_pow(1) * NF(rat(1, d * d))));
  return r;
}

namespace {

// Sorted winding tuples of length h with entries in [-M, M] \ {0} and sum |mu| <= pmax.
std::vector<std::vector<int>> sorted_windings(int h, int M, int pmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int from, int budget) {
    if (static_cast<int>(cur.size()) == h) {
      out.push_back(cur);
      return;
    }
    for (int m = from; m <= M; ++m) {
      if (m == 0 || std::abs(m) > budget) continue;
      cur.push_back(m);
      rec(m, budget - std::abs(m));
      cur.pop_back();
    }
  };
  rec(-M, pmax);
  return out;
}

int total_winding(const std::vector<int>& mu) {
  int t = 0;
  for (int m : mu) t += std::abs(m);
  return t;
}

}  // namespace

XLaurent assemble_F(int g, int h, const Context& ctx, ARoute route) {
  if (h <= 0) throw std::invalid_argument("assemble_F: at least one boundary");
  int P = ctx.pprec();
  struct Task {
    std::vector<int> mu;
    int d;
    NF value;
  };
  std::vector<Task> tasks;
  for (const auto& mu : sorted_windings(h, ctx.m_max, ctx.p_max))
    for (int d = 0; 2 * d + total_winding(mu) <= ctx.p_max; ++d) tasks.push_back({mu, d, NF()});
  auto eval = route == ARoute::Localization ? open_invariant : f_via_open_descendant;
  // Parallelism lives inside the per-invariant graph sums.
  for (auto& t : tasks) t.value = eval(g, t.d, t.mu);
  XLaurent r(h);
  for (const auto& t : tasks) {
    std::vector<int> perm = t.mu;
    QS term = QS::monomial(t.value, 2 * t.d + total_winding(t.mu), P);
    do {
      if (!r.has(perm)) r.set(perm, QS::zero(P));
      r.add(perm, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return r;
}

XLaurent f02_from_s(const Context& ctx) {
  CanonicalData cd = canonical_data(ctx);
  int P = cd.pprec;
  int M = std::min(ctx.m_max, ctx.p_max);
  std::map<std::pair<int, int>, QS> A;  // (alpha, mu)
  for (int a = 1; a <= 2; ++a)
    for (int m = -M; m <= M; ++m) {
      if (m == 0) continue;
      int beta = winding_label(m);
      NF pre = disk_factor(beta, std::abs(m)) * (NF(m) * NF::s_pow(-1)).pow(2);
      A[{a, m}] = s_hat_at(cd, a, beta, m) * pre;
    }
  XLaurent r(2);
  for (int m1 = -M; m1 <= M; ++m1)
    for (int m2 = -M; m2 <= M; ++m2) {
      if (m1 == 0 || m2 == 0 || m1 + m2 == 0 || std::abs(m1) + std::abs(m2) > ctx.p_max) continue;
      QS sum = A[{1, m1}] * A[{1, m2}] + A[{2, m1}] * A[{2, m2}];
      r.set({m1, m2}, (sum * (NF::s_pow(1) * NF(rat(1, m1 + m2)))).truncated(P));
    }
  return r;
}

std::string invariants_csv(int g, int h, const Context& ctx) {
  std::ostringstream os;
  os << "g,d,mu,value\n";
  for (const auto& mu : sorted_windings(h, ctx.m_max, ctx.p_max))
    for (int d = 0; 2 * d + total_winding(mu) <= ctx.p_max; ++d) {
      os << g << "," << d << ",";
      for (size_t j = 0; j < mu.size(); ++j) os << (j ? ";" : "") << mu[j];
      os << ",\"" << open_invariant(g, d, mu).str() << "\"\n";
    }
  return os.str();
}

}  // namespace mirror
