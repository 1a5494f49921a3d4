#include "mirror/graphsum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mirror/amodel.hpp"
#include "mirror/intersect.hpp"
#include "mirror/parallel.hpp"

namespace mirror {

int StableGraph::valence(int v) const {
  int val = dilaton[v];
  for (const auto& e : edges) val += (e[0] == v) + (e[1] == v);
  for (int a : leaf) val += a == v;
  return val;
}

std::string StableGraph::dump() const {
  std::ostringstream os;
  os << "graph aut=" << aut << " {";
  for (size_t v = 0; v < genus.size(); ++v)
    os << " v" << v << "[g=" << genus[v] << ",beta=" << label[v] << ",dil=" << dilaton[v] << "]";
  for (const auto& e : edges) os << " v" << e[0] << "--v" << e[1] << ";";
  for (size_t j = 0; j < leaf.size(); ++j) os << " l" << j + 1 << "->v" << leaf[j] << ";";
  os << " }";
  return os.str();
}

namespace {

std::vector<int> encode(const StableGraph& gr, const std::vector<int>& perm) {
  int V = static_cast<int>(gr.genus.size());
  std::vector<int> inv(V);
  for (int i = 0; i < V; ++i) inv[perm[i]] = i;
  std::vector<int> key{V};
  for (int n = 0; n < V; ++n) {
    key.push_back(gr.genus[inv[n]]);
    key.push_back(gr.label[inv[n]]);
    key.push_back(gr.dilaton[inv[n]]);
  }
  std::vector<std::array<int, 2>> es;
  for (const auto& e : gr.edges) {
    int u = perm[e[0]], v = perm[e[1]];
    es.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(es.begin(), es.end());
  for (const auto& e : es) key.insert(key.end(), e.begin(), e.end());
  for (int a : gr.leaf) key.push_back(perm[a]);
  return key;
}

void canonicalize(StableGraph& gr) {
  int V = static_cast<int>(gr.genus.size());
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
  StableGraph r = gr;
  for (int i = 0; i < V; ++i) {
    r.genus[best_perm[i]] = gr.genus[i];
    r.label[best_perm[i]] = gr.label[i];
    r.dilaton[best_perm[i]] = gr.dilaton[i];
  }
  for (auto& e : r.edges) {
    int u = best_perm[e[0]], v = best_perm[e[1]];
    e = {std::min(u, v), std::max(u, v)};
  }
  std::sort(r.edges.begin(), r.edges.end());
  for (auto& a : r.leaf) a = best_perm[a];
  long aut = count;
  for (size_t i = 0; i < r.edges.size();) {
    size_t j = i;
    while (j < r.edges.size() && r.edges[j] == r.edges[i]) ++j;
    aut *= factorial(static_cast<int>(j - i)).get_num().get_si();
    if (r.edges[i][0] == r.edges[i][1]) aut <<= (j - i);
    i = j;
  }
  for (int m : r.dilaton) aut *= factorial(m).get_num().get_si();
  r.aut = static_cast<int>(aut);
  gr = std::move(r);
}

bool connected(int V, const std::vector<std::array<int, 2>>& edges) {
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges) parent[find(e[0])] = find(e[1]);
  for (int i = 1; i < V; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

}  // namespace

std::vector<StableGraph> enumerate_stable(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("enumerate_stable: unstable (g, n)");
  std::set<std::vector<int>> seen;
  std::vector<StableGraph> out;
  for (int V = 1; V <= 2 * g - 2 + n; ++V) {
    std::vector<int> gv(V, 0);
    std::function<void(int, int)> genera = [&](int i, int left) {
      if (i < V) {
        for (int a = 0; a <= left; ++a) {
          gv[i] = a;
          genera(i + 1, left - a);
        }
        return;
      }
      int E = g - std::accumulate(gv.begin(), gv.end(), 0) + V - 1;
      std::vector<std::array<int, 2>> pairs;
      for (int u = 0; u < V; ++u)
        for (int v = u; v < V; ++v) pairs.push_back({u, v});
      std::vector<int> pick(E);
      std::function<void(int, int)> edges = [&](int i2, int from) {
        if (i2 < E) {
          for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
            pick[i2] = p;
            edges(i2 + 1, p);
          }
          return;
        }
        std::vector<std::array<int, 2>> es;
        for (int p : pick) es.push_back(pairs[p]);
        if (!connected(V, es)) return;
        std::vector<int> leaf(n, 0);
        long total = 1;
        for (int j = 0; j < n; ++j) total *= V;
        for (long code = 0; code < total; ++code) {
          long c = code;
          for (int j = 0; j < n; ++j) {
            leaf[j] = static_cast<int>(c % V);
            c /= V;
          }
          StableGraph base{gv, std::vector<int>(V, 1), std::vector<int>(V, 0), es, leaf, 1};
          std::vector<int> budget(V);
          bool stable = true;
          for (int v = 0; v < V; ++v) {
            int val = base.valence(v);
            if (2 * gv[v] - 2 + val <= 0) stable = false;
            budget[v] = 3 * gv[v] - 3 + val;
          }
          if (!stable) continue;
          for (int lab = 0; lab < (1 << V); ++lab) {
            std::vector<int> dil(V, 0);
            std::function<void(int)> dils = [&](int v) {
              if (v < V) {
                for (int m = 0; m <= budget[v]; ++m) {
                  dil[v] = m;
                  dils(v + 1);
                }
                return;
              }
              StableGraph gr = base;
              for (int u = 0; u < V; ++u) gr.label[u] = 1 + ((lab >> u) & 1);
              gr.dilaton = dil;
              canonicalize(gr);
              std::vector<int> id(V);
              std::iota(id.begin(), id.end(), 0);
              if (seen.insert(encode(gr, id)).second) out.push_back(std::move(gr));
            };
            dils(0);
          }
        }
      };
      edges(0, 0);
    };
    genera(0, g);
  }
  return out;
}

// ---- weights ----

QS edge_weight(const ZMatrix& r, int a, int b, int k, int l) {
  int top = k + l + 1;
  auto num = [&](int i, int j) {
    QS acc = QS::zero(kExact);
    if (i == 0 && j == 0 && a == b) acc += QS(NF(1), kExact);
    for (int c = 0; c < 2; ++c) {
      QS t = r[c][a - 1].coeff(i) * r[c][b - 1].coeff(j);
      acc -= ((i + j) % 2 == 0) ? t : -t;
    }
    return acc;
  };
  for (int m = 0; m <= top; ++m) {
    QS d = QS::zero(kExact);
    for (int j = 0; j <= m; ++j) d += (j % 2 == 0) ? num(m - j, j) : -num(m - j, j);
    if (!d.is_zero()) throw std::logic_error("edge_weight: numerator not divisible by z + w");
  }
  QS q = QS::zero(kExact);
  for (int t = 0; t <= l; ++t) q += (t % 2 == 0) ? num(k + 1 + t, l - t) : -num(k + 1 + t, l - t);
  return q;
}

QS dilaton_weight_a(const ZMatrix& r, const BranchData& bd, int beta, int k) {
  if (k < 2) throw std::invalid_argument("dilaton_weight: height must be at least 2");
  QS acc = QS::zero(kExact);
  for (int a = 0; a < 2; ++a) acc += r[a][beta - 1].coeff(k - 1) * bd.sqrt_delta[a].inverse();
  return (k - 1) % 2 == 0 ? -acc : acc;
}

QS dilaton_weight_b(const BranchData& bd, int beta, int k) {
  if (k < 2) throw std::invalid_argument("dilaton_weight: height must be at least 2");
  return h_check(bd, beta, k) * (sqrt_m2().inverse() * NF(-1));
}

GraphSumInput graphsum_input(const Context& ctx, int max_height) {
  GraphSumInput in;
  in.ctx = ctx;
  int zorder = 2 * max_height + 8;
  in.bd = branch_points(ctx, hx_guard(ctx), zorder);
  in.bt = BergmanTable(in.bd, 2 * max_height + 2);
  in.r = r_check(in.bd, max_height + 2);
  in.cd = canonical_data(ctx);
  return in;
}

XLaurent open_leaf_bare(const GraphSumInput& in, int gamma, int k) {
  XLaurent r(1);
  int P = in.ctx.pprec();
  for (int mu = -in.ctx.m_max; mu <= in.ctx.m_max; ++mu) {
    if (mu == 0 || std::abs(mu) >= P) continue;
    int alpha = winding_label(mu);
    NF c = (NF(mu) * NF::s_pow(-1)).pow(k + 2) * disk_factor(alpha, std::abs(mu));
    r.set({mu}, (s_hat_at(in.cd, gamma, alpha, mu) * c).truncated(P));
  }
  return r;
}

XLaurent open_leaf_a(const GraphSumInput& in, int beta, int k) {
  XLaurent r(1);
  for (int gamma = 1; gamma <= 2; ++gamma)
    for (int i = 0; i <= k; ++i) {
      QS rc = in.r[gamma - 1][beta - 1].coeff(k - i);
      if ((k - i) % 2) rc = -rc;
      XLaurent t = open_leaf_bare(in, gamma, i);
      r += t.map([&](const XLaurent::Key&, const QS& v) { return (v * rc).truncated(in.ctx.pprec()); });
    }
  return r;
}

XLaurent open_leaf_b(const GraphSumInput& in, int beta, int k) {
  return hx_form(dxi(in.bd, beta, k), in.ctx).scaled(sqrt_m2().inverse());
}

namespace {

struct HalfEdge {
  int kind;  // 0 edge end, 1 ordinary leaf, 2 dilaton
  int id;
  int end;
};

// Coefficients keyed by (k_1, ..., k_n) of the leaf heights; leaf labels are
// fixed by the graph.
using LeafTable = std::map<std::vector<int>, QS>;

LeafTable graph_weight(const StableGraph& gr, const GraphSumInput& in, Side side) {
  int V = static_cast<int>(gr.genus.size());
  int n = static_cast<int>(gr.leaf.size());
  std::vector<std::vector<HalfEdge>> hes(V);
  for (size_t e = 0; e < gr.edges.size(); ++e) {
    hes[gr.edges[e][0]].push_back({0, static_cast<int>(e), 0});
    hes[gr.edges[e][1]].push_back({0, static_cast<int>(e), 1});
  }
  for (int j = 0; j < n; ++j) hes[gr.leaf[j]].push_back({1, j, 0});
  for (int v = 0; v < V; ++v)
    for (int m = 0; m < gr.dilaton[v]; ++m) hes[v].push_back({2, m, 0});

  std::vector<QS> vfac(V);
  for (int v = 0; v < V; ++v) {
    int beta = gr.label[v];
    int e = 2 * gr.genus[v] - 2 + gr.valence(v);
    // A: sqrt(Delta)^e.  B: (h_1/sqrt 2)^{-e}.
    QS base = side == Side::A ? in.bd.sqrt_delta[beta - 1]
                              : (in.bd.bp[beta - 1].h[1] * NF(rat(1, 2)) * NF::sqrt2()).inverse();
    QS f(NF(1), kExact);
    for (int i = 0; i < e; ++i) f = f * base;
    vfac[v] = f;
  }

  std::vector<std::array<int, 2>> eh(gr.edges.size());
  std::vector<int> lh(n);
  LeafTable out;
  std::function<void(int, QS)> visit = [&](int v, QS acc) {
    if (v == V) {
      for (size_t e = 0; e < gr.edges.size(); ++e) {
        int a = gr.label[gr.edges[e][0]], b = gr.label[gr.edges[e][1]];
        QS w = side == Side::A ? edge_weight(in.r, a, b, eh[e][0], eh[e][1])
                               : bergman_check(in.bt, a, b, eh[e][0], eh[e][1]);
        acc = acc * w;
        if (acc.is_zero()) return;
      }
      auto [it, fresh] = out.emplace(lh, acc);
      if (!fresh) it->second += acc;
      return;
    }
    const auto& h = hes[v];
    int budget = 3 * gr.genus[v] - 3 + static_cast<int>(h.size());
    std::vector<int> parts(h.size());
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
      if (i == h.size()) {
        if (left != 0) return;
        Rat t = psi_number(gr.genus[v], parts);
        if (t == 0) return;
        QS w = vfac[v] * NF(t);
        for (size_t j = 0; j < h.size(); ++j) {
          const HalfEdge& he = h[j];
          if (he.kind == 0) eh[he.id][he.end] = parts[j];
          if (he.kind == 1) lh[he.id] = parts[j];
          if (he.kind == 2)
            w = w * (side == Side::A ? dilaton_weight_a(in.r, in.bd, gr.label[v], parts[j])
                                     : dilaton_weight_b(in.bd, gr.label[v], parts[j]));
        }
        visit(v + 1, acc * w);
        return;
      }
      int lo = h[i].kind == 2 ? 2 : 0;
      for (int a = lo; a <= left; ++a) {
        parts[i] = a;
        rec(i + 1, left - a);
      }
    };
    if (budget >= 0) rec(0, budget);
  };
  visit(0, QS(NF(rat(1, gr.aut)), kExact));
  return out;
}

// Winding tuples in [-M, M] \ {0} with sum |mu| <= pmax.
void for_each_winding(int n, int M, int pmax, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> mu(n);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      f(mu);
      return;
    }
    for (int m = -M; m <= M; ++m) {
      if (m == 0 || used + std::abs(m) > pmax) continue;
      mu[i] = m;
      rec(i + 1, used + std::abs(m));
    }
  };
  rec(0, 0);
}

}  // namespace

FormTensor graphsum_table(int g, int n, const GraphSumInput& in, Side side) {
  auto graphs = enumerate_stable(g, n);
  std::vector<LeafTable> tables(graphs.size());
  parallel_for(graphs.size(), [&](size_t i) { tables[i] = graph_weight(graphs[i], in, side); });

  FormTensor total;
  for (size_t i = 0; i < graphs.size(); ++i)
    for (const auto& [heights, w] : tables[i]) {
      FormKey key;
      int parity = side == Side::B ? g - 1 + n : side == Side::BRecursion ? n : 0;
      for (int j = 0; j < n; ++j) {
        key.push_back({graphs[i].label[graphs[i].leaf[j]], heights[j]});
        if (side == Side::BRecursion) parity += heights[j];
      }
      QS v = parity % 2 ? -w : w;
      auto [it, fresh] = total.emplace(key, v);
      if (!fresh) it->second += v;
    }
  for (auto i = total.begin(); i != total.end();) i = i->second.is_zero() ? total.erase(i) : std::next(i);
  return total;
}

XLaurent assemble_graphsum(int g, int n, const GraphSumInput& in, Side side) {
  FormTensor total = graphsum_table(g, n, in, side);
  std::map<std::array<int, 2>, XLaurent> leaves;
  for (const auto& [key, w] : total)
    for (const auto& lk : key) {
      if (!leaves.count(lk))
        leaves.emplace(lk, side == Side::A ? open_leaf_a(in, lk[0], lk[1]) : open_leaf_b(in, lk[0], lk[1]));
    }

  int P = in.ctx.pprec();
  XLaurent r(n);
  for_each_winding(n, in.ctx.m_max, in.ctx.p_max, [&](const std::vector<int>& mu) {
    QS acc = QS::zero(P);
    for (const auto& [key, w] : total) {
      QS t = w.truncated(P);
      for (int j = 0; j < n && !t.is_zero(); ++j) t = t * leaves.at(key[j]).coeff({mu[j]});
      acc += t;
    }
    r.set(mu, acc.truncated(P));
  });
  return r;
}

}  // namespace mirror
