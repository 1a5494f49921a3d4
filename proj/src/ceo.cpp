#include "mirror/ceo.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mirror {

int ceo_bergman_degree(int g, int n) { return 4 * (3 * g - 3 + n) + 8; }
int ceo_zorder(int g, int n) { return ceo_bergman_degree(g, n) + 4; }

namespace {

using Slot = std::array<int, 2>;

bool supported(int g, int n) {
  return (g == 0 && (n == 3 || n == 4)) || (g == 1 && (n == 1 || n == 2));
}

class Recursion {
 public:
  Recursion(const BranchData& bd, const BergmanTable& bt, int nz) : bd_(bd), bt_(bt), nz_(nz) {}

  const FormTensor& omega(int g, int n) {
    auto it = memo_.find({g, n});
    if (it != memo_.end()) return it->second;
    FormTensor r;
    for (int alpha = 1; alpha <= 2; ++alpha) step(g, n, alpha, r);
    for (auto i = r.begin(); i != r.end();) i = i->second.is_zero() ? r.erase(i) : std::next(i);
    return memo_[{g, n}] = std::move(r);
  }

 private:
  // e(beta, m) at zeta_alpha as the coefficient of d zeta; with flip, at -zeta
  // including the sign of d zeta.
  ZS expand(int alpha, Slot s, bool flip) const {
    auto [beta, m] = s;
    std::vector<QS> c(nz_ + 1);
    for (int k = 0; k <= nz_; ++k) c[k] = bt_.at(alpha, beta, k, m);
    ZS f = ZS::from_coeffs(0, std::move(c), nz_ + 1);
    if (beta == alpha) f += ZS::monomial(QS(NF(m + 1), kExact), -m - 2, nz_ + 1);
    return flip ? -zs_neg(f) : f;
  }

  // -zeta^{2d-1}/(4(2d+1) H(zeta)) with log Y - log Y^ = -2 zeta H(zeta).
  ZS kernel(int alpha, int d) {
    auto key = std::make_pair(alpha, d);
    auto it = kern_.find(key);
    if (it != kern_.end()) return it->second;
    const auto& h = bd_.bp[alpha - 1].h;
    std::vector<QS> c;
    for (int k = 1; k <= nz_ + 1 && k < static_cast<int>(h.size()); k += 2) {
      c.push_back(h[k]);
      c.push_back(QS::zero(kExact));
    }
    ZS H = ZS::from_coeffs(0, std::move(c), std::min(nz_ + 1, static_cast<int>(h.size()) - 1));
    ZS k = H.inverse().shifted(2 * d - 1) * QS(NF(Rat(-1, 4 * (2 * d + 1))), kExact);
    return kern_[key] = k;
  }

  // B(zeta, Y) expanded in zeta: sum_m zeta^m e(alpha, m)(Y) d zeta.
  std::vector<std::pair<Slot, ZS>> bergman_leg(int alpha, bool flip) const {
    std::vector<std::pair<Slot, ZS>> r;
    for (int m = 0; m <= nz_; ++m) {
      ZS t = ZS::monomial(QS(NF(1), kExact), m, nz_ + 1);
      r.push_back({{alpha, m}, flip ? -zs_neg(t) : t});
    }
    return r;
  }

  // Terms of omega_{g,n}(Y_I, zeta) with the last slot expanded at zeta_alpha.
  std::vector<std::pair<FormKey, ZS>> leg(int g, int n, int alpha, bool flip) {
    std::vector<std::pair<FormKey, ZS>> r;
    if (g == 0 && n == 2) {
      for (auto& [s, z] : bergman_leg(alpha, flip)) r.push_back({{s}, z});
      return r;
    }
    for (const auto& [key, c] : omega(g, n)) {
      FormKey rest(key.begin(), key.end() - 1);
      r.push_back({rest, expand(alpha, key.back(), flip).map_coeffs([&](const QS& x) { return x * c; })});
    }
    return r;
  }

  void step(int g, int n, int alpha, FormTensor& out) {
    int m = n - 1;
    std::map<FormKey, ZS> G;
    auto add = [&](const FormKey& k, const ZS& v) {
      auto [it, fresh] = G.emplace(k, v);
      if (!fresh) it->second += v;
    };
    if (g >= 1) {
      if (g == 1 && n == 1) {
        // B(zeta, -zeta) = -(1/(4 zeta^2) + sum B_{kl} (-1)^l zeta^{k+l}) d zeta^2
        std::vector<QS> c(nz_ + 1, QS::zero(kExact));
        for (int k = 0; k <= nz_; ++k)
          for (int l = 0; k + l <= nz_; ++l) {
            QS b = bt_.at(alpha, alpha, k, l);
            c[k + l] += l % 2 ? -b : b;
          }
        ZS v = ZS::from_coeffs(0, std::move(c), nz_ + 1);
        v += ZS::monomial(QS(NF(rat(1, 4)), kExact), -2, nz_ + 1);
        add({}, -v);
      } else {
        for (const auto& [key, c] : omega(g - 1, n + 1)) {
          FormKey rest(key.begin(), key.begin() + m);
          ZS v = expand(alpha, key[m + 1], false) * expand(alpha, key[m], true);
          add(rest, v.map_coeffs([&](const QS& x) { return x * c; }));
        }
      }
    }
    for (int g1 = 0; g1 <= g; ++g1)
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> I, J;
        for (int i = 0; i < m; ++i) (mask >> i & 1 ? I : J).push_back(i);
        int n1 = static_cast<int>(I.size()) + 1, n2 = static_cast<int>(J.size()) + 1, g2 = g - g1;
        if ((g1 == 0 && n1 == 1) || (g2 == 0 && n2 == 1)) continue;
        auto a = leg(g1, n1, alpha, false);
        auto b = leg(g2, n2, alpha, true);
        for (const auto& [ka, za] : a)
          for (const auto& [kb, zb] : b) {
            FormKey key(m);
            for (size_t i = 0; i < I.size(); ++i) key[I[i]] = ka[i];
            for (size_t j = 0; j < J.size(); ++j) key[J[j]] = kb[j];
            add(key, za * zb);
          }
      }
    for (const auto& [key, v] : G) {
      if (v.is_zero()) continue;
      for (int d = 0; 2 * d - 1 + v.val() <= -1; ++d) {
        QS res = (kernel(alpha, d) * v).coeff(-1);
        if (res.is_zero()) continue;
        FormKey k = key;
        k.push_back({alpha, 2 * d});
        auto [it, fresh] = out.emplace(k, res);
        if (!fresh) it->second += res;
      }
    }
  }

  const BranchData& bd_;
  const BergmanTable& bt_;
  int nz_;
  std::map<std::pair<int, int>, FormTensor> memo_;
  std::map<std::pair<int, int>, ZS> kern_;
};

}  // namespace

FormTensor ceo_direct(int g, int n, const BranchData& bd, const BergmanTable& bt) {
  if (!supported(g, n)) throw std::invalid_argument("ceo_direct: unsupported (g, n)");
  if (bt.degree() < ceo_bergman_degree(g, n) || bd.zorder < ceo_zorder(g, n))
    throw std::invalid_argument("ceo_direct: branch data too short");
  Recursion rec(bd, bt, 2 * (3 * g - 3 + n) + 4);
  return rec.omega(g, n);
}

FormTensor to_dxi_basis(const FormTensor& e) {
  FormTensor r;
  for (const auto& [key, c] : e) {
    FormKey k;
    NF f(1);
    for (auto [alpha, m] : key) {
      if (m % 2) throw std::logic_error("to_dxi_basis: odd e-form survived");
      int d = m / 2;
      f = f * NF(Rat(mpz_class(1) << d) / double_factorial(2 * d - 1)) * NF::i().pow(2 * d + 1);
      k.push_back({alpha, d});
    }
    r[k] = c * f;
  }
  return r;
}

bool is_symmetric(const FormTensor& t) {
  for (const auto& [key, c] : t) {
    FormKey k = key;
    std::sort(k.begin(), k.end());
    do {
      auto it = t.find(k);
      if (it == t.end() || !it->second.agrees_with(c)) return false;
    } while (std::next_permutation(k.begin(), k.end()));
  }
  return true;
}

XLaurent ceo_w(const FormTensor& e, const BranchData& bd, const Context& ctx) {
  int n = e.empty() ? 1 : static_cast<int>(e.begin()->first.size());
  std::map<std::array<int, 2>, XLaurent> hx;
  for (const auto& [key, c] : e)
    for (auto s : key)
      if (!hx.count(s)) hx.emplace(s, hx_form(e_form(bd, s[0], s[1]), ctx));
  int P = ctx.pprec();
  XLaurent r(n);
  std::vector<int> mu(n);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      QS acc = QS::zero(P);
      for (const auto& [key, c] : e) {
        QS t = c.truncated(P);
        for (int j = 0; j < n && !t.is_zero(); ++j) t = t * hx.at(key[j]).coeff({mu[j]});
        acc += t;
      }
      r.set(mu, acc.truncated(P));
      return;
    }
    for (int m = -ctx.m_max; m <= ctx.m_max; ++m) {
      if (m == 0 || used + std::abs(m) > ctx.p_max) continue;
      mu[i] = m;
      rec(i + 1, used + std::abs(m));
    }
  };
  rec(0, 0);
  return r;
}

}  // namespace mirror
