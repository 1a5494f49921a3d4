#include "mirror/series.hpp"

#include <json.hpp>
#include <numeric>
#include <sstream>

namespace mirror {

QS qs_const(const NF& c, int prec) { return QS(c, prec); }

QS qs_q(int prec) { return QS::monomial(NF(1), 2, prec); }

QS qs_sqrt(const QS& a, int cap) {
  if (a.val() != 0 || !a.coeff(0).is_one()) throw std::domain_error("qs_sqrt: constant term must be 1");
  int p = std::min(a.prec(), cap);
  if (p >= kExact) throw std::domain_error("qs_sqrt: exact input needs a cap");
  std::vector<NF> r(p);
  const NF half(rat(1, 2));
  r[0] = NF(1);
  for (int n = 1; n < p; ++n) {
    NF acc = a.at(n);
    for (int k = 1; k < n; ++k) acc -= r[k] * r[n - k];
    r[n] = acc * half;
  }
  return QS::from_coeffs(0, std::move(r), p);
}

QS qs_q_dq(const QS& a) {
  return a.map_indexed([](int k, const NF& c) { return c * NF(rat(k, 2)); });
}

QS qs_flip_s(const QS& a) {
  return a.map_coeffs([](const NF& c) { return c.flip_s(); });
}

QS qs_conj_i(const QS& a) {
  return a.map_coeffs([](const NF& c) { return c.conj_i(); });
}

bool qs_is_rational_in_s(const QS& a) {
  for (const auto& c : a.raw())
    if (!c.is_rational_in_s()) return false;
  return true;
}

bool qs_is_zeta_free(const QS& a) {
  for (const auto& c : a.raw())
    if (!c.is_zeta_free()) return false;
  return true;
}

bool qs_has_parity(const QS& a, int parity) {
  for (size_t j = 0; j < a.raw().size(); ++j) {
    int k = a.raw_lo() + static_cast<int>(j);
    if (!a.raw()[j].is_zero() && (((k - parity) % 2) + 2) % 2 != 0) return false;
  }
  return true;
}

std::string qs_str(const QS& a) {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < a.raw().size(); ++j) {
    if (a.raw()[j].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << a.raw()[j].str() << ")*p^" << a.raw_lo() + static_cast<int>(j);
  }
  if (first) os << "0";
  if (!a.is_exact()) os << " + O(p^" << a.prec() << ")";
  return os.str();
}

// ---- XLaurent ----

QS XLaurent::coeff(const Key& k) const {
  auto it = t_.find(k);
  return it == t_.end() ? QS() : it->second;
}

void XLaurent::set(const Key& k, const QS& v) {
  if (static_cast<int>(k.size()) != n_) throw std::invalid_argument("XLaurent: key arity mismatch");
  t_[k] = v;
}

void XLaurent::add(const Key& k, const QS& v) {
  auto it = t_.find(k);
  if (it == t_.end())
    set(k, v);
  else
    it->second += v;
}

XLaurent& XLaurent::operator+=(const XLaurent& o) {
  for (const auto& [k, v] : o.t_) add(k, v);
  return *this;
}

XLaurent& XLaurent::operator-=(const XLaurent& o) {
  for (const auto& [k, v] : o.t_) add(k, -v);
  return *this;
}

XLaurent XLaurent::operator-() const {
  return map([](const Key&, const QS& v) { return -v; });
}

XLaurent XLaurent::scaled(const NF& c) const {
  return map([&](const Key&, const QS& v) { return v * c; });
}

XLaurent XLaurent::truncated(int prec) const {
  return map([&](const Key&, const QS& v) { return v.truncated(prec); });
}

XLaurent XLaurent::flip_s() const {
  return map([](const Key&, const QS& v) { return qs_flip_s(v); });
}

XLaurent XLaurent::symmetrized() const {
  std::vector<int> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  XLaurent r(n_);
  int count = 0;
  do {
    ++count;
    for (const auto& [k, v] : t_) {
      Key pk(n_);
      for (int i = 0; i < n_; ++i) pk[perm[i]] = k[i];
      r.add(pk, v);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r.scaled(NF(rat(1, count)));
}

bool XLaurent::agrees_with(const XLaurent& o, std::vector<Key>* bad) const {
  bool ok = true;
  auto check = [&](const Key& k) {
    if (!coeff(k).agrees_with(o.coeff(k))) {
      ok = false;
      if (bad) bad->push_back(k);
    }
  };
  for (const auto& [k, v] : t_) check(k);
  for (const auto& [k, v] : o.t_)
    if (!t_.count(k)) check(k);
  return ok;
}

bool XLaurent::is_rational_in_s() const {
  for (const auto& [k, v] : t_)
    if (!qs_is_rational_in_s(v)) return false;
  return true;
}

bool XLaurent::obeys_parity() const {
  for (const auto& [k, v] : t_) {
    int m = 0;
    for (int x : k) m += std::abs(x);
    if (!qs_has_parity(v, m % 2)) return false;
  }
  return true;
}

// ---- YSeries ----

YSeries YSeries::monomial(const QS& c, int k, int ymax, int pprec) {
  YSeries r(ymax, pprec);
  r.add(k, c);
  return r;
}

QS YSeries::coeff(int k) const {
  if (k > ymax_) throw std::out_of_range("YSeries::coeff: exponent beyond Y-truncation");
  auto it = t_.find(k);
  return it == t_.end() ? QS::zero(pprec_) : it->second.truncated(pprec_);
}

void YSeries::add(int k, const QS& v) {
  if (k > ymax_) return;
  QS w = v.truncated(pprec_);
  if (w.is_zero()) return;
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(k, w);
  } else {
    it->second += w;
    if (it->second.is_zero()) t_.erase(it);
  }
}

YSeries& YSeries::operator+=(const YSeries& o) {
  ymax_ = std::min(ymax_, o.ymax_);
  pprec_ = std::min(pprec_, o.pprec_);
  std::map<int, QS> old;
  old.swap(t_);
  for (const auto& [k, v] : old) add(k, v);
  for (const auto& [k, v] : o.t_) add(k, v);
  return *this;
}

int YSeries::min_exponent() const { return t_.empty() ? ymax_ : t_.begin()->first; }

YSeries YSeries::operator*(const YSeries& o) const {
  int ym = std::min(prec_add(ymax_, o.min_exponent()), prec_add(o.ymax_, min_exponent()));
  YSeries r(ym, std::min(pprec_, o.pprec_));
  for (const auto& [a, va] : t_)
    for (const auto& [b, vb] : o.t_)
      if (a + b <= ym) r.add(a + b, va * vb);
  return r;
}

YSeries YSeries::scaled(const QS& c) const {
  YSeries r(ymax_, pprec_);
  for (const auto& [k, v] : t_) r.add(k, v * c);
  return r;
}

QS YSeries::residue_at_origin(int porder) const {
  if (porder >= pprec_) throw std::out_of_range("residue_at_origin: p-order beyond truncation");
  if (ymax_ < -1) throw std::out_of_range("residue_at_origin: Y-truncation below the residue slot");
  QS r = coeff(-1).truncated(porder + 1);
  if (r.prec() <= porder) throw std::out_of_range("residue_at_origin: coefficient known only to lower p-order");
  return r;
}

// ---- serialization ----

using nlohmann::json;

namespace {

json qs_terms(const QS& a, const std::vector<int>& prefix) {
  json terms = json::array();
  for (size_t j = 0; j < a.raw().size(); ++j) {
    if (a.raw()[j].is_zero()) continue;
    std::vector<int> e = prefix;
    e.push_back(a.raw_lo() + static_cast<int>(j));
    terms.push_back({{"exponents", e}, {"coeff_string", a.raw()[j].str()}});
  }
  return terms;
}

json truncation_json(int prec) { return prec >= kExact ? json(nullptr) : json(prec); }
int truncation_from(const json& j) { return j.is_null() ? kExact : j.get<int>(); }

}  // namespace

std::string qs_to_json(const QS& a) {
  json j;
  j["variable"] = {"p"};
  j["truncation"] = truncation_json(a.prec());
  j["terms"] = qs_terms(a, {});
  return j.dump();
}

QS qs_from_json(const std::string& text) {
  json j = json::parse(text);
  QS r = QS::zero(truncation_from(j.at("truncation")));
  for (const auto& t : j.at("terms")) {
    int k = t.at("exponents").at(0).get<int>();
    r += QS::monomial(NF::parse(t.at("coeff_string").get<std::string>()), k, r.prec());
  }
  return r;
}

std::string xlaurent_to_json(const XLaurent& a, const std::string& variable) {
  json j;
  json vars = json::array();
  for (int i = 1; i <= a.nvars(); ++i) vars.push_back(variable + std::to_string(i));
  vars.push_back("p");
  j["variable"] = vars;
  int prec = kExact;
  for (const auto& [k, v] : a.terms()) prec = std::min(prec, v.prec());
  j["truncation"] = truncation_json(prec);
  json terms = json::array();
  for (const auto& [k, v] : a.terms()) {
    json t = qs_terms(v, k);
    for (auto& x : t) {
      x["truncation"] = truncation_json(v.prec());
      terms.push_back(x);
    }
  }
  j["terms"] = terms;
  return j.dump();
}

XLaurent xlaurent_from_json(const std::string& text) {
  json j = json::parse(text);
  int n = static_cast<int>(j.at("variable").size()) - 1;
  XLaurent r(n);
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exponents").get<std::vector<int>>();
    int k = e.back();
    e.pop_back();
    int prec = t.contains("truncation") ? truncation_from(t.at("truncation")) : truncation_from(j.at("truncation"));
    r.add(e, QS::monomial(NF::parse(t.at("coeff_string").get<std::string>()), k, prec));
  }
  return r;
}

std::string xlaurent_to_csv(const XLaurent& a) {
  std::ostringstream os;
  for (int i = 1; i <= a.nvars(); ++i) os << "mu" << i << ",";
  os << "p_exponent,coefficient\n";
  for (const auto& [k, v] : a.terms()) {
    for (size_t j = 0; j < v.raw().size(); ++j) {
      if (v.raw()[j].is_zero()) continue;
      for (int x : k) os << x << ",";
      os << v.raw_lo() + static_cast<int>(j) << ",\"" << v.raw()[j].str() << "\"\n";
    }
  }
  return os.str();
}

}  // namespace mirror
