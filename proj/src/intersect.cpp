#include "mirror/intersect.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace mirror {

namespace {

using Key = std::pair<int, std::vector<int>>;

std::mutex memo_mutex;
std::map<Key, Rat>& memo() {
  static std::map<Key, Rat> table;
  return table;
}

Rat odd_df(int n) { return double_factorial(n); }  // n odd, n >= -1

Rat eval(int g, std::vector<int> k);

// Sum over ways to split `rest` into two sub-multisets (by position).
Rat split_sum(int g, int r, int s, const std::vector<int>& rest) {
  Rat total = 0;
  int m = static_cast<int>(rest.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> a{r}, b{s};
    for (int i = 0; i < m; ++i) (mask >> i & 1 ? a : b).push_back(rest[i]);
    for (int g1 = 0; g1 <= g; ++g1) {
      int g2 = g - g1;
      if (2 * g1 - 2 + static_cast<int>(a.size()) <= 0) continue;
      if (2 * g2 - 2 + static_cast<int>(b.size()) <= 0) continue;
      Rat x = eval(g1, a);
      if (x == 0) continue;
      total += x * eval(g2, b);
    }
  }
  return total;
}

Rat compute(int g, const std::vector<int>& k) {
  int n = static_cast<int>(k.size());
  int sum = std::accumulate(k.begin(), k.end(), 0);
  if (sum != 3 * g - 3 + n) return 0;
  if (g == 0 && n == 3) return 1;
  if (g == 1 && n == 1) return rat(1, 24);
  // k is sorted descending; reduce with string or dilaton when possible.
  if (k.back() == 0) {
    std::vector<int> rest(k.begin(), k.end() - 1);
    Rat total = 0;
    for (int j = 0; j < static_cast<int>(rest.size()); ++j) {
      if (rest[j] == 0) continue;
      std::vector<int> t = rest;
      --t[j];
      total += eval(g, t);
    }
    return total;
  }
  if (k.back() == 1) {
    std::vector<int> rest(k.begin(), k.end() - 1);
    return Rat(2 * g - 2 + n - 1) * eval(g, rest);
  }
  // Dijkgraaf-Verlinde-Verlinde on the largest height.
  int top = k.front() - 1;
  std::vector<int> rest(k.begin() + 1, k.end());
  Rat total = 0;
  for (int j = 0; j < static_cast<int>(rest.size()); ++j) {
    std::vector<int> t = rest;
    int kj = t[j];
    t[j] = top + kj;
    total += odd_df(2 * top + 2 * kj + 1) / odd_df(2 * kj - 1) * eval(g, t);
  }
  Rat quad = 0;
  for (int r = 0; r <= top - 1; ++r) {
    int s = top - 1 - r;
    Rat c = odd_df(2 * r + 1) * odd_df(2 * s + 1);
    Rat inner = 0;
    if (g >= 1) {
      std::vector<int> t = rest;
      t.push_back(r);
      t.push_back(s);
      inner += eval(g - 1, t);
    }
    inner += split_sum(g, r, s, rest);
    quad += c * inner;
  }
  total += quad / 2;
  return total / odd_df(2 * top + 3);
}

Rat eval(int g, std::vector<int> k) {
  std::sort(k.begin(), k.end(), std::greater<int>());
  Key key{g, k};
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  Rat v = compute(g, k);
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo().emplace(key, v);
  return v;
}

}  // namespace

Rat psi_number(int g, std::vector<int> heights) {
  if (g < 0) throw std::invalid_argument("psi_number: negative genus");
  for (int h : heights)
    if (h < 0) throw std::invalid_argument("psi_number: negative height");
  if (2 * g - 2 + static_cast<int>(heights.size()) <= 0) throw std::invalid_argument("psi_number: unstable key");
  return eval(g, std::move(heights));
}

Rat hodge_lambda1_number(int g, const std::vector<int>& heights) {
  if (g != 1) throw std::invalid_argument("hodge_lambda1_number: only genus 1 is supported");
  if (heights.empty()) throw std::invalid_argument("hodge_lambda1_number: unstable key");
  std::vector<int> h = heights;
  h.push_back(0);
  h.push_back(0);
  return psi_number(0, h) / 24;
}

}  // namespace mirror
