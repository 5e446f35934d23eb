#pragma once

#include <algorithm>
#include <map>
#include <vector>

namespace pks {

struct ColoredGraph {
  std::vector<std::vector<int>> adj;
  std::vector<int> color;
  size_t size() const { return adj.size(); }
};

namespace detail {

// Joint colour refinement so that colour ids are comparable across graphs.
inline bool refine_pair(const ColoredGraph& a, const ColoredGraph& b, std::vector<int>& ca, std::vector<int>& cb) {
  for (;;) {
    std::map<std::pair<int, std::vector<int>>, int> dict;
    auto sig = [&](const ColoredGraph& g, const std::vector<int>& c, size_t v) {
      std::vector<int> nb;
      for (int u : g.adj[v]) nb.push_back(c[static_cast<size_t>(u)]);
      std::sort(nb.begin(), nb.end());
      return std::make_pair(c[v], nb);
    };
    std::vector<std::pair<int, std::vector<int>>> sa, sb;
    for (size_t v = 0; v < a.size(); ++v) sa.push_back(sig(a, ca, v));
    for (size_t v = 0; v < b.size(); ++v) sb.push_back(sig(b, cb, v));
    for (auto& s : sa) dict.emplace(s, 0);
    for (auto& s : sb) dict.emplace(s, 0);
    int id = 0;
    for (auto& [k, v] : dict) v = id++;
    std::vector<int> na, nb;
    for (auto& s : sa) na.push_back(dict[s]);
    for (auto& s : sb) nb.push_back(dict[s]);
    auto hist = [](const std::vector<int>& c) {
      std::vector<int> h = c;
      std::sort(h.begin(), h.end());
      return h;
    };
    if (hist(na) != hist(nb)) return false;
    auto classes = [](const std::vector<int>& c) {
      std::vector<int> h = c;
      std::sort(h.begin(), h.end());
      return static_cast<size_t>(std::unique(h.begin(), h.end()) - h.begin());
    };
    bool stable = classes(na) == classes(ca);
    ca = na;
    cb = nb;
    if (stable) return true;
  }
}

inline bool iso_search(const ColoredGraph& a, const ColoredGraph& b, std::vector<int> ca, std::vector<int> cb) {
  if (!refine_pair(a, b, ca, cb)) return false;
  std::map<int, int> count;
  for (int c : ca) count[c]++;
  int target = -1, best = 1 << 30;
  for (auto [c, k] : count)
    if (k > 1 && k < best) {
      best = k;
      target = c;
    }
  if (target < 0) {
    std::vector<int> map_ab(a.size());
    std::map<int, int> where;
    for (size_t v = 0; v < b.size(); ++v) where[cb[v]] = static_cast<int>(v);
    for (size_t v = 0; v < a.size(); ++v) map_ab[v] = where[ca[v]];
    for (size_t v = 0; v < a.size(); ++v) {
      std::vector<int> img;
      for (int u : a.adj[v]) img.push_back(map_ab[static_cast<size_t>(u)]);
      std::sort(img.begin(), img.end());
      std::vector<int> tgt = b.adj[static_cast<size_t>(map_ab[v])];
      std::sort(tgt.begin(), tgt.end());
      if (img != tgt) return false;
    }
    return true;
  }
  size_t v = static_cast<size_t>(std::find(ca.begin(), ca.end(), target) - ca.begin());
  int fresh = static_cast<int>(a.size() + b.size()) + 1;
  for (size_t w = 0; w < b.size(); ++w) {
    if (cb[w] != target) continue;
    auto na = ca, nb = cb;
    na[v] = fresh;
    nb[w] = fresh;
    if (iso_search(a, b, na, nb)) return true;
  }
  return false;
}

}  // namespace detail

inline bool isomorphic(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.size() != b.size()) return false;
  return detail::iso_search(a, b, a.color, b.color);
}

}  // namespace pks
