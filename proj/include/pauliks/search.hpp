#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "budget.hpp"
#include "rays.hpp"

namespace pks {

// ------------------------------------------------------------- colourability

enum class ColorStatus { Colorable, Uncolorable, Unknown };

struct ColoringVerdict {
  ColorStatus status = ColorStatus::Unknown;
  std::vector<std::vector<int>> witnesses;  // rays assigned 1
  size_t nodes = 0;
};

struct ColorOptions {
  size_t max_witnesses = 1;  // 0 = count/collect all
  Budget budget{};
};

namespace detail {

struct ColorState {
  const std::vector<std::vector<int>>* bases;
  const std::vector<std::vector<int>>* ray_bases;      // bases containing each ray
  const std::vector<std::vector<int>>* extra_orth;     // optional orthogonality beyond bases
  std::vector<signed char> value;                      // -1 unassigned, 0, 1
  std::vector<int> ones, zeros;                        // per basis
  std::vector<std::pair<int, int>> trail;              // (ray, old value)
};

inline bool assign(ColorState& s, int r, int v) {
  auto& cur = s.value[static_cast<size_t>(r)];
  if (cur == v) return true;
  if (cur != -1) return false;
  cur = static_cast<signed char>(v);
  s.trail.push_back({r, v});
  // count everywhere before checking so undo stays symmetric
  bool ok = true;
  for (int b : (*s.ray_bases)[static_cast<size_t>(r)]) {
    auto bi = static_cast<size_t>(b);
    if (v == 1) ok = ++s.ones[bi] <= 1 && ok;
    else ok = ++s.zeros[bi] < static_cast<int>((*s.bases)[bi].size()) && ok;
  }
  if (!ok) return false;
  if (v == 1) {
    for (int b : (*s.ray_bases)[static_cast<size_t>(r)])
      for (int o : (*s.bases)[static_cast<size_t>(b)])
        if (o != r && !assign(s, o, 0)) return false;
    if (s.extra_orth)
      for (int o : (*s.extra_orth)[static_cast<size_t>(r)])
        if (!assign(s, o, 0)) return false;
  } else {
    // a basis with a single unassigned ray and no 1 forces that ray
    for (int b : (*s.ray_bases)[static_cast<size_t>(r)]) {
      auto bi = static_cast<size_t>(b);
      if (s.ones[bi] == 0 && s.zeros[bi] + 1 == static_cast<int>((*s.bases)[bi].size())) {
        for (int o : (*s.bases)[bi])
          if (s.value[static_cast<size_t>(o)] == -1) {
            if (!assign(s, o, 1)) return false;
            break;
          }
      }
    }
  }
  return true;
}

inline void undo(ColorState& s, size_t mark) {
  while (s.trail.size() > mark) {
    auto [r, v] = s.trail.back();
    s.trail.pop_back();
    s.value[static_cast<size_t>(r)] = -1;
    for (int b : (*s.ray_bases)[static_cast<size_t>(r)]) {
      if (v == 1) --s.ones[static_cast<size_t>(b)];
      else --s.zeros[static_cast<size_t>(b)];
    }
  }
}

}  // namespace detail

// Exact cover: every listed basis gets exactly one ray with value 1. With
// extra_orth, rays orthogonal outside any basis may not both be 1.
inline ColoringVerdict colorability(int nrays, const std::vector<std::vector<int>>& bases,
                                    const std::vector<std::vector<int>>* extra_orth, ColorOptions opt = {}) {
  ColoringVerdict v;
  std::vector<std::vector<int>> ray_bases(static_cast<size_t>(nrays));
  for (size_t b = 0; b < bases.size(); ++b)
    for (int r : bases[b]) ray_bases[static_cast<size_t>(r)].push_back(static_cast<int>(b));
  detail::ColorState s{&bases, &ray_bases, extra_orth, std::vector<signed char>(static_cast<size_t>(nrays), -1),
                       std::vector<int>(bases.size(), 0), std::vector<int>(bases.size(), 0), {}};
  BudgetTracker tracker(opt.budget);
  bool stop = false, truncated = false;
  auto rec = [&](auto&& self) -> void {
    if (stop) return;
    if (!tracker.tick()) {
      truncated = stop = true;
      return;
    }
    ++v.nodes;
    // open basis with the most zeros, lowest index on ties
    int pick = -1, most = -1;
    for (size_t b = 0; b < bases.size(); ++b)
      if (s.ones[b] == 0 && s.zeros[b] > most) {
        most = s.zeros[b];
        pick = static_cast<int>(b);
      }
    if (pick < 0) {
      std::vector<int> w;
      for (int r = 0; r < nrays; ++r)
        if (s.value[static_cast<size_t>(r)] == 1) w.push_back(r);
      v.witnesses.push_back(w);
      if (opt.max_witnesses && v.witnesses.size() >= opt.max_witnesses) stop = true;
      return;
    }
    for (int r : bases[static_cast<size_t>(pick)]) {
      if (s.value[static_cast<size_t>(r)] != -1) continue;
      size_t mark = s.trail.size();
      if (detail::assign(s, r, 1)) self(self);
      detail::undo(s, mark);
      if (stop) return;
    }
  };
  rec(rec);
  if (!v.witnesses.empty()) v.status = ColorStatus::Colorable;
  else v.status = truncated ? ColorStatus::Unknown : ColorStatus::Uncolorable;
  return v;
}

inline ColoringVerdict basis_colorable(int nrays, const std::vector<std::vector<int>>& bases, ColorOptions opt = {}) {
  return colorability(nrays, bases, nullptr, opt);
}

inline ColoringVerdict basis_colorable(const RBSet& set, ColorOptions opt = {}) {
  return basis_colorable(static_cast<int>(set.rays.size()), set.bases, opt);
}

// Orthogonality of every ray pair, computed from signatures.
inline std::vector<std::vector<int>> orthogonality_lists(const std::vector<Ray>& rays) {
  std::vector<std::vector<int>> adj(rays.size());
  for (size_t a = 0; a < rays.size(); ++a)
    for (size_t b = a + 1; b < rays.size(); ++b)
      if (orthogonal(rays[a], rays[b])) {
        adj[a].push_back(static_cast<int>(b));
        adj[b].push_back(static_cast<int>(a));
      }
  return adj;
}

inline ColoringVerdict ray_colorable(int nrays, const std::vector<std::vector<int>>& bases,
                                     const std::vector<std::vector<int>>& orth, ColorOptions opt = {}) {
  return colorability(nrays, bases, &orth, opt);
}

// ------------------------------------------------------------- parity proofs

struct ParityProof {
  std::vector<int> bases;  // sorted basis indices
  int rays = 0;            // distinct rays used
  bool critical = false;
  std::string compact() const { return std::to_string(rays) + "-" + std::to_string(bases.size()); }
};

namespace detail {

// GF(2) vectors of ray indices.
inline std::vector<uint64_t> basis_vector(const std::vector<int>& b, size_t words) {
  std::vector<uint64_t> v(words, 0);
  for (int r : b) v[static_cast<size_t>(r) / 64] ^= uint64_t{1} << (r % 64);
  return v;
}

inline size_t gf2_rank(std::vector<std::vector<uint64_t>> rows) {
  size_t rank = 0;
  if (rows.empty()) return 0;
  size_t words = rows.front().size();
  for (size_t col = 0; col < words * 64 && rank < rows.size(); ++col) {
    size_t w = col / 64;
    uint64_t bit = uint64_t{1} << (col % 64);
    size_t piv = rank;
    while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && (rows[r][w] & bit))
        for (size_t k = 0; k < words; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace detail

inline bool is_parity_proof(const RBSet& set, const std::vector<int>& subset) {
  if (subset.empty() || subset.size() % 2 == 0) return false;
  std::vector<int> m(set.rays.size(), 0);
  for (int b : subset)
    for (int r : set.bases[static_cast<size_t>(b)]) ++m[static_cast<size_t>(r)];
  return std::all_of(m.begin(), m.end(), [](int x) { return x % 2 == 0; });
}

// Only dependency among the chosen bases is the whole set.
inline bool is_parity_circuit(const RBSet& set, const std::vector<int>& subset) {
  size_t words = (set.rays.size() + 63) / 64;
  std::vector<std::vector<uint64_t>> rows;
  for (int b : subset) rows.push_back(detail::basis_vector(set.bases[static_cast<size_t>(b)], words));
  return detail::gf2_rank(rows) + 1 == subset.size();
}

// Deleting any single basis leaves a colourable set.
inline bool is_basis_critical(const RBSet& set, const std::vector<int>& subset) {
  for (size_t skip = 0; skip < subset.size(); ++skip) {
    std::vector<std::vector<int>> rest;
    for (size_t i = 0; i < subset.size(); ++i)
      if (i != skip) rest.push_back(set.bases[static_cast<size_t>(subset[i])]);
    if (basis_colorable(static_cast<int>(set.rays.size()), rest).status != ColorStatus::Colorable) return false;
  }
  return true;
}

// Deleting any single ray (and every basis through it) leaves a colourable
// set under full orthogonality among the remaining rays.
inline bool is_ray_critical(const std::vector<Ray>& rays, const std::vector<std::vector<int>>& bases) {
  auto orth = orthogonality_lists(rays);
  int R = static_cast<int>(rays.size());
  if (ray_colorable(R, bases, orth).status != ColorStatus::Uncolorable) return false;
  for (int drop = 0; drop < R; ++drop) {
    std::vector<std::vector<int>> rest;
    for (const auto& b : bases)
      if (std::find(b.begin(), b.end(), drop) == b.end()) rest.push_back(b);
    auto o2 = orth;
    o2[static_cast<size_t>(drop)].clear();
    for (auto& l : o2) l.erase(std::remove(l.begin(), l.end(), drop), l.end());
    // the dropped ray may not be chosen: it appears in no remaining basis
    if (ray_colorable(R, rest, o2).status != ColorStatus::Colorable) return false;
  }
  return true;
}

inline int rays_used(const RBSet& set, const std::vector<int>& subset) {
  std::vector<char> u(set.rays.size(), 0);
  for (int b : subset)
    for (int r : set.bases[static_cast<size_t>(b)]) u[static_cast<size_t>(r)] = 1;
  return static_cast<int>(std::count(u.begin(), u.end(), 1));
}

struct ParityOptions {
  int max_bases = 0;          // 0 = unlimited
  size_t max_count = 0;       // 0 = unlimited
  bool require_circuit = true;
  bool require_critical = true;
  Budget budget{};
  std::vector<int> roots;     // empty = every basis in index order
};

struct ParitySearchResult {
  std::vector<ParityProof> proofs;
  bool truncated = false;
  size_t nodes = 0;
  size_t candidates = 0;      // all-even odd sets reached before filtering
  size_t emitted = 0;
};

// Tree search: extend by the bases containing the ray with the largest odd
// multiplicity; branch i excludes the earlier candidates so no set repeats.
inline ParitySearchResult find_parity_proofs(const RBSet& set, const ParityOptions& opt = {},
                                             const std::function<void(const ParityProof&)>& sink = {}) {
  ParitySearchResult res;
  size_t R = set.rays.size(), B = set.bases.size();
  std::vector<std::vector<int>> ray_bases(R);
  for (size_t b = 0; b < B; ++b)
    for (int r : set.bases[b]) ray_bases[static_cast<size_t>(r)].push_back(static_cast<int>(b));
  std::vector<int> mult(R, 0);
  std::vector<char> state(B, 0);  // 0 free, 1 chosen, 2 excluded
  std::vector<int> chosen;
  int odd_count = 0;
  BudgetTracker tracker(opt.budget);
  bool stop = false;
  auto add = [&](int b, int d) {
    for (int r : set.bases[static_cast<size_t>(b)]) {
      int& m = mult[static_cast<size_t>(r)];
      m += d;
      odd_count += (m & 1) ? 1 : -1;
    }
  };
  auto emit = [&]() {
    ++res.candidates;
    ParityProof p;
    p.bases = chosen;
    std::sort(p.bases.begin(), p.bases.end());
    if (opt.require_circuit && !is_parity_circuit(set, p.bases)) return;
    if (opt.require_critical) {
      p.critical = is_basis_critical(set, p.bases);
      if (!p.critical) return;
    }
    p.rays = rays_used(set, p.bases);
    ++res.emitted;
    if (sink) sink(p);
    else res.proofs.push_back(std::move(p));
    if (opt.max_count && res.emitted >= opt.max_count) stop = true;
  };
  auto rec = [&](auto&& self) -> void {
    if (stop) return;
    if (!tracker.tick()) {
      res.truncated = stop = true;
      return;
    }
    if (odd_count == 0) {
      if (chosen.size() % 2 == 1) emit();
      return;
    }
    if (opt.max_bases && static_cast<int>(chosen.size()) >= opt.max_bases) return;
    int pick = -1, best = -1;
    for (size_t r = 0; r < R; ++r)
      if ((mult[r] & 1) && mult[r] > best) {
        best = mult[r];
        pick = static_cast<int>(r);
      }
    std::vector<int> excluded_here;
    for (int b : ray_bases[static_cast<size_t>(pick)]) {
      if (state[static_cast<size_t>(b)] != 0) continue;
      state[static_cast<size_t>(b)] = 1;
      chosen.push_back(b);
      add(b, 1);
      self(self);
      add(b, -1);
      chosen.pop_back();
      state[static_cast<size_t>(b)] = 2;
      excluded_here.push_back(b);
      if (stop) break;
    }
    for (int b : excluded_here) state[static_cast<size_t>(b)] = 0;
  };
  std::vector<int> roots = opt.roots;
  if (roots.empty())
    for (size_t b = 0; b < B; ++b) roots.push_back(static_cast<int>(b));
  // Each root owns the proofs whose smallest basis it is, so any subset of
  // roots is an independent work unit.
  for (int root : roots) {
    if (stop) break;
    if (root < 0 || static_cast<size_t>(root) >= B) throw std::invalid_argument("root basis out of range");
    for (int b = 0; b < root; ++b) state[static_cast<size_t>(b)] = 2;
    state[static_cast<size_t>(root)] = 1;
    chosen.push_back(root);
    add(root, 1);
    rec(rec);
    add(root, -1);
    chosen.pop_back();
    for (int b = 0; b <= root; ++b) state[static_cast<size_t>(b)] = 0;
  }
  std::sort(res.proofs.begin(), res.proofs.end(), [](const ParityProof& a, const ParityProof& b) {
    if (a.bases.size() != b.bases.size()) return a.bases.size() < b.bases.size();
    return a.bases < b.bases;
  });
  res.nodes = tracker.nodes();
  return res;
}

// Oracle: every odd element of the GF(2) kernel of the basis/ray incidence
// map, filtered the same way. Only for small kernels.
inline std::vector<ParityProof> parity_proofs_by_kernel(const RBSet& set, bool require_critical = true) {
  size_t R = set.rays.size(), B = set.bases.size();
  if (B > 64) throw std::invalid_argument("kernel oracle supports at most 64 bases");
  size_t words = (R + 63) / 64;
  std::vector<std::pair<std::vector<uint64_t>, uint64_t>> piv;  // reduced vector, combination
  std::vector<uint64_t> kernel;
  for (size_t b = 0; b < B; ++b) {
    auto v = detail::basis_vector(set.bases[b], words);
    uint64_t t = uint64_t{1} << b;
    for (auto& [pv, pt] : piv) {
      // pivot = highest set bit of pv
      size_t h = 0;
      for (size_t w = words; w-- > 0;)
        if (pv[w]) {
          h = w * 64 + 63 - static_cast<size_t>(__builtin_clzll(pv[w]));
          break;
        }
      if (v[h / 64] >> (h % 64) & 1) {
        for (size_t w = 0; w < words; ++w) v[w] ^= pv[w];
        t ^= pt;
      }
    }
    bool zero = std::all_of(v.begin(), v.end(), [](uint64_t x) { return x == 0; });
    if (zero) kernel.push_back(t);
    else {
      piv.push_back({v, t});
      // keep pivots sorted by leading bit descending for the reduction above
      std::sort(piv.begin(), piv.end(), [&](const auto& a, const auto& b2) {
        for (size_t w = words; w-- > 0;)
          if (a.first[w] != b2.first[w]) return a.first[w] > b2.first[w];
        return false;
      });
    }
  }
  if (kernel.size() > 26) throw std::invalid_argument("kernel dimension too large for the oracle");
  std::vector<ParityProof> out;
  for (uint64_t m = 1; m < (uint64_t{1} << kernel.size()); ++m) {
    uint64_t t = 0;
    for (size_t i = 0; i < kernel.size(); ++i)
      if (m >> i & 1) t ^= kernel[i];
    if (__builtin_popcountll(t) % 2 == 0) continue;
    std::vector<int> sub;
    for (size_t b = 0; b < B; ++b)
      if (t >> b & 1) sub.push_back(static_cast<int>(b));
    if (!is_parity_circuit(set, sub)) continue;
    ParityProof p;
    p.bases = sub;
    if (require_critical) {
      p.critical = is_basis_critical(set, sub);
      if (!p.critical) continue;
    }
    p.rays = rays_used(set, sub);
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const ParityProof& a, const ParityProof& b) {
    if (a.bases.size() != b.bases.size()) return a.bases.size() < b.bases.size();
    return a.bases < b.bases;
  });
  return out;
}

// For proofs where every observable lies in exactly two IDs sharing only it:
// pick one hybrid from each complementary pair, then add the eigenbasis of
// each ID with a ray of odd multiplicity.
inline std::vector<ParityProof> fast_path_parity(const RBSet& set, const std::function<void(const ParityProof&)>& sink = {}) {
  std::map<std::pair<int, int>, std::vector<int>> pairs;
  std::map<int, int> eigen_of_id;
  for (size_t b = 0; b < set.bases.size(); ++b) {
    if (set.basis_kind[b] >= 0) eigen_of_id[set.basis_kind[b]] = static_cast<int>(b);
    else pairs[set.hybrid_pairs[b]].push_back(static_cast<int>(b));
  }
  std::vector<std::vector<int>> plist;
  for (auto& [k, v] : pairs) {
    if (v.size() != 2) throw std::invalid_argument("fast path needs complementary hybrid pairs (shared closure of one element)");
    plist.push_back(v);
  }
  if (plist.size() > 30) throw std::invalid_argument("too many complementary pairs for the fast path");
  std::map<int, int> id_of_ray;
  for (auto& [id, b] : eigen_of_id)
    for (int r : set.bases[static_cast<size_t>(b)]) id_of_ray[r] = id;
  std::vector<ParityProof> out;
  size_t P = plist.size();
  std::vector<int> mult(set.rays.size(), 0);
  for (uint64_t m = 0; m < (uint64_t{1} << P); ++m) {
    std::fill(mult.begin(), mult.end(), 0);
    std::vector<int> chosen;
    for (size_t i = 0; i < P; ++i) chosen.push_back(plist[i][m >> i & 1]);
    for (int b : chosen)
      for (int r : set.bases[static_cast<size_t>(b)]) ++mult[static_cast<size_t>(r)];
    std::set<int> add;
    for (size_t r = 0; r < mult.size(); ++r)
      if (mult[r] & 1) add.insert(id_of_ray.at(static_cast<int>(r)));
    for (int id : add) chosen.push_back(eigen_of_id.at(id));
    std::sort(chosen.begin(), chosen.end());
    if (!is_parity_proof(set, chosen)) throw std::logic_error("fast path produced a non-parity set");
    ParityProof p;
    p.bases = chosen;
    p.rays = rays_used(set, chosen);
    if (sink) sink(p);
    else out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const ParityProof& a, const ParityProof& b) {
    if (a.bases.size() != b.bases.size()) return a.bases.size() < b.bases.size();
    return a.bases < b.bases;
  });
  return out;
}

struct ProofHistogram {
  std::map<std::pair<int, int>, size_t> compact;  // (rays, bases) -> count
  std::map<std::string, size_t> expanded;
  size_t total = 0;
};

inline ProofHistogram classify_proofs(const RBSet& set, const std::vector<ParityProof>& proofs, bool with_expanded = true) {
  ProofHistogram h;
  for (const auto& p : proofs) {
    ++h.total;
    h.compact[{p.rays, static_cast<int>(p.bases.size())}]++;
    if (with_expanded) h.expanded[rb_symbol(set.rays, set.bases, &p.bases).expanded()]++;
  }
  return h;
}

}  // namespace pks
