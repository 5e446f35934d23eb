#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph_iso.hpp"
#include "kernel.hpp"
#include "rays.hpp"

namespace pks {

struct KSProof {
  std::vector<IdentityProduct> ids;
  int n = 0;
  std::vector<Pauli> observables;             // sorted, nonidentity
  std::vector<std::vector<int>> incidence;    // per ID: observable indices

  int negatives() const {
    int c = 0;
    for (const auto& id : ids) c += id.sign < 0;
    return c;
  }
  std::vector<int> multiplicity() const {
    std::vector<int> m(observables.size(), 0);
    for (const auto& e : incidence)
      for (int o : e) ++m[static_cast<size_t>(o)];
    return m;
  }
  std::vector<SymbolTerm> observable_terms() const {
    std::map<int, int> g;
    for (int m : multiplicity()) g[m]++;
    std::vector<SymbolTerm> t;
    for (auto it = g.rbegin(); it != g.rend(); ++it) t.push_back({it->second, 0, it->first});
    return t;
  }
  std::vector<SymbolTerm> id_terms() const {
    std::map<int, int> g;
    for (const auto& e : incidence) g[static_cast<int>(e.size())]++;
    std::vector<SymbolTerm> t;
    for (auto it = g.rbegin(); it != g.rend(); ++it) t.push_back({it->second, 0, it->first});
    return t;
  }
  std::string compact_symbol() const {
    return std::to_string(observables.size()) + "-" + std::to_string(ids.size());
  }
  std::string symbol() const { return format_terms(observable_terms()) + " - " + format_terms(id_terms()); }
  int quantum_product() const { return negatives() % 2 ? -1 : 1; }
  int noncontextual_product() const { return 1; }
};

enum class ProofErrorCode { OddMultiplicity, EvenNegativeCount, Malformed };

class ProofError : public std::runtime_error {
 public:
  ProofError(ProofErrorCode c, const std::string& obs, const std::string& msg)
      : std::runtime_error(msg), code(c), observable(obs) {}
  ProofErrorCode code;
  std::string observable;
};

inline KSProof index_proof(const std::vector<IdentityProduct>& ids) {
  if (ids.empty()) throw ProofError(ProofErrorCode::Malformed, "", "proof has no IDs");
  KSProof p;
  p.ids = ids;
  p.n = ids.front().N();
  std::set<Pauli> obs;
  for (const auto& id : ids) {
    if (id.N() != p.n) throw ProofError(ProofErrorCode::Malformed, "", "IDs act on different qubit counts");
    for (const auto& r : id.rows)
      if (!r.is_identity()) obs.insert(r);
  }
  p.observables.assign(obs.begin(), obs.end());
  for (const auto& id : ids) {
    std::vector<int> e;
    for (const auto& r : id.rows) {
      if (r.is_identity()) continue;
      e.push_back(static_cast<int>(std::lower_bound(p.observables.begin(), p.observables.end(), r) - p.observables.begin()));
    }
    p.incidence.push_back(e);
  }
  return p;
}

inline KSProof verify_ks_proof(const std::vector<IdentityProduct>& ids) {
  KSProof p = index_proof(ids);
  auto m = p.multiplicity();
  for (size_t o = 0; o < m.size(); ++o)
    if (m[o] % 2) {
      std::string w = format_pauli(p.observables[o]);
      throw ProofError(ProofErrorCode::OddMultiplicity, w, "ODD_MULTIPLICITY(" + w + ")");
    }
  if (p.negatives() % 2 == 0) throw ProofError(ProofErrorCode::EvenNegativeCount, "", "EVEN_NEGATIVE_COUNT");
  return p;
}

inline bool is_ks_proof(const std::vector<IdentityProduct>& ids) {
  try {
    verify_ks_proof(ids);
    return true;
  } catch (const ProofError&) {
    return false;
  }
}

namespace detail {

inline Pauli common_part(const Pauli& a, const Pauli& b) {
  uint64_t same = ~((a.z ^ b.z) | (a.x ^ b.x)) & (a.z | a.x);
  return Pauli{a.z & same, a.x & same, a.n};
}

// Observables with odd multiplicity in a list of IDs, in sorted order.
inline std::vector<Pauli> odd_observables(const std::vector<IdentityProduct>& ids) {
  std::map<Pauli, int> m;
  for (const auto& id : ids)
    for (const auto& r : id.rows)
      if (!r.is_identity()) m[r]++;
  std::vector<Pauli> out;
  for (auto& [w, c] : m)
    if (c % 2) out.push_back(w);
  return out;
}

// Positive IDs supplementing each odd observable with its decomposition.
// With share set, an odd observable that is a sub-word of another is
// absorbed into that one's ID, and the rest are greedily paired by their
// largest common portion (at least two qubits), which stays whole.
inline std::vector<IdentityProduct> decomposition_ids(const std::vector<Pauli>& odd, bool share = true) {
  size_t k = odd.size();
  std::vector<int> partner(k, -1);
  std::vector<char> absorbed(k, 0);
  struct Cand { int w; size_t i, j; };
  if (share) {
    std::vector<Cand> sub;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j)
        if (i != j && odd[j].support() != odd[i].support() && common_part(odd[i], odd[j]) == odd[j])
          sub.push_back({odd[j].weight(), i, j});
    std::stable_sort(sub.begin(), sub.end(), [](const Cand& a, const Cand& b) { return a.w > b.w; });
    for (const auto& c : sub)
      if (partner[c.i] < 0 && partner[c.j] < 0) {
        partner[c.i] = static_cast<int>(c.j);
        partner[c.j] = static_cast<int>(c.i);
        absorbed[c.j] = 1;
      }
    std::vector<Cand> cands;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j) {
        int w = common_part(odd[i], odd[j]).weight();
        if (w >= 2) cands.push_back({w, i, j});
      }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.w > b.w; });
    for (const auto& c : cands)
      if (partner[c.i] < 0 && partner[c.j] < 0) {
        partner[c.i] = static_cast<int>(c.j);
        partner[c.j] = static_cast<int>(c.i);
      }
  }
  std::vector<IdentityProduct> out;
  for (size_t i = 0; i < k; ++i) {
    if (absorbed[i]) continue;
    const Pauli& o = odd[i];
    if (o.weight() < 2) throw std::invalid_argument("single-qubit observable cannot be decomposed");
    std::vector<Pauli> rows{o};
    uint64_t rest = o.support();
    if (partner[i] >= 0) {
      Pauli s = common_part(o, odd[static_cast<size_t>(partner[i])]);
      if (s.support() != o.support()) {
        rows.push_back(s);
        rest &= ~s.support();
      }
    }
    while (rest) {
      int q = __builtin_ctzll(rest);
      rest &= rest - 1;
      Pauli p = identity(o.n);
      p.set_letter(q, o.letter(q));
      rows.push_back(p);
    }
    out.push_back(verify_id(rows));
  }
  return out;
}

// Exhaustive version of the above: every odd observable either gets an ID
// built from a partition of its support, or is absorbed as a portion of
// another one's ID. Multi-qubit blocks are only allowed when the same
// portion occurs in some other odd observable. Returns the choice with the
// fewest observables in which no new ID shares two observables with any
// other ID; empty when the option space exceeds limit.
inline std::optional<std::vector<IdentityProduct>> minimal_decomposition(const std::vector<IdentityProduct>& kernel,
                                                                         double limit = 2e7) {
  auto odd = odd_observables(kernel);
  size_t k = odd.size();
  std::set<Pauli> odd_set(odd.begin(), odd.end());
  auto restrict_to = [](const Pauli& p, uint64_t m) { return Pauli{p.z & m, p.x & m, p.n}; };
  std::vector<std::vector<std::vector<Pauli>>> opts(k);
  double space = 1;
  for (size_t i = 0; i < k; ++i) {
    const Pauli& o = odd[i];
    uint64_t sup = o.support();
    // usable multi-qubit blocks
    std::set<uint64_t> blocks;
    for (uint64_t m = sup; m; m = (m - 1) & sup) {
      if (__builtin_popcountll(m) < 2 || m == sup) continue;
      Pauli part = restrict_to(o, m);
      bool ok = odd_set.count(part) > 0;
      for (size_t j = 0; j < k && !ok; ++j)
        ok = j != i && (odd[j].support() & m) == m && restrict_to(odd[j], m) == part;
      if (ok) blocks.insert(m);
    }
    std::vector<std::vector<Pauli>> here{{}};
    std::vector<uint64_t> cur;
    auto rec = [&](auto&& self, uint64_t rest) -> void {
      if (!rest) {
        if (cur.size() < 2) return;
        std::vector<Pauli> rows{o};
        for (auto m : cur) rows.push_back(restrict_to(o, m));
        here.push_back(rows);
        return;
      }
      uint64_t low = rest & (~rest + 1);
      cur.push_back(low);
      self(self, rest & ~low);
      cur.pop_back();
      for (auto m : blocks)
        if ((m & low) && (m & rest) == m) {
          cur.push_back(m);
          self(self, rest & ~m);
          cur.pop_back();
        }
    };
    rec(rec, sup);
    space *= static_cast<double>(here.size());
    opts[i] = std::move(here);
  }
  if (space > limit) return std::nullopt;

  std::map<Pauli, int> mult;
  for (const auto& id : kernel)
    for (const auto& r : id.rows)
      if (!r.is_identity()) mult[r]++;
  std::vector<size_t> choice(k, 0), best_choice;
  size_t best_obs = SIZE_MAX;
  auto bump = [&](const std::vector<Pauli>& rows, int d) {
    for (const auto& r : rows)
      if ((mult[r] += d) == 0) mult.erase(r);
  };
  auto shares_ok = [&]() {
    std::vector<std::set<Pauli>> added;
    for (size_t i = 0; i < k; ++i)
      if (!opts[i][choice[i]].empty()) added.emplace_back(opts[i][choice[i]].begin(), opts[i][choice[i]].end());
    auto overlap = [](const std::set<Pauli>& a, const std::vector<Pauli>& b) {
      int c = 0;
      for (const auto& w : b) c += a.count(w) > 0;
      return c;
    };
    for (size_t a = 0; a < added.size(); ++a) {
      for (size_t b = a + 1; b < added.size(); ++b)
        if (overlap(added[a], {added[b].begin(), added[b].end()}) > 1) return false;
      for (const auto& id : kernel)
        if (overlap(added[a], id.rows) > 1) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, size_t i) -> void {
    if (i == k) {
      for (auto& [w, c] : mult)
        if (c % 2) return;
      if (mult.size() >= best_obs || !shares_ok()) return;
      best_obs = mult.size();
      best_choice = choice;
      return;
    }
    // observables settled by now must already be even
    for (size_t c = 0; c < opts[i].size(); ++c) {
      choice[i] = c;
      bump(opts[i][c], 1);
      bool dead = false;
      if (mult.count(odd[i]) && mult[odd[i]] % 2) {
        // odd[i] can still be absorbed by a later observable's portion
        dead = true;
        for (size_t j = i + 1; j < k && dead; ++j) dead = !((odd[j].support() & odd[i].support()) == odd[i].support() &&
                                                           restrict_to(odd[j], odd[i].support()) == odd[i]);
      }
      if (!dead) self(self, i + 1);
      bump(opts[i][c], -1);
    }
  };
  search(search, 0);
  if (best_choice.empty()) return std::nullopt;
  std::vector<IdentityProduct> out;
  for (size_t i = 0; i < k; ++i)
    if (!opts[i][best_choice[i]].empty()) out.push_back(verify_id(opts[i][best_choice[i]]));
  return out;
}

}  // namespace detail

inline KSProof generate_proof_from_kernel(const Kernel& k) {
  if (auto best = detail::minimal_decomposition(k.ids)) {
    std::vector<IdentityProduct> ids = k.ids;
    ids.insert(ids.end(), best->begin(), best->end());
    return verify_ks_proof(ids);
  }
  auto odd = detail::odd_observables(k.ids);
  auto extra = detail::decomposition_ids(odd, true);
  std::vector<IdentityProduct> ids = k.ids;
  ids.insert(ids.end(), extra.begin(), extra.end());
  if (is_ks_proof(ids)) return verify_ks_proof(ids);
  // shared portions collided with existing observables: plain decomposition
  ids = k.ids;
  extra = detail::decomposition_ids(odd, false);
  ids.insert(ids.end(), extra.begin(), extra.end());
  return verify_ks_proof(ids);
}

// New IDs made of one observable from each Kernel ID (no new observables),
// up to max_cross of them; remaining odd observables are decomposed.
inline KSProof generate_wheel_closure(const Kernel& k, int max_cross = 1 << 20) {
  std::vector<IdentityProduct> ids = k.ids;
  auto odd_list = detail::odd_observables(k.ids);
  std::set<Pauli> available(odd_list.begin(), odd_list.end());
  size_t I = k.ids.size();
  for (int made = 0; made < max_cross; ++made) {
    std::vector<Pauli> pick;
    std::optional<IdentityProduct> found;
    auto rec = [&](auto&& self, size_t i) -> bool {
      if (i == I) {
        auto id = try_id(pick);
        if (id) {
          found = id;
          return true;
        }
        return false;
      }
      for (const auto& r : k.ids[i].rows) {
        if (!available.count(r)) continue;
        if (std::find(pick.begin(), pick.end(), r) != pick.end()) continue;
        bool ok = true;
        for (const auto& p : pick) ok = ok && commutes(p, r);
        if (!ok) continue;
        pick.push_back(r);
        if (self(self, i + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    if (!rec(rec, 0)) break;
    for (const auto& r : found->rows) available.erase(r);
    ids.push_back(*found);
  }
  auto odd = detail::odd_observables(ids);
  auto extra = detail::decomposition_ids(odd, true);
  ids.insert(ids.end(), extra.begin(), extra.end());
  return verify_ks_proof(ids);
}

// Regrouping through products instead of qubit decomposition:
//  1. pairs of cross IDs (one row per Kernel ID) that close on the same new
//     product observable, which must avoid every Odd qubit;
//  2. leftover rows of two Kernel IDs joined in pairs with their product,
//     again off the Odd qubits;
//  3. those products closed among themselves where they form a Positive ID.
// Whatever is still odd falls back to decomposition.
inline KSProof generate_cross_closure(const Kernel& k) {
  std::vector<IdentityProduct> ids = k.ids;
  size_t I = k.ids.size();
  std::set<Pauli> kernel_obs;
  for (const auto& id : k.ids)
    for (const auto& r : id.rows) kernel_obs.insert(r);
  auto odd_list = detail::odd_observables(k.ids);
  std::set<Pauli> available(odd_list.begin(), odd_list.end());
  uint64_t odd_qubits = 0;
  for (const auto& id : k.ids)
    for (int q = 0; q < id.N(); ++q)
      if (classify_sqp(id.column(q)).cls == SqpClass::Odd) odd_qubits |= uint64_t{1} << q;

  std::map<Pauli, std::vector<std::vector<Pauli>>> by_product;
  std::vector<Pauli> pick;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == I) {
      auto pp = product(pick);
      if (pp.word.is_identity() || kernel_obs.count(pp.word) || (pp.word.support() & odd_qubits)) return;
      std::vector<Pauli> rows = pick;
      rows.push_back(pp.word);
      auto id = try_id(rows);
      if (id && id->sign > 0) by_product[pp.word].push_back(pick);
      return;
    }
    for (const auto& r : k.ids[i].rows) {
      if (!available.count(r)) continue;
      bool ok = true;
      for (const auto& p : pick) ok = ok && commutes(p, r) && !(p == r);
      if (!ok) continue;
      pick.push_back(r);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  if (I >= 2) rec(rec, 0);
  for (auto& [P, choices] : by_product) {
    for (size_t a = 0; a < choices.size(); ++a) {
      bool used = false;
      for (const auto& r : choices[a]) used = used || !available.count(r);
      if (used) continue;
      for (size_t b = a + 1; b < choices.size(); ++b) {
        bool clash = false;
        for (const auto& r : choices[b]) {
          clash = clash || !available.count(r);
          clash = clash || std::find(choices[a].begin(), choices[a].end(), r) != choices[a].end();
        }
        if (clash) continue;
        for (const auto* c : {&choices[a], &choices[b]}) {
          std::vector<Pauli> rows = *c;
          rows.push_back(P);
          ids.push_back(verify_id(rows));
          for (const auto& r : *c) available.erase(r);
        }
        break;
      }
    }
  }

  std::vector<Pauli> made;
  for (size_t a = 0; a < I; ++a)
    for (size_t b = a + 1; b < I; ++b)
      for (const auto& ra : k.ids[a].rows)
        for (const auto& rb : k.ids[b].rows) {
          if (!available.count(ra) || !available.count(rb) || ra == rb || !commutes(ra, rb)) continue;
          auto pp = product({ra, rb});
          if (kernel_obs.count(pp.word) || (pp.word.support() & odd_qubits)) continue;
          auto nid = try_id({ra, rb, pp.word});
          if (!nid || nid->sign < 0) continue;
          ids.push_back(*nid);
          available.erase(ra);
          available.erase(rb);
          made.push_back(pp.word);
        }
  // close the new products: smallest positive sub-ID first
  std::sort(made.begin(), made.end());
  made.erase(std::unique(made.begin(), made.end()), made.end());
  std::vector<char> done(made.size(), 0);
  for (size_t sz = 3; sz <= std::min<size_t>(made.size(), 5); ++sz) {
    std::vector<size_t> idx(sz);
    auto comb = [&](auto&& self, size_t from, size_t d) -> void {
      if (d == sz) {
        std::vector<Pauli> rows;
        for (size_t i : idx)
          if (done[i]) return;
        for (size_t i : idx) rows.push_back(made[i]);
        auto nid = try_id(rows);
        if (nid && nid->sign > 0) {
          ids.push_back(*nid);
          for (size_t i : idx) done[i] = 1;
        }
        return;
      }
      for (size_t i = from; i < made.size(); ++i) {
        idx[d] = i;
        self(self, i + 1, d + 1);
      }
    };
    comb(comb, 0, 0);
  }
  auto odd = detail::odd_observables(ids);
  auto extra = detail::decomposition_ids(odd, true);
  ids.insert(ids.end(), extra.begin(), extra.end());
  return verify_ks_proof(ids);
}

inline ColoredGraph incidence_graph(const KSProof& p) {
  ColoredGraph g;
  size_t O = p.observables.size();
  g.adj.assign(O + p.ids.size(), {});
  g.color.assign(O, 0);
  g.color.resize(O + p.ids.size(), 1);
  for (size_t e = 0; e < p.incidence.size(); ++e)
    for (int o : p.incidence[e]) {
      g.adj[O + e].push_back(o);
      g.adj[static_cast<size_t>(o)].push_back(static_cast<int>(O + e));
    }
  return g;
}

// Signs are ignored: only how observables and IDs fit together matters.
inline bool proofs_isomorphic(const KSProof& a, const KSProof& b) {
  if (a.observables.size() != b.observables.size() || a.ids.size() != b.ids.size()) return false;
  return isomorphic(incidence_graph(a), incidence_graph(b));
}

struct AlphaBound {
  int quantum_value = 0;
  int classical_bound = 0;
  std::optional<int> brute_force_max;
};

// alpha = sum over IDs of sign * (product of assigned observable values).
inline AlphaBound alpha_bound(const KSProof& p, int max_observables = 24) {
  AlphaBound r;
  int I = static_cast<int>(p.ids.size());
  r.quantum_value = I;
  r.classical_bound = I - 2;
  size_t O = p.observables.size();
  if (static_cast<int>(O) > max_observables) return r;
  std::vector<uint64_t> masks;
  for (const auto& e : p.incidence) {
    uint64_t m = 0;
    for (int o : e) m ^= uint64_t{1} << o;  // repeated observable cancels
    masks.push_back(m);
  }
  int best = -I - 1;
  for (uint64_t a = 0; a < (uint64_t{1} << O); ++a) {
    int s = 0;
    for (size_t e = 0; e < masks.size(); ++e) {
      int v = p.ids[e].sign * ((__builtin_popcountll(masks[e] & a) & 1) ? -1 : 1);
      s += v;
    }
    best = std::max(best, s);
  }
  r.brute_force_max = best;
  return r;
}

inline std::string export_dot(const KSProof& p) {
  std::ostringstream os;
  os << "graph proof {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (size_t o = 0; o < p.observables.size(); ++o)
    os << "  o" << o << " [label=\"" << format_pauli(p.observables[o]) << "\"];\n";
  for (size_t e = 0; e < p.ids.size(); ++e) {
    bool neg = p.ids[e].sign < 0;
    os << "  e" << e << " [shape=point, width=" << (neg ? "0.15" : "0.08") << (neg ? ", style=bold" : "") << "];\n";
    for (int o : p.incidence[e])
      os << "  e" << e << " -- o" << o << (neg ? " [style=bold, penwidth=3]" : " [penwidth=1]") << ";\n";
  }
  os << "}\n";
  return os.str();
}

// Every subset of the proof's IDs that is a Kernel.
inline std::vector<std::vector<int>> find_embedded_kernels(const KSProof& p, size_t max_ids = 12) {
  size_t I = p.ids.size();
  if (I > max_ids) throw std::invalid_argument("too many IDs for a subset scan");
  std::vector<std::vector<int>> out;
  for (uint32_t s = 1; s < (1u << I); ++s) {
    std::vector<IdentityProduct> sub;
    std::vector<int> idx;
    for (size_t i = 0; i < I; ++i)
      if (s >> i & 1) {
        sub.push_back(p.ids[i]);
        idx.push_back(static_cast<int>(i));
      }
    if (is_kernel(sub)) out.push_back(idx);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace pks
