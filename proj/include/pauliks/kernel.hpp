#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "budget.hpp"
#include "identity_product.hpp"

namespace pks {

// ---------------------------------------------------------------- Kernels

struct Kernel {
  std::vector<IdentityProduct> ids;
  int n = 0;
  bool composite() const { return ids.size() > 1; }
  int negatives() const {
    int c = 0;
    for (const auto& id : ids) c += id.sign < 0;
    return c;
  }
  // Product of all ID eigenvalue products: quantum prediction -1, any
  // noncontextual single-qubit assignment +1.
  int quantum_product() const { return negatives() % 2 ? -1 : 1; }
  int noncontextual_product() const { return 1; }
};

enum class KernelErrorCode { EvenNegativeCount, LetterParityViolation, Malformed };

class KernelError : public std::runtime_error {
 public:
  KernelError(KernelErrorCode c, int qubit, char letter, const std::string& msg)
      : std::runtime_error(msg), code(c), qubit(qubit), letter(letter) {}
  KernelErrorCode code;
  int qubit;
  char letter;
};

inline Kernel verify_kernel(const std::vector<IdentityProduct>& ids) {
  if (ids.empty()) throw KernelError(KernelErrorCode::Malformed, -1, 0, "kernel has no IDs");
  int n = ids.front().N();
  for (const auto& id : ids)
    if (id.N() != n) throw KernelError(KernelErrorCode::Malformed, -1, 0, "kernel IDs act on different qubit counts");
  Kernel k{ids, n};
  for (int q = 0; q < n; ++q) {
    int cnt[4] = {0, 0, 0, 0};
    for (const auto& id : ids)
      for (const auto& r : id.rows) ++cnt[((r.z >> q) & 1) | (((r.x >> q) & 1) << 1)];
    const char letters[4] = {'I', 'Z', 'X', 'Y'};
    for (int l = 1; l < 4; ++l)
      if (cnt[l] & 1)
        throw KernelError(KernelErrorCode::LetterParityViolation, q, letters[l],
                          "LETTER_PARITY_VIOLATION(" + std::to_string(q) + "," + letters[l] + ")");
  }
  if (k.negatives() % 2 == 0) throw KernelError(KernelErrorCode::EvenNegativeCount, -1, 0, "EVEN_NEGATIVE_COUNT");
  return k;
}

inline bool is_kernel(const std::vector<IdentityProduct>& ids) {
  try {
    verify_kernel(ids);
    return true;
  } catch (const KernelError&) {
    return false;
  }
}

namespace detail {

inline std::optional<IdentityProduct> restrict_id(const IdentityProduct& id, uint64_t cols) {
  std::vector<Pauli> rows;
  for (const auto& r : id.rows) rows.push_back(Pauli{r.z & cols, r.x & cols, r.n});
  return try_id(rows);
}

}  // namespace detail

// Brute force over every deletion of IDs and/or qubits.
inline bool is_critical_kernel(const Kernel& k, Budget budget = {}) {
  size_t I = k.ids.size();
  int n = k.n;
  if (I > 20 || n > 24) throw std::invalid_argument("kernel too large for brute-force criticality");
  uint64_t full_c = (uint64_t{1} << n) - 1;
  BudgetTracker tracker(budget);
  // Restrictions per column mask are shared across ID subsets.
  for (uint64_t C = full_c;; C = (C - 1) & full_c) {
    if (C) {
      std::vector<std::optional<IdentityProduct>> restricted;
      for (const auto& id : k.ids) restricted.push_back(detail::restrict_id(id, C));
      for (uint32_t S = 1; S < (1u << I); ++S) {
        if (!tracker.tick()) throw std::runtime_error("budget exceeded in kernel criticality");
        if (C == full_c && S == (1u << I) - 1) continue;
        std::vector<IdentityProduct> sub;
        bool ok = true;
        for (size_t i = 0; i < I && ok; ++i) {
          if (!(S >> i & 1)) continue;
          if (!restricted[i]) ok = false;
          else sub.push_back(*restricted[i]);
        }
        if (ok && is_kernel(sub)) return false;
      }
    }
    if (C == 0) break;
  }
  return true;
}

// Groups of critically linked qubits of one ID: the finest split of its
// nontrivial columns into blocks that are each an ID on their own.
inline std::vector<std::vector<int>> critical_links(const IdentityProduct& id) {
  std::vector<int> nontrivial;
  for (int q = 0; q < id.N(); ++q) {
    auto c = classify_sqp(id.column(q)).cls;
    if (c == SqpClass::Odd || c == SqpClass::Even) nontrivial.push_back(q);
  }
  auto block_is_id = [&](uint64_t mask) {
    std::vector<Pauli> rows;
    for (const auto& r : id.rows) {
      Pauli p{r.z & mask, r.x & mask, r.n};
      if (!p.is_identity()) rows.push_back(p);
    }
    if (rows.size() < 3) return false;
    return try_id(rows).has_value();
  };
  std::vector<std::vector<int>> out;
  auto split = [&](auto&& self, std::vector<int> group) -> void {
    size_t g = group.size();
    if (g >= 2 && g < 63) {
      uint64_t gmask = 0;
      for (int q : group) gmask |= uint64_t{1} << q;
      // subsets containing the first element
      for (uint64_t s = 1; s < (uint64_t{1} << (g - 1)); ++s) {
        uint64_t a = uint64_t{1} << group[0];
        for (size_t t = 1; t < g; ++t)
          if (s >> (t - 1) & 1) a |= uint64_t{1} << group[t];
        uint64_t b = gmask & ~a;
        if (!b || !block_is_id(a) || !block_is_id(b)) continue;
        std::vector<int> ga, gb;
        for (int q : group) (a >> q & 1 ? ga : gb).push_back(q);
        self(self, ga);
        self(self, gb);
        return;
      }
    }
    out.push_back(group);
  };
  if (!nontrivial.empty()) split(split, nontrivial);
  std::sort(out.begin(), out.end());
  return out;
}

struct NetworkVerdict {
  bool all_reached = false;
  std::vector<std::vector<bool>> reached;  // [id][qubit]
};

// links[i] lists the critically linked qubit groups of ID i.
inline NetworkVerdict criticality_network(const Kernel& k, const std::vector<std::vector<std::vector<int>>>& links) {
  size_t I = k.ids.size();
  int n = k.n;
  if (links.size() != I) throw std::invalid_argument("one link list per ID is required");
  std::vector<std::vector<char>> cls(I, std::vector<char>(static_cast<size_t>(n), 'I'));
  for (size_t i = 0; i < I; ++i)
    for (int q = 0; q < n; ++q) {
      auto c = classify_sqp(k.ids[i].column(q)).cls;
      cls[i][static_cast<size_t>(q)] = c == SqpClass::Odd ? 'O' : c == SqpClass::Even ? 'E' : 'I';
    }
  NetworkVerdict v;
  v.reached.assign(I, std::vector<bool>(static_cast<size_t>(n), false));
  std::vector<std::pair<size_t, int>> stack;
  for (size_t i = 0; i < I && stack.empty(); ++i)
    for (int q = 0; q < n; ++q)
      if (cls[i][static_cast<size_t>(q)] == 'O') {
        stack.push_back({i, q});
        v.reached[i][static_cast<size_t>(q)] = true;
        break;
      }
  if (stack.empty()) {
    // single whole ID: the network is the ID's own links
    if (I == 1 && links[0].size() == 1) {
      for (int q : links[0][0]) v.reached[0][static_cast<size_t>(q)] = true;
    }
  }
  auto visit = [&](size_t i, int q) {
    if (!v.reached[i][static_cast<size_t>(q)]) {
      v.reached[i][static_cast<size_t>(q)] = true;
      stack.push_back({i, q});
    }
  };
  while (!stack.empty()) {
    auto [i, q] = stack.back();
    stack.pop_back();
    if (cls[i][static_cast<size_t>(q)] == 'O')
      for (size_t j = 0; j < I; ++j)
        if (j != i && cls[j][static_cast<size_t>(q)] == 'O') visit(j, q);
    for (const auto& g : links[i])
      if (std::find(g.begin(), g.end(), q) != g.end())
        for (int r : g) visit(i, r);
  }
  std::vector<bool> qubit_hit(static_cast<size_t>(n), false);
  bool ids_ok = true;
  for (size_t i = 0; i < I; ++i) {
    bool any = false;
    for (int q = 0; q < n; ++q)
      if (v.reached[i][static_cast<size_t>(q)]) {
        any = true;
        qubit_hit[static_cast<size_t>(q)] = true;
      }
    ids_ok = ids_ok && any;
  }
  // Every qubit carrying a nontrivial SQP must be reached.
  bool qubits_ok = true;
  for (int q = 0; q < n; ++q) {
    bool used = false;
    for (size_t i = 0; i < I; ++i) used = used || cls[i][static_cast<size_t>(q)] != 'I';
    if (used && !qubit_hit[static_cast<size_t>(q)]) qubits_ok = false;
  }
  v.all_reached = ids_ok && qubits_ok;
  return v;
}

inline NetworkVerdict criticality_network(const Kernel& k) {
  std::vector<std::vector<std::vector<int>>> links;
  for (const auto& id : k.ids) links.push_back(critical_links(id));
  return criticality_network(k, links);
}

// ------------------------------------------------- Composite Kernel Structures

struct Cks {
  int n = 0;
  std::vector<uint64_t> rows;  // bit q set = 'O' at qubit q

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    for (auto r : rows) {
      std::string s;
      for (int q = 0; q < n; ++q) s.push_back(r >> q & 1 ? 'O' : 'I');
      out.push_back(s);
    }
    return out;
  }
  friend bool operator==(const Cks&, const Cks&) = default;
};

inline Cks parse_cks(const std::vector<std::string>& lines) {
  if (lines.empty()) throw std::invalid_argument("empty CKS");
  Cks c;
  c.n = static_cast<int>(lines.front().size());
  if (c.n < 1 || c.n > 63) throw std::invalid_argument("CKS width out of range");
  for (const auto& l : lines) {
    if (static_cast<int>(l.size()) != c.n) throw std::invalid_argument("ragged CKS");
    uint64_t r = 0;
    for (int q = 0; q < c.n; ++q) {
      if (l[static_cast<size_t>(q)] == 'O') r |= uint64_t{1} << q;
      else if (l[static_cast<size_t>(q)] != 'I' && l[static_cast<size_t>(q)] != 'E')
        throw std::invalid_argument("CKS entries must be O or I");
    }
    c.rows.push_back(r);
  }
  return c;
}

inline bool is_valid_cks(const Cks& c) {
  if (c.rows.size() < 2) return false;
  uint64_t sum = 0;
  for (auto r : c.rows) {
    if (r == 0 || (__builtin_popcountll(r) & 1)) return false;
    sum ^= r;
  }
  return sum == 0;
}

// Critical iff the rows form a circuit over GF(2) covering every column:
// no proper nonempty row subset sums to zero, and no column can be dropped
// (an unused column would be a deletable qubit).
inline bool is_critical_cks(const Cks& c) {
  if (!is_valid_cks(c)) return false;
  size_t k = c.rows.size();
  uint64_t cover = 0;
  for (auto r : c.rows) cover |= r;
  if (cover != (c.n == 64 ? ~0ull : (uint64_t{1} << c.n) - 1)) return false;
  if (k == 2) return c.rows[0] == c.rows[1];
  // Circuit iff any k-1 rows are independent; checking the first k-1 suffices
  // once the total is zero, because the only dependency is then all-ones.
  std::vector<uint64_t> basis;
  for (size_t i = 0; i + 1 < k; ++i) {
    uint64_t v = c.rows[i];
    for (auto b : basis) v = std::min(v, v ^ b);
    if (v == 0) return false;
    basis.push_back(v);
    std::sort(basis.rbegin(), basis.rend());
  }
  return true;
}

namespace detail {

// Colour refinement on the row/column incidence graph, then exhaustive
// search over column orders consistent with the final colour classes.
inline std::vector<uint64_t> cks_canonical_rows(const Cks& c) {
  int n = c.n;
  size_t k = c.rows.size();
  std::vector<uint64_t> colc(static_cast<size_t>(n), 0), rowc(k, 0);
  for (size_t i = 0; i < k; ++i) rowc[i] = static_cast<uint64_t>(__builtin_popcountll(c.rows[i]));
  for (int round = 0; round < 4; ++round) {
    for (int q = 0; q < n; ++q) {
      std::vector<uint64_t> ms;
      for (size_t i = 0; i < k; ++i)
        if (c.rows[i] >> q & 1) ms.push_back(rowc[i]);
      std::sort(ms.begin(), ms.end());
      uint64_t h = 1469598103934665603ull ^ ms.size();
      for (auto m : ms) h = (h ^ m) * 1099511628211ull;
      colc[static_cast<size_t>(q)] = h;
    }
    for (size_t i = 0; i < k; ++i) {
      std::vector<uint64_t> ms;
      for (int q = 0; q < n; ++q)
        if (c.rows[i] >> q & 1) ms.push_back(colc[static_cast<size_t>(q)]);
      std::sort(ms.begin(), ms.end());
      uint64_t h = 7809847782465536322ull ^ ms.size();
      for (auto m : ms) h = (h ^ m) * 1099511628211ull;
      rowc[i] = h;
    }
  }
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return colc[static_cast<size_t>(a)] < colc[static_cast<size_t>(b)];
  });
  // cells of equal colour
  std::vector<std::pair<int, int>> cells;
  for (int s = 0; s < n;) {
    int e = s;
    while (e < n && colc[static_cast<size_t>(order[static_cast<size_t>(e)])] == colc[static_cast<size_t>(order[static_cast<size_t>(s)])]) ++e;
    cells.push_back({s, e});
    s = e;
  }
  std::vector<uint64_t> best, cur(k);
  auto evaluate = [&]() {
    for (size_t i = 0; i < k; ++i) {
      uint64_t r = 0;
      for (int p = 0; p < n; ++p)
        if (c.rows[i] >> order[static_cast<size_t>(p)] & 1) r |= uint64_t{1} << (n - 1 - p);
      cur[i] = r;
    }
    std::sort(cur.begin(), cur.end(), std::greater<>());
    if (best.empty() || cur > best) best = cur;
  };
  auto rec = [&](auto&& self, size_t cell) -> void {
    if (cell == cells.size()) {
      evaluate();
      return;
    }
    auto [s, e] = cells[cell];
    std::sort(order.begin() + s, order.begin() + e);
    do {
      self(self, cell + 1);
    } while (std::next_permutation(order.begin() + s, order.begin() + e));
  };
  rec(rec, 0);
  return best;
}

}  // namespace detail

// Canonical string: rows as O/I text after the lexicographically greatest
// arrangement (so the first row starts with its O entries).
inline std::string canonicalize_cks(const Cks& c) {
  auto rows = detail::cks_canonical_rows(c);
  std::string s = std::to_string(c.n) + ":";
  for (auto r : rows) {
    for (int p = c.n - 1; p >= 0; --p) s.push_back(r >> p & 1 ? 'O' : 'I');
    s.push_back('/');
  }
  return s;
}

inline Cks cks_from_key(const std::string& key) {
  auto colon = key.find(':');
  int n = std::stoi(key.substr(0, colon));
  std::vector<std::string> lines;
  std::string cur;
  for (size_t i = colon + 1; i < key.size(); ++i) {
    if (key[i] == '/') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(key[i]);
    }
  }
  Cks c = parse_cks(lines);
  c.n = n;
  return c;
}

struct CksEnumeration {
  std::vector<Cks> structures;
  size_t labeled_circuits = 0;
  bool truncated = false;
};

// All critical CKSs on n odd qubits, unique up to row and column permutation.
inline CksEnumeration enumerate_cks(int n, Budget budget = {}) {
  if (n < 2) throw std::invalid_argument("enumerate_cks needs N >= 2");
  if (n > 10) throw std::invalid_argument("enumerate_cks supports N <= 10");
  uint64_t full = (uint64_t{1} << n) - 1;
  std::vector<uint64_t> even;
  for (uint64_t v = 1; v <= full; ++v)
    if (__builtin_popcountll(v) % 2 == 0) even.push_back(v);
  CksEnumeration out;
  std::set<std::string> seen;
  BudgetTracker tracker(budget);
  auto emit = [&](const std::vector<uint64_t>& rows) {
    ++out.labeled_circuits;
    Cks c{n, rows};
    std::string key = canonicalize_cks(c);
    if (seen.insert(key).second) out.structures.push_back(cks_from_key(key));
  };
  // The doubled all-O row is the only two-row circuit.
  if (n % 2 == 0) emit({full, full});
  // Pick w1 < ... < w_{k-1} independent; w_k is their sum and must exceed w_{k-1}.
  std::vector<uint64_t> chosen;
  std::vector<uint64_t> span{0};  // all combinations of chosen vectors
  auto rec = [&](auto&& self, size_t start, uint64_t sum, uint64_t cover) -> void {
    if (!tracker.tick()) {
      out.truncated = true;
      return;
    }
    if (chosen.size() >= 2 && sum > chosen.back() && ((cover | sum) == full)) {
      // sum is nonzero and outside the span of proper subsets by independence
      auto rows = chosen;
      rows.push_back(sum);
      emit(rows);
    }
    if (static_cast<int>(chosen.size()) == n - 1) return;
    for (size_t i = start; i < even.size(); ++i) {
      uint64_t v = even[i];
      if (std::find(span.begin(), span.end(), v) != span.end()) continue;
      size_t old = span.size();
      for (size_t j = 0; j < old; ++j) span.push_back(span[j] ^ v);
      chosen.push_back(v);
      self(self, i + 1, sum ^ v, cover | v);
      chosen.pop_back();
      span.resize(old);
      if (out.truncated) return;
    }
  };
  rec(rec, 0, 0, 0);
  std::sort(out.structures.begin(), out.structures.end(), [](const Cks& a, const Cks& b) {
    if (a.rows.size() != b.rows.size()) return a.rows.size() < b.rows.size();
    return a.rows > b.rows;
  });
  return out;
}

// ------------------------------------------------------------ assembly

struct CksAssignment {
  IdentityProduct id;
  std::vector<int> qubit_map;  // ID qubit -> kernel qubit
};

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(int row, const std::string& msg) : std::runtime_error(msg), row(row) {}
  int row;
};

// Places each ID onto its CKS row; qubits >= cks.n are free (Even/Trivial) slots.
// If the negative count comes out even, the first Odd SQP of the last ID in
// canonical row order has its Z and X exchanged.
inline Kernel assemble_kernel(const Cks& cks, const std::vector<CksAssignment>& assignment, int total_qubits = -1) {
  if (assignment.size() != cks.rows.size()) throw std::invalid_argument("one ID per CKS row is required");
  int n = total_qubits;
  if (n < 0) {
    n = cks.n;
    for (const auto& a : assignment)
      for (int q : a.qubit_map) n = std::max(n, q + 1);
  }
  std::vector<IdentityProduct> ids;
  for (size_t i = 0; i < assignment.size(); ++i) {
    const auto& a = assignment[i];
    if (static_cast<int>(a.qubit_map.size()) != a.id.N()) throw AssemblyError(static_cast<int>(i), "qubit map size mismatch");
    std::vector<Pauli> rows(a.id.rows.size(), identity(n));
    uint64_t odd_slots = 0, used = 0;
    for (int q = 0; q < a.id.N(); ++q) {
      int t = a.qubit_map[static_cast<size_t>(q)];
      if (t < 0 || t >= n || (used >> t & 1)) throw AssemblyError(static_cast<int>(i), "qubit map is not injective");
      used |= uint64_t{1} << t;
      auto cls = classify_sqp(a.id.column(q)).cls;
      if (cls == SqpClass::Odd) odd_slots |= uint64_t{1} << t;
      for (size_t r = 0; r < rows.size(); ++r) rows[r].set_letter(t, a.id.rows[r].letter(q));
    }
    if (odd_slots != cks.rows[i])
      throw AssemblyError(static_cast<int>(i), "ODDNESS_MISMATCH(" + std::to_string(i) + ")");
    ids.push_back(verify_id(rows));
  }
  int neg = 0;
  for (const auto& id : ids) neg += id.sign < 0;
  if (neg % 2 == 0) {
    size_t last = 0;
    for (size_t i = 1; i < ids.size(); ++i)
      if (ids[last].row_strings() < ids[i].row_strings()) last = i;
    int col = -1;
    for (int q = 0; q < n && col < 0; ++q)
      if (classify_sqp(ids[last].column(q)).cls == SqpClass::Odd) col = q;
    if (col < 0) throw std::logic_error("sign fixing impossible: no Odd SQP");
    std::vector<Pauli> rows = ids[last].rows;
    for (auto& r : rows) {
      char c = r.letter(col);
      if (c == 'Z') r.set_letter(col, 'X');
      else if (c == 'X') r.set_letter(col, 'Z');
    }
    ids[last] = verify_id(rows);
  }
  return verify_kernel(ids);
}

}  // namespace pks
