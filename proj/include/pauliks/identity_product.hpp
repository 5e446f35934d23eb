#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "budget.hpp"
#include "pauli.hpp"

namespace pks {

enum class SqpClass { Odd, Even, Trivial, Invalid };

inline const char* to_string(SqpClass c) {
  switch (c) {
    case SqpClass::Odd: return "Odd";
    case SqpClass::Even: return "Even";
    case SqpClass::Trivial: return "Trivial";
    default: return "Invalid";
  }
}

struct SqpInfo {
  SqpClass cls;
  int phase;  // exponent of i for the ordered single-qubit product
};

// Letters are read top to bottom (row order).
inline SqpInfo classify_sqp(std::string_view col) {
  if (col.empty()) throw std::invalid_argument("empty SQP");
  int nz = 0, nx = 0, ny = 0;
  PhasedPauli acc{identity(1), 0};
  for (char c : col) {
    if (c == 'Z') ++nz;
    else if (c == 'X') ++nx;
    else if (c == 'Y') ++ny;
    else if (c != 'I') throw std::invalid_argument(std::string("illegal SQP letter '") + c + "'");
    Pauli p = identity(1);
    p.set_letter(0, c);
    acc = multiply(acc, p);
  }
  int kinds = (nz > 0) + (nx > 0) + (ny > 0);
  SqpClass cls = SqpClass::Invalid;
  if ((nz & 1) && (nx & 1) && (ny & 1)) cls = SqpClass::Odd;
  else if (!(nz & 1) && !(nx & 1) && !(ny & 1)) cls = kinds >= 2 ? SqpClass::Even : SqpClass::Trivial;
  return {cls, acc.phase};
}

struct IdentityProduct {
  std::vector<Pauli> rows;
  int n = 0;
  int sign = 1;
  int oddness = 0;

  int M() const { return static_cast<int>(rows.size()); }
  int N() const { return n; }
  bool is_null() const { return oddness == 0 && sign > 0; }
  bool is_whole() const { return oddness == 0 && sign < 0; }
  bool is_partial() const { return oddness > 0; }

  std::string column(int q) const {
    std::string s;
    s.reserve(rows.size());
    for (const auto& r : rows) s.push_back(r.letter(q));
    return s;
  }
  std::string symbol() const {
    return "ID" + std::to_string(M()) + "^" + std::to_string(n) + "_" + std::to_string(oddness);
  }
  std::string profile() const {
    std::string s;
    for (int q = 0; q < n; ++q) {
      auto c = classify_sqp(column(q)).cls;
      s.push_back(c == SqpClass::Odd ? 'O' : c == SqpClass::Even ? 'E' : 'I');
    }
    return s;
  }
  std::vector<std::string> row_strings() const {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(format_pauli(r));
    return out;
  }
};

enum class IdErrorCode { NonCommuting, ProductNotIdentity, Malformed };

class IdError : public std::runtime_error {
 public:
  IdError(IdErrorCode code, int i, int j, const std::string& msg)
      : std::runtime_error(msg), code(code), row_i(i), row_j(j) {}
  IdErrorCode code;
  int row_i, row_j;
};

inline IdentityProduct verify_id(const std::vector<Pauli>& rows) {
  if (rows.empty()) throw IdError(IdErrorCode::Malformed, -1, -1, "ID has no rows");
  int n = rows.front().n;
  for (const auto& r : rows)
    if (r.n != n) throw IdError(IdErrorCode::Malformed, -1, -1, "ID rows have different lengths");
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (!commutes(rows[i], rows[j]))
        throw IdError(IdErrorCode::NonCommuting, static_cast<int>(i), static_cast<int>(j),
                      "NON_COMMUTING(" + std::to_string(i) + "," + std::to_string(j) + ")");
  PhasedPauli p = product(rows);
  if (!p.word.is_identity() || (p.phase & 1))
    throw IdError(IdErrorCode::ProductNotIdentity, -1, -1, "PRODUCT_NOT_IDENTITY");
  IdentityProduct id{rows, n, p.phase == 0 ? 1 : -1, 0};
  for (int q = 0; q < n; ++q)
    if (classify_sqp(id.column(q)).cls == SqpClass::Odd) ++id.oddness;
  return id;
}

inline IdentityProduct verify_id(const std::vector<std::string>& rows) {
  std::vector<Pauli> ps;
  for (const auto& s : rows) ps.push_back(parse_pauli(s));
  return verify_id(ps);
}

inline std::optional<IdentityProduct> try_id(const std::vector<Pauli>& rows) {
  try {
    return verify_id(rows);
  } catch (const IdError&) {
    return std::nullopt;
  }
}

inline IdentityProduct make_id(std::initializer_list<const char*> rows) {
  std::vector<std::string> v(rows.begin(), rows.end());
  return verify_id(v);
}

// Relabels the letters of one column so they first appear in the order Z, X, Y.
inline std::string canonical_orientation(std::string_view col) {
  char map[128] = {};
  map[static_cast<int>('I')] = 'I';
  const char order[3] = {'Z', 'X', 'Y'};
  int next = 0;
  std::string out(col);
  for (auto& c : out) {
    if (!map[static_cast<int>(c)]) map[static_cast<int>(c)] = order[next++];
    c = map[static_cast<int>(c)];
  }
  return out;
}

inline std::vector<std::string> enumerate_unique_sqps(int M) {
  if (M < 3) throw std::invalid_argument("SQPs need M >= 3");
  std::vector<std::string> out;
  std::string cur(static_cast<size_t>(M), 'I');
  const char order[3] = {'Z', 'X', 'Y'};
  // restricted growth: each position is I or one of the first (used+1) letters
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == M) {
      auto info = classify_sqp(cur);
      if (info.cls == SqpClass::Odd || info.cls == SqpClass::Even) out.push_back(cur);
      return;
    }
    cur[static_cast<size_t>(pos)] = 'I';
    self(self, pos + 1, used);
    for (int l = 0; l < std::min(used + 1, 3); ++l) {
      cur[static_cast<size_t>(pos)] = order[l];
      self(self, pos + 1, std::max(used, l + 1));
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return Pauli::letter_rank(a[i]) < Pauli::letter_rank(b[i]);
    return false;
  });
  return out;
}

inline IdentityProduct id_from_columns(const std::vector<std::string>& cols) {
  int M = static_cast<int>(cols.front().size());
  int n = static_cast<int>(cols.size());
  std::vector<Pauli> rows(static_cast<size_t>(M), identity(n));
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < M; ++i) rows[static_cast<size_t>(i)].set_letter(q, cols[static_cast<size_t>(q)][static_cast<size_t>(i)]);
  return verify_id(rows);
}

// Key invariant under row reordering, column reordering and per-column letter relabeling.
inline std::string canonicalize_id(const IdentityProduct& id) {
  int M = id.M(), n = id.N();
  std::vector<std::string> cols;
  for (int q = 0; q < n; ++q) cols.push_back(id.column(q));
  std::vector<int> perm(static_cast<size_t>(M));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  std::vector<std::string> cur(static_cast<size_t>(n));
  std::string tmp(static_cast<size_t>(M), 'I');
  do {
    for (int q = 0; q < n; ++q) {
      for (int i = 0; i < M; ++i) tmp[static_cast<size_t>(i)] = cols[static_cast<size_t>(q)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
      cur[static_cast<size_t>(q)] = canonical_orientation(tmp);
    }
    std::sort(cur.begin(), cur.end());
    std::string key;
    for (const auto& c : cur) key += c + "|";
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::to_string(M) + "x" + std::to_string(n) + ":" + best;
}

namespace detail {

// Checks whether rows R restricted to columns C form a non-Null ID with distinct,
// non-identity rows.
inline bool is_sub_id(const std::vector<Pauli>& rows, uint32_t rmask, uint64_t cmask) {
  std::vector<Pauli> sub;
  for (size_t i = 0; i < rows.size(); ++i)
    if (rmask >> i & 1) sub.push_back(Pauli{rows[i].z & cmask, rows[i].x & cmask, rows[i].n});
  if (sub.size() < 3) return false;
  for (size_t i = 0; i < sub.size(); ++i) {
    if (sub[i].is_identity()) return false;
    for (size_t j = i + 1; j < sub.size(); ++j) {
      if (sub[i] == sub[j]) return false;
      if (!commutes(sub[i], sub[j])) return false;
    }
  }
  PhasedPauli p = product(sub);
  if (!p.word.is_identity() || (p.phase & 1)) return false;
  if (p.phase == 2) return true;  // negative
  // positive: must have an odd column to avoid being Null
  for (int q = 0; q < sub.front().n; ++q) {
    if (!(cmask >> q & 1)) continue;
    int nz = 0, nx = 0, ny = 0;
    for (const auto& r : sub) {
      char c = r.letter(q);
      nz += c == 'Z';
      nx += c == 'X';
      ny += c == 'Y';
    }
    if ((nz & 1) && (nx & 1) && (ny & 1)) return true;
  }
  return false;
}

}  // namespace detail

// True iff no deletion of rows and/or columns leaves a smaller non-Null ID.
inline bool is_critical_id(const IdentityProduct& id) {
  int M = id.M(), n = id.N();
  if (M > 30) throw std::invalid_argument("ID too large for criticality check");
  uint32_t full_r = (M == 32) ? ~0u : ((1u << M) - 1);
  uint64_t full_c = (n == 64) ? ~0ull : ((uint64_t{1} << n) - 1);
  // Per column, letter of each row as 2-bit code.
  std::vector<std::vector<int>> code(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(M)));
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < M; ++i) {
      const auto& r = id.rows[static_cast<size_t>(i)];
      code[static_cast<size_t>(q)][static_cast<size_t>(i)] = static_cast<int>(((r.z >> q) & 1) | (((r.x >> q) & 1) << 1));
    }
  for (uint32_t R = 1; R <= full_r; ++R) {
    if (__builtin_popcount(R) < 3) continue;
    // Columns that are scalar on R and are not all-identity on R.
    uint64_t valid = 0, nonzero = 0;
    for (int q = 0; q < n; ++q) {
      int cnt[4] = {0, 0, 0, 0};
      for (int i = 0; i < M; ++i)
        if (R >> i & 1) ++cnt[code[static_cast<size_t>(q)][static_cast<size_t>(i)]];
      bool odd = (cnt[1] & 1) && (cnt[2] & 1) && (cnt[3] & 1);
      bool even = !(cnt[1] & 1) && !(cnt[2] & 1) && !(cnt[3] & 1);
      if (odd || even) valid |= uint64_t{1} << q;
      if (cnt[1] + cnt[2] + cnt[3]) nonzero |= uint64_t{1} << q;
    }
    // Columns where every R-row is I can be added or dropped freely; skip them.
    uint64_t useful = valid & nonzero;
    // A sub-ID on R may not use any invalid column; iterate subsets of useful.
    for (uint64_t C = useful;; C = (C - 1) & useful) {
      if (C && !(R == full_r && C == full_c) && detail::is_sub_id(id.rows, R, C)) return false;
      if (C == 0) break;
    }
  }
  return true;
}

struct IdFilter {
  std::optional<int> oddness;
  std::optional<int> sign;
  bool whole_only = false;
  bool critical_only = true;
};

struct IdEnumeration {
  std::vector<IdentityProduct> unique;  // one representative per canonical key
  std::vector<std::string> keys;
  std::vector<size_t> multiplicity;     // raw column-set instances per unique ID
  size_t raw = 0;                       // raw instances whose rows come out in ascending order
  size_t raw_instances = 0;             // all raw column-set instances
  bool truncated = false;
  uint64_t nodes = 0;
};

inline bool rows_ascending(const std::vector<Pauli>& rows) {
  for (size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i - 1] < rows[i])) return false;
  return true;
}

inline IdEnumeration enumerate_ids(int M, int N, const IdFilter& filter = {}, Budget budget = {}) {
  if (M < 3 || N < 2) throw std::invalid_argument("enumerate_ids needs M >= 3 and N >= 2");
  if (M > 8) throw std::invalid_argument("enumerate_ids supports M <= 8");
  std::vector<std::string> sqps = enumerate_unique_sqps(M);
  if (filter.whole_only) {
    std::vector<std::string> even;
    for (auto& s : sqps)
      if (classify_sqp(s).cls == SqpClass::Even) even.push_back(s);
    sqps = even;
  }
  // Pair index for (i,j), i<j.
  std::vector<std::vector<int>> pair_index(static_cast<size_t>(M), std::vector<int>(static_cast<size_t>(M), -1));
  int npairs = 0;
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) pair_index[static_cast<size_t>(i)][static_cast<size_t>(j)] = npairs++;
  std::vector<uint32_t> pattern(sqps.size());
  std::vector<int> is_odd(sqps.size());
  int max_weight = 0;
  for (size_t s = 0; s < sqps.size(); ++s) {
    const auto& c = sqps[s];
    uint32_t p = 0;
    for (int i = 0; i < M; ++i)
      for (int j = i + 1; j < M; ++j) {
        char a = c[static_cast<size_t>(i)], b = c[static_cast<size_t>(j)];
        if (a != 'I' && b != 'I' && a != b) p |= 1u << pair_index[static_cast<size_t>(i)][static_cast<size_t>(j)];
      }
    pattern[s] = p;
    is_odd[s] = classify_sqp(c).cls == SqpClass::Odd;
    max_weight = std::max(max_weight, __builtin_popcount(p));
  }
  IdEnumeration out;
  std::map<std::string, size_t> seen;
  BudgetTracker tracker(budget);
  std::vector<size_t> chosen;
  bool allow_repeat = (M == 3);  // the ID3^2 case uses ZXY twice
  auto leaf = [&]() {
    std::vector<std::string> cols;
    for (size_t s : chosen) cols.push_back(sqps[s]);
    std::vector<Pauli> rows(static_cast<size_t>(M), identity(N));
    for (int q = 0; q < N; ++q)
      for (int i = 0; i < M; ++i) rows[static_cast<size_t>(i)].set_letter(q, cols[static_cast<size_t>(q)][static_cast<size_t>(i)]);
    for (int i = 0; i < M; ++i) {
      if (rows[static_cast<size_t>(i)].is_identity()) return;
      for (int j = i + 1; j < M; ++j)
        if (rows[static_cast<size_t>(i)] == rows[static_cast<size_t>(j)]) return;
    }
    auto id = try_id(rows);
    if (!id || id->is_null()) return;
    if (filter.whole_only && !id->is_whole()) return;
    if (filter.oddness && id->oddness != *filter.oddness) return;
    if (filter.sign && id->sign != *filter.sign) return;
    if (filter.critical_only && !is_critical_id(*id)) return;
    ++out.raw_instances;
    if (rows_ascending(rows)) ++out.raw;
    std::string key = canonicalize_id(*id);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, out.unique.size());
      out.unique.push_back(*id);
      out.keys.push_back(key);
      out.multiplicity.push_back(1);
    } else {
      ++out.multiplicity[it->second];
    }
  };
  auto rec = [&](auto&& self, size_t start, uint32_t acc, int odd) -> void {
    if (!tracker.tick()) {
      out.truncated = true;
      return;
    }
    int depth = static_cast<int>(chosen.size());
    if (depth == N) {
      if (acc == 0) leaf();
      return;
    }
    int remaining = N - depth;
    if (__builtin_popcount(acc) > remaining * max_weight) return;
    if (filter.oddness && odd > *filter.oddness) return;
    for (size_t s = start; s < sqps.size(); ++s) {
      chosen.push_back(s);
      self(self, allow_repeat ? s : s + 1, acc ^ pattern[s], odd + is_odd[s]);
      chosen.pop_back();
      if (out.truncated) return;
    }
  };
  rec(rec, 0, 0, 0);
  out.nodes = tracker.nodes();
  return out;
}

// qubit_perm[q] is the destination column of column q; letter_perm[q] maps
// "ZXY" to its image, e.g. "XZY" swaps Z and X in that column.
inline IdentityProduct permute_id(const IdentityProduct& id, const std::vector<int>& qubit_perm,
                                  const std::vector<std::string>& letter_perm) {
  int n = id.N();
  if (static_cast<int>(qubit_perm.size()) != n) throw std::invalid_argument("qubit permutation has wrong size");
  std::vector<Pauli> rows(id.rows.size(), identity(n));
  for (int q = 0; q < n; ++q) {
    std::string lp = letter_perm.empty() ? "ZXY" : letter_perm[static_cast<size_t>(q)];
    if (lp.size() != 3 || !std::is_permutation(lp.begin(), lp.end(), std::string("ZXY").begin()))
      throw std::invalid_argument("letter permutation must rearrange ZXY");
    for (size_t i = 0; i < id.rows.size(); ++i) {
      char c = id.rows[i].letter(q);
      char d = c == 'Z' ? lp[0] : c == 'X' ? lp[1] : c == 'Y' ? lp[2] : 'I';
      rows[i].set_letter(qubit_perm[static_cast<size_t>(q)], d);
    }
  }
  return verify_id(rows);
}

}  // namespace pks
