#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "identity_product.hpp"

namespace pks {

// Abelian group generated by an ID's rows. Every element is stored with the
// sign s such that element = s * (product of its generator subset).
struct Closure {
  int n = 0;
  std::vector<Pauli> gens;
  std::vector<Pauli> words;   // nonidentity elements, sorted
  std::vector<uint32_t> subset;  // generator subset per word
  std::vector<int> sign;      // +1 / -1 per word

  int index_of(const Pauli& w) const {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it == words.end() || !(*it == w)) return -1;
    return static_cast<int>(it - words.begin());
  }
};

inline Closure closure(const std::vector<Pauli>& rows) {
  if (rows.empty()) throw std::invalid_argument("closure of empty set");
  Closure c;
  c.n = rows.front().n;
  // elements as phased words keyed by word
  std::map<std::pair<uint64_t, uint64_t>, std::pair<int, uint32_t>> elems;  // -> (phase, subset)
  elems[{0, 0}] = {0, 0};
  for (const auto& r : rows) {
    if (r.is_identity()) continue;
    if (elems.count({r.z, r.x})) continue;
    uint32_t bit = 1u << c.gens.size();
    c.gens.push_back(r);
    if (c.gens.size() > 24) throw std::invalid_argument("closure too large");
    auto snapshot = elems;
    for (const auto& [key, val] : snapshot) {
      Pauli w{key.first, key.second, c.n};
      auto p = multiply(PhasedPauli{w, val.first}, r);
      elems[{p.word.z, p.word.x}] = {p.phase, val.second | bit};
    }
  }
  for (const auto& [key, val] : elems) {
    if (key.first == 0 && key.second == 0) continue;
    if (val.first & 1) throw std::invalid_argument("closure of non-commuting rows");
    c.words.push_back(Pauli{key.first, key.second, c.n});
  }
  std::sort(c.words.begin(), c.words.end());
  for (const auto& w : c.words) {
    auto& v = elems[{w.z, w.x}];
    c.subset.push_back(v.second);
    c.sign.push_back(v.first == 0 ? 1 : -1);
  }
  return c;
}

inline Closure closure(const IdentityProduct& id) { return closure(id.rows); }

// A ray: joint eigenprojector of a closure group, stored as the sorted list
// of (element, eigenvalue) pairs.
struct Ray {
  int n = 0;
  std::vector<Pauli> words;
  std::vector<signed char> values;
  int rank = 1;
  int origin = -1;  // index of the first ID producing it

  int eigenvalue(const Pauli& w) const {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it == words.end() || !(*it == w)) return 0;
    return values[static_cast<size_t>(it - words.begin())];
  }
  friend bool operator==(const Ray& a, const Ray& b) { return a.words == b.words && a.values == b.values; }
  friend bool operator<(const Ray& a, const Ray& b) {
    if (a.words != b.words) return a.words < b.words;
    return a.values < b.values;
  }
  std::string signature() const {
    std::string s;
    for (size_t i = 0; i < words.size(); ++i) {
      if (i) s += ' ';
      s += format_pauli(words[i]);
      s += values[i] > 0 ? "(+)" : "(-)";
    }
    return s;
  }
};

inline bool orthogonal(const Ray& a, const Ray& b) {
  if (a.n != b.n) throw DimensionError("rays act on different qubit counts");
  size_t i = 0, j = 0;
  while (i < a.words.size() && j < b.words.size()) {
    if (a.words[i] == b.words[j]) {
      if (a.values[i] != b.values[j]) return true;
      ++i;
      ++j;
    } else if (a.words[i] < b.words[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

// Joint eigenrays of an ID, one per admissible eigenvalue pattern.
inline std::vector<Ray> eigenbasis(const IdentityProduct& id, int origin = -1) {
  Closure c = closure(id);
  size_t k = c.gens.size();
  std::vector<Ray> out;
  for (uint32_t lam = 0; lam < (1u << k); ++lam) {
    Ray r;
    r.n = c.n;
    r.words = c.words;
    r.rank = 1 << (c.n - static_cast<int>(k));
    r.origin = origin;
    for (size_t w = 0; w < c.words.size(); ++w) {
      int v = c.sign[w];
      if (__builtin_popcount(c.subset[w] & lam) & 1) v = -v;
      r.values.push_back(static_cast<signed char>(v));
    }
    // product of row eigenvalues must equal the ID sign
    int prod = 1;
    for (const auto& row : id.rows) prod *= row.is_identity() ? 1 : r.eigenvalue(row);
    if (prod != id.sign) continue;
    out.push_back(std::move(r));
  }
  return out;
}

struct RBSet {
  int n = 0;
  std::vector<Ray> rays;
  std::vector<std::vector<int>> bases;  // sorted ray indices
  std::vector<int> basis_kind;          // -1 hybrid, otherwise source ID index
  std::vector<std::pair<int, int>> hybrid_pairs;  // source ID pair per hybrid basis
  size_t rays_before_dedup = 0;

  std::vector<int> multiplicity() const {
    std::vector<int> m(rays.size(), 0);
    for (const auto& b : bases)
      for (int r : b) ++m[static_cast<size_t>(r)];
    return m;
  }
};

struct SymbolTerm {
  int count;
  int rank;  // 0 when not shown
  int sub;
  friend bool operator==(const SymbolTerm&, const SymbolTerm&) = default;
  friend auto operator<=>(const SymbolTerm&, const SymbolTerm&) = default;
};

inline std::string format_index(int v) {
  std::string s = std::to_string(v);
  return s.size() > 1 ? "{" + s + "}" : s;
}

inline std::string format_terms(const std::vector<SymbolTerm>& terms) {
  std::string s;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(terms[i].count);
    if (terms[i].rank) s += "^" + format_index(terms[i].rank);
    s += "_" + format_index(terms[i].sub);
  }
  return s;
}

struct RBSymbol {
  std::vector<SymbolTerm> rays;   // count^rank_multiplicity
  std::vector<SymbolTerm> bases;  // count_size
  int R = 0, B = 0;
  std::string compact() const { return std::to_string(R) + "-" + std::to_string(B); }
  std::string expanded() const { return format_terms(rays) + " - " + format_terms(bases); }
};

// Rays ordered by rank, then multiplicity descending; bases by size
// descending. Rank is printed unless every ray has rank 1.
inline RBSymbol rb_symbol(const std::vector<Ray>& rays, const std::vector<std::vector<int>>& bases,
                          const std::vector<int>* subset = nullptr) {
  std::vector<int> use;
  if (subset) use = *subset;
  else
    for (size_t b = 0; b < bases.size(); ++b) use.push_back(static_cast<int>(b));
  std::map<int, int> mult;
  std::map<int, int> sizes;
  for (int b : use) {
    sizes[static_cast<int>(bases[static_cast<size_t>(b)].size())]++;
    for (int r : bases[static_cast<size_t>(b)]) mult[r]++;
  }
  std::map<std::pair<int, int>, int> groups;  // (rank, -mult) -> count
  bool show_rank = false;
  for (auto [r, m] : mult) {
    int rk = rays[static_cast<size_t>(r)].rank;
    if (rk != 1) show_rank = true;
    groups[{rk, -m}]++;
  }
  RBSymbol s;
  s.R = static_cast<int>(mult.size());
  s.B = static_cast<int>(use.size());
  for (auto& [key, cnt] : groups) s.rays.push_back({cnt, show_rank ? key.first : 0, -key.second});
  for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) s.bases.push_back({it->second, 0, it->first});
  return s;
}

inline RBSymbol rb_symbol(const RBSet& set) { return rb_symbol(set.rays, set.bases); }

class IntractableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigenbases of every ID, then hybrids for every ID pair whose closures
// intersect: rays of the first ID whose restricted character lies in a
// nonempty proper subset A, joined with rays of the second whose character
// lies outside A.
inline RBSet generate_rb_set(const std::vector<IdentityProduct>& ids, int max_shared = 4) {
  if (ids.empty()) throw std::invalid_argument("no IDs");
  RBSet set;
  set.n = ids.front().N();
  std::map<Ray, int> index;
  std::vector<std::vector<int>> eig(ids.size());
  std::vector<Closure> clos;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i].N() != set.n) throw DimensionError("IDs act on different qubit counts");
    clos.push_back(closure(ids[i]));
    for (auto& r : eigenbasis(ids[i], static_cast<int>(i))) {
      ++set.rays_before_dedup;
      auto it = index.find(r);
      int idx;
      if (it == index.end()) {
        idx = static_cast<int>(set.rays.size());
        index.emplace(r, idx);
        set.rays.push_back(r);
      } else {
        idx = it->second;
      }
      eig[i].push_back(idx);
    }
  }
  std::set<std::vector<int>> seen;
  auto add_basis = [&](std::vector<int> b, int kind, std::pair<int, int> pr) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    if (!seen.insert(b).second) return;
    set.bases.push_back(b);
    set.basis_kind.push_back(kind);
    set.hybrid_pairs.push_back(pr);
  };
  for (size_t i = 0; i < ids.size(); ++i) add_basis(eig[i], static_cast<int>(i), {-1, -1});
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j) {
      std::vector<Pauli> T;
      std::set_intersection(clos[i].words.begin(), clos[i].words.end(), clos[j].words.begin(), clos[j].words.end(),
                            std::back_inserter(T));
      if (T.empty()) continue;
      if (clos[i].words == clos[j].words) continue;  // same group: no new bases
      auto restrict = [&](int r) {
        std::vector<signed char> v;
        for (const auto& w : T) v.push_back(static_cast<signed char>(set.rays[static_cast<size_t>(r)].eigenvalue(w)));
        return v;
      };
      std::set<std::vector<signed char>> char_set;
      for (int r : eig[i]) char_set.insert(restrict(r));
      std::vector<std::vector<signed char>> chars(char_set.begin(), char_set.end());
      if (chars.size() > (size_t{1} << max_shared))
        throw IntractableError("shared closure too large for hybrid enumeration");
      size_t c = chars.size();
      for (uint64_t m = 1; m + 1 < (uint64_t{1} << c); ++m) {
        std::vector<int> b;
        auto in_a = [&](const std::vector<signed char>& ch) {
          size_t t = static_cast<size_t>(std::lower_bound(chars.begin(), chars.end(), ch) - chars.begin());
          return t < c && chars[t] == ch && (m >> t & 1);
        };
        for (int r : eig[i])
          if (in_a(restrict(r))) b.push_back(r);
        for (int r : eig[j])
          if (!in_a(restrict(r))) b.push_back(r);
        add_basis(b, -1, {static_cast<int>(i), static_cast<int>(j)});
      }
    }
  return set;
}

// ---------------------------------------------------------- explicit states

inline Eigen::MatrixXcd pauli_matrix(const Pauli& p) {
  using C = std::complex<double>;
  Eigen::Matrix2cd I2 = Eigen::Matrix2cd::Identity(), Z, X, Y;
  Z << 1, 0, 0, -1;
  X << 0, 1, 1, 0;
  Y << 0, C(0, -1), C(0, 1), 0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < p.n; ++q) {
    char c = p.letter(q);
    const Eigen::Matrix2cd& s = c == 'Z' ? Z : c == 'X' ? X : c == 'Y' ? Y : I2;
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (int a = 0; a < m.rows(); ++a)
      for (int b = 0; b < m.cols(); ++b) next.block(a * 2, b * 2, 2, 2) = m(a, b) * s;
    m = next;
  }
  return m;
}

inline Eigen::MatrixXcd ray_projector(const Ray& r) {
  // Closure words are products of generators; use every word, since the
  // projector equals the group average sum_w value(w) w / |G|.
  int d = 1 << r.n;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(d, d);
  for (size_t i = 0; i < r.words.size(); ++i) P += static_cast<double>(r.values[i]) * pauli_matrix(r.words[i]);
  return P / static_cast<double>(r.words.size() + 1);
}

// Simultaneous eigenvectors of an ID with M = N+1 by projector splitting.
inline std::vector<Eigen::VectorXcd> explicit_states(const IdentityProduct& id) {
  if (id.M() != id.N() + 1) throw std::invalid_argument("explicit_states needs M = N+1");
  if (id.N() > 6) throw std::invalid_argument("explicit_states supports N <= 6");
  auto rays = eigenbasis(id);
  Closure c = closure(id);
  int d = 1 << id.N();
  std::vector<Eigen::MatrixXcd> gens;
  for (const auto& g : c.gens) gens.push_back(pauli_matrix(g));
  std::vector<Eigen::VectorXcd> out;
  for (const auto& r : rays) {
    if (r.rank != 1) throw std::logic_error("degenerate eigenspace");
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(d, d);
    for (size_t g = 0; g < gens.size(); ++g) {
      int lam = r.eigenvalue(c.gens[g]);
      P = P * (Eigen::MatrixXcd::Identity(d, d) + static_cast<double>(lam) * gens[g]) * 0.5;
    }
    Eigen::Index best = 0;
    P.colwise().norm().maxCoeff(&best);
    Eigen::VectorXcd v = P.col(best);
    if (v.norm() < 1e-9) throw std::runtime_error("numerical degeneracy in projector splitting");
    v.normalize();
    // fix the global phase: first component with the largest magnitude real positive
    Eigen::Index lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    v *= std::conj(v(lead)) / std::abs(v(lead));
    out.push_back(v);
  }
  return out;
}

}  // namespace pks
