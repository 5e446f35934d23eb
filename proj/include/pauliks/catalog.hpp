#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cell600.hpp"
#include "identity_product.hpp"
#include "kernel.hpp"
#include "proof.hpp"
#include "rays.hpp"

namespace pks::catalog {

inline IdentityProduct id(std::initializer_list<const char*> rows) { return make_id(rows); }

inline Pauli word(int n, std::initializer_list<std::pair<int, char>> letters) {
  Pauli p = identity(n);
  for (auto [q, c] : letters) p.set_letter(q, c);
  return p;
}

// Swaps two letters inside one column; used for the sign-flipping
// transposition that turns a Partial ID into a Kite Kernel.
inline IdentityProduct swap_letters(const IdentityProduct& src, int col, char a, char b) {
  std::vector<Pauli> rows = src.rows;
  for (auto& r : rows) {
    char c = r.letter(col);
    if (c == a) r.set_letter(col, b);
    else if (c == b) r.set_letter(col, a);
  }
  return verify_id(rows);
}

// ------------------------------------------------------------ 2 and 3 qubits

inline Kernel two_qubit_kernel() { return verify_kernel({id({"ZZ", "XX", "YY"}), id({"ZX", "XZ", "YY"})}); }

inline KSProof mermin_square() {
  return verify_ks_proof({id({"ZI", "IX", "ZX"}), id({"IZ", "XI", "XZ"}), id({"ZZ", "XX", "YY"}),
                          id({"ZI", "IZ", "ZZ"}), id({"IX", "XI", "XX"}), id({"ZX", "XZ", "YY"})});
}

// The 15 commuting triples of the 2-qubit group.
inline std::vector<IdentityProduct> two_qubit_triples() {
  std::vector<Pauli> obs;
  for (uint64_t z = 0; z < 4; ++z)
    for (uint64_t x = 0; x < 4; ++x)
      if (z | x) obs.push_back(Pauli{z, x, 2});
  std::sort(obs.begin(), obs.end());
  std::vector<IdentityProduct> out;
  for (size_t i = 0; i < obs.size(); ++i)
    for (size_t j = i + 1; j < obs.size(); ++j) {
      if (!commutes(obs[i], obs[j])) continue;
      Pauli k = multiply(PhasedPauli{obs[i], 0}, obs[j]).word;
      if (k < obs[j] || k == obs[j]) continue;
      out.push_back(verify_id(std::vector<Pauli>{obs[i], obs[j], k}));
    }
  return out;
}

// All 60 rank-1 rays of two qubits: eigenbases of the 15 triples plus hybrids.
inline RBSet pauli60() { return generate_rb_set(two_qubit_triples()); }

// The 600-cell as a ray/basis set for the parity search. Rays carry no
// signature; only the basis incidence is used.
inline RBSet cell600_set() {
  RBSet s;
  s.n = 2;
  for (size_t i = 0; i < cell600().rays.size(); ++i) {
    Ray r;
    r.n = 2;
    r.origin = static_cast<int>(i);
    s.rays.push_back(r);
  }
  for (const auto& b : cell600().bases) {
    std::vector<int> v(b.begin(), b.end());
    std::sort(v.begin(), v.end());
    s.bases.push_back(v);
    s.basis_kind.push_back(-1);
    s.hybrid_pairs.push_back({-1, -1});
  }
  s.rays_before_dedup = s.rays.size();
  return s;
}

// The ten triples left after removing a spread (five disjoint triples
// covering all 15 observables) chosen so that one negative ID remains.
inline KSProof whorl2() {
  auto lines = two_qubit_triples();
  auto mask = [](const IdentityProduct& t) {
    uint32_t m = 0;
    for (const auto& r : t.rows) m |= 1u << (r.z * 4 + r.x);
    return m;
  };
  int total_neg = 0;
  for (const auto& t : lines) total_neg += t.sign < 0;
  std::vector<int> pick;
  std::function<bool(uint32_t, size_t)> rec = [&](uint32_t used, size_t from) -> bool {
    if (pick.size() == 5) {
      int neg = 0;
      for (int i : pick) neg += lines[static_cast<size_t>(i)].sign < 0;
      return total_neg - neg == 1;
    }
    for (size_t i = from; i < lines.size(); ++i) {
      if (mask(lines[i]) & used) continue;
      pick.push_back(static_cast<int>(i));
      if (rec(used | mask(lines[i]), i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!rec(0, 0)) throw std::logic_error("no spread found");
  std::vector<IdentityProduct> ids;
  for (size_t i = 0; i < lines.size(); ++i)
    if (std::find(pick.begin(), pick.end(), static_cast<int>(i)) == pick.end()) ids.push_back(lines[i]);
  return verify_ks_proof(ids);
}

inline IdentityProduct star_kernel(int n);

inline KSProof mermin_star() { return generate_proof_from_kernel(verify_kernel({star_kernel(3)})); }

inline Kernel kite3_kernel() {
  auto a = id({"ZIZ", "IZZ", "XXX", "YYX"});
  return verify_kernel({a, swap_letters(a, 0, 'Z', 'X')});
}

inline KSProof kite3() { return generate_proof_from_kernel(kite3_kernel()); }

// Nine observables on three qubits, isomorphic to the Mermin Square but
// built on a 2-qubit Kernel over the last two qubits.
inline KSProof special_square() {
  return verify_ks_proof({id({"IZZ", "IYY", "IXX"}), id({"IZX", "IYY", "IXZ"}), id({"ZZI", "IZZ", "ZIZ"}),
                          id({"ZZI", "IZX", "ZIX"}), id({"ZIX", "IXX", "ZXI"}), id({"ZIZ", "IXZ", "ZXI"})});
}

// ------------------------------------------------------- Wheels and Whorls

inline Cks wheel_cks(int n) {
  if (n < 3) throw std::invalid_argument("the Wheel/Whorl structure needs N >= 3");
  Cks c{n, {}};
  for (int i = 0; i < n; ++i) c.rows.push_back((uint64_t{1} << i) | (uint64_t{1} << ((i + 1) % n)));
  return c;
}

// Spokes are ID3^2 copies on qubit pairs (i, i+1). Odd N keeps all of them
// identical and negative; even N exchanges Z and X on one qubit of the last
// spoke, making it positive.
inline Kernel wheel_whorl_kernel(int n) {
  if (n < 3) throw std::invalid_argument("the Wheel/Whorl structure needs N >= 3");
  std::vector<IdentityProduct> ids;
  for (int i = 0; i < n; ++i) {
    int a = i, b = (i + 1) % n;
    std::vector<Pauli> rows{word(n, {{a, 'Z'}, {b, 'Z'}}), word(n, {{a, 'X'}, {b, 'X'}}), word(n, {{a, 'Y'}, {b, 'Y'}})};
    auto s = verify_id(rows);
    if (n % 2 == 0 && i == n - 1) s = swap_letters(s, b, 'Z', 'X');
    ids.push_back(s);
  }
  return verify_kernel(ids);
}

inline Kernel wheel_kernel(int n) {
  if (n % 2 == 0) throw std::invalid_argument("Wheels exist for odd N");
  return wheel_whorl_kernel(n);
}

inline Kernel whorl_kernel(int n) {
  if (n % 2) throw std::invalid_argument("Whorls exist for even N");
  return wheel_whorl_kernel(n);
}

// Replaces a circle (an ID whose observables all come from the spokes) by a
// ring of ID3s through single-qubit observables.
inline std::vector<IdentityProduct> expand_circle(const IdentityProduct& circle) {
  std::vector<IdentityProduct> out;
  for (const auto& r : circle.rows) {
    std::vector<Pauli> rows{r};
    uint64_t s = r.support();
    while (s) {
      int q = __builtin_ctzll(s);
      s &= s - 1;
      rows.push_back(word(r.n, {{q, r.letter(q)}}));
    }
    out.push_back(verify_id(rows));
  }
  return out;
}

// Compact Wheel with the circles selected by expand_mask (bit c for
// circle c) replaced by rings.
inline KSProof wheel(int n, unsigned expand_mask = 0) {
  Kernel k = wheel_kernel(n);
  KSProof closed = generate_wheel_closure(k, 3);
  std::vector<IdentityProduct> ids = k.ids;
  for (size_t c = 0; c < 3; ++c) {
    const auto& circle = closed.ids[k.ids.size() + c];
    if (expand_mask >> c & 1) {
      auto ring = expand_circle(circle);
      ids.insert(ids.end(), ring.begin(), ring.end());
    } else {
      ids.push_back(circle);
    }
  }
  return verify_ks_proof(ids);
}

inline KSProof whorl(int n, bool expanded = false) {
  Kernel k = whorl_kernel(n);
  if (expanded) return generate_proof_from_kernel(k);
  return generate_wheel_closure(k, 1);
}

// ------------------------------------------------------------------ Stars

// Odd N: all-Z row plus the circulant X Z X rows. Even N: a head of four
// rows and an X X chain tail closing on qubit 2.
inline IdentityProduct star_kernel(int n) {
  if (n < 3) throw std::invalid_argument("Star Kernels need N >= 3");
  std::vector<Pauli> rows;
  Pauli all = identity(n);
  for (int q = 0; q < n; ++q) all.set_letter(q, 'Z');
  rows.push_back(all);
  if (n % 2) {
    for (int i = 1; i <= n; ++i) {
      int c = i % n;
      rows.push_back(word(n, {{(c + n - 1) % n, 'X'}, {c, 'Z'}, {(c + 1) % n, 'X'}}));
    }
  } else {
    Pauli r1 = all;
    r1.set_letter(0, 'X');
    r1.set_letter(1, 'X');
    rows.push_back(r1);
    rows.push_back(word(n, {{0, 'Z'}, {1, 'X'}, {2, 'X'}}));
    rows.push_back(word(n, {{0, 'X'}, {1, 'Z'}, {3, 'X'}}));
    for (int i = 3; i + 1 < n; ++i) rows.push_back(word(n, {{i, 'X'}, {i + 1, 'X'}}));
    rows.push_back(word(n, {{2, 'X'}, {n - 1, 'X'}}));
  }
  return verify_id(rows);
}

inline KSProof star(int n) { return generate_proof_from_kernel(verify_kernel({star_kernel(n)})); }

// ------------------------------------------------------------ 4-qubit IDs

// The nine critical 4-qubit IDs, in table order.
inline std::vector<IdentityProduct> four_qubit_ids() {
  return {id({"ZZZZ", "XXXX", "YIZX", "IYXZ"}),
          id({"ZZZI", "XXIZ", "YIXX", "IYYY"}),
          id({"ZZZZ", "ZZXX", "XXII", "XIZX", "IXXZ"}),
          id({"ZZZZ", "XXZZ", "YIXI", "IYIX", "IIXX"}),
          id({"ZZZZ", "XIXI", "YIZX", "IXXZ", "IYIX"}),
          id({"ZZZI", "XXIZ", "YIXX", "IYXX", "IIZZ"}),
          id({"ZZZI", "XXZZ", "YZXX", "IZIX", "IYXZ"}),
          id({"ZZZI", "XXIZ", "YZXZ", "IZZX", "IYXX"}),
          id({"ZZZI", "ZXXZ", "ZYXX", "XXZZ", "YXIX"})};
}

inline KSProof star4() { return generate_proof_from_kernel(verify_kernel({four_qubit_ids()[2]})); }

// Negative ID3^2 on qubits 0,1 with two trivial qubits, plus the ID4^4_2.
inline Kernel windmill_kernel() {
  auto q = four_qubit_ids()[0];
  auto core = id({"ZZII", "XXII", "YYII"});
  if (q.sign < 0) q = swap_letters(q, 0, 'Z', 'X');
  return verify_kernel({core, q});
}

inline KSProof windmill4() { return generate_proof_from_kernel(windmill_kernel()); }

// ID4^3_2 placed on a CKS with its Even SQP moved to a private qubit.
inline Kernel saw_kernel() {
  auto p = id({"ZIZ", "IZZ", "XXX", "YYX"});
  Cks c = parse_cks({"OO", "OO"});
  return assemble_kernel(c, {{p, {0, 1, 2}}, {p, {0, 1, 3}}}, 4);
}

inline Kernel pinwheel_kernel() {
  auto p = id({"ZIZ", "IZZ", "XXX", "YYX"});
  Cks c = wheel_cks(3);
  return assemble_kernel(c, {{p, {0, 1, 3}}, {p, {1, 2, 4}}, {p, {2, 0, 5}}}, 6);
}

inline KSProof saw4() { return generate_proof_from_kernel(saw_kernel()); }
inline KSProof pinwheel6() { return generate_cross_closure(pinwheel_kernel()); }

// ----------------------------------------------------------- whole IDs

// The unique ID5^5_0 and the two ID5^6_0s; each is a single-ID Kernel.
inline IdentityProduct whole_id5() { return id({"IIZZZ", "ZZIXX", "ZXZIZ", "XZXZX", "XXXXI"}); }
inline IdentityProduct arch_id() { return id({"IIZZZZ", "ZZIIXX", "ZXZXZX", "XZXZXZ", "XXXXII"}); }
inline IdentityProduct arrow_id() { return id({"IIZZZZ", "ZZIZXX", "ZXZXIX", "XZXIXZ", "XXXXZI"}); }

inline KSProof alt_star5() { return generate_proof_from_kernel(verify_kernel({whole_id5()})); }
inline KSProof arch6() { return generate_proof_from_kernel(verify_kernel({arch_id()})); }
inline KSProof arrow6() { return generate_proof_from_kernel(verify_kernel({arrow_id()})); }

// ------------------------------------------------------------------ Kites

enum class KiteVariant { OddNp1, EvenNp1, EvenHalfN, ExemplarM5N7, ExemplarM6N11, ExemplarM7N16, MerminM3 };

struct Kite {
  IdentityProduct partial;  // the given ID
  Kernel kernel;            // partial plus its transposed partner
  KSProof proof;
  int bold_column = 0;
};

inline IdentityProduct ids_from_strings(const std::vector<std::string>& rows) { return verify_id(rows); }

// Column triples (Z row, Y row, X row) for the N = 2M-4 family.
inline IdentityProduct kite_even_half(int n) {
  int m = n / 2 + 2;
  std::vector<std::array<int, 3>> cols{{0, 1, 2}};
  for (int k = 1; k <= n / 2 - 1; ++k) {
    cols.push_back({k - 1, k, k + 2});
    cols.push_back({k - 1, k + 1, k + 2});
  }
  cols.push_back({m - 3, m - 2, m - 1});
  std::vector<Pauli> rows(static_cast<size_t>(m), identity(n));
  for (int q = 0; q < n; ++q) {
    auto t = cols[static_cast<size_t>(q)];
    rows[static_cast<size_t>(t[0])].set_letter(q, 'Z');
    rows[static_cast<size_t>(t[1])].set_letter(q, 'Y');
    rows[static_cast<size_t>(t[2])].set_letter(q, 'X');
  }
  return verify_id(rows);
}

inline IdentityProduct kite_partial(KiteVariant v, int n = 0) {
  switch (v) {
    case KiteVariant::MerminM3:
      return id({"ZZ", "XX", "YY"});
    case KiteVariant::OddNp1: {
      if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd N+1 Kite family needs odd N >= 3");
      std::vector<Pauli> rows;
      for (int i = 0; i + 1 < n; ++i) rows.push_back(word(n, {{i, 'Z'}, {n - 1, 'Z'}}));
      Pauli xs = identity(n), ys = identity(n);
      for (int q = 0; q < n; ++q) {
        xs.set_letter(q, 'X');
        ys.set_letter(q, q + 1 < n ? 'Y' : 'X');
      }
      rows.push_back(xs);
      rows.push_back(ys);
      return verify_id(rows);
    }
    case KiteVariant::EvenNp1: {
      if (n < 4 || n % 2) throw std::invalid_argument("even N+1 Kite family needs even N >= 4");
      Pauli zs = identity(n), yz = identity(n);
      for (int q = 0; q < n; ++q) {
        zs.set_letter(q, 'Z');
        yz.set_letter(q, q < 2 ? 'Y' : 'Z');
      }
      std::vector<Pauli> rows{zs, yz};
      for (int i = 0; i + 2 < n; ++i) rows.push_back(word(n, {{i, 'X'}, {i + 2, 'X'}}));
      rows.push_back(word(n, {{n - 2, 'X'}, {n - 1, 'X'}}));
      return verify_id(rows);
    }
    case KiteVariant::EvenHalfN:
      if (n < 4 || n % 2) throw std::invalid_argument("N = 2M-4 Kite family needs even N >= 4");
      return kite_even_half(n);
    case KiteVariant::ExemplarM5N7:
      return ids_from_strings({"ZZZZZII", "XXZXXZZ", "YIXZZXX", "IYIXIZX", "IIXIXXZ"});
    case KiteVariant::ExemplarM6N11:
      return ids_from_strings({"IIZZZZZZZZZ", "ZIZZZXXIXXI", "IZXXIZZZIII", "XIXIXXIXZXX", "IXIXIIXIIZZ",
                               "YYIIXIIXXIX"});
    case KiteVariant::ExemplarM7N16:
      return ids_from_strings({"ZZZZZZZZIIIIIIII", "XXXXIIIIZZZZIIII", "YIIIXXXIXIIIZZII", "IYIIYIIIIXXXXIZI",
                               "IIIIIYIXYYIIIIXZ", "IIYIIIIYIIYIYXIX", "IIIYIIYIIIIYIYYY"});
  }
  throw std::invalid_argument("unknown Kite variant");
}

// The bold letters sit in column 0; the partner swaps them.
inline Kite kite(KiteVariant v, int n = 0) {
  Kite k{kite_partial(v, n), {}, {}, 0};
  char a = 0, b = 0;
  std::string col = k.partial.column(0);
  std::map<char, int> cnt;
  for (char c : col)
    if (c != 'I') cnt[c]++;
  for (char c : std::string("ZXY"))
    if (cnt[c] == 1) {
      if (!a) a = c;
      else if (!b) b = c;
    }
  if (!a || !b) throw std::logic_error("Kite column lacks two singly occurring letters");
  k.kernel = verify_kernel({k.partial, swap_letters(k.partial, 0, a, b)});
  k.proof = generate_proof_from_kernel(k.kernel);
  return k;
}

// Nine-basis parity proof inside a Kite's ray set. E,F are the unique rows
// of the Positive Kernel ID, G,H those of the Negative one; A..D are the
// portions their decompositions share pairwise.
struct NineBasisProof {
  std::vector<Ray> rays;
  std::vector<std::vector<int>> bases;
  RBSymbol symbol() const { return rb_symbol(rays, bases); }
};

inline NineBasisProof kite_nine_basis_proof(const Kite& kite) {
  const auto& k = kite.kernel;
  int pos = k.ids[0].sign > 0 ? 0 : 1, neg = 1 - pos;
  const auto& id1 = k.ids[static_cast<size_t>(pos)];
  const auto& id2 = k.ids[static_cast<size_t>(neg)];
  auto unique_rows = [](const IdentityProduct& a, const IdentityProduct& b) {
    std::vector<Pauli> u;
    for (const auto& r : a.rows)
      if (std::find(b.rows.begin(), b.rows.end(), r) == b.rows.end()) u.push_back(r);
    return u;
  };
  auto ef = unique_rows(id1, id2), gh = unique_rows(id2, id1);
  if (ef.size() != 2 || gh.size() != 2) throw std::logic_error("Kite tail IDs must differ in exactly two rows");
  // decomposition ID of each odd observable
  auto dec_of = [&](const Pauli& o) -> const IdentityProduct& {
    for (size_t i = k.ids.size(); i < kite.proof.ids.size(); ++i) {
      const auto& d = kite.proof.ids[i];
      if (std::find(d.rows.begin(), d.rows.end(), o) != d.rows.end()) return d;
    }
    throw std::logic_error("odd observable without decomposition");
  };
  auto meet = [&](const Pauli& a, const Pauli& b) -> std::optional<Pauli> {
    const auto& da = dec_of(a);
    const auto& db = dec_of(b);
    std::optional<Pauli> out;
    for (const auto& r : da.rows)
      if (!(r == a) && std::find(db.rows.begin(), db.rows.end(), r) != db.rows.end()) out = r;
    return out;
  };
  for (int flip = 0; flip < 4; ++flip) {
    Pauli E = ef[flip & 1], F = ef[1 - (flip & 1)];
    Pauli G = gh[flip >> 1], H = gh[1 - (flip >> 1)];
    auto B = meet(E, G), D = meet(E, H), A = meet(F, G), C = meet(F, H);
    if (!A || !B || !C || !D) continue;
    NineBasisProof out;
    auto pick = [&](const IdentityProduct& id, std::vector<std::pair<Pauli, int>> want) {
      std::vector<int> idx;
      for (auto& r : eigenbasis(id)) {
        bool ok = true;
        for (auto& [w, v] : want) ok = ok && r.eigenvalue(w) == v;
        if (!ok) continue;
        idx.push_back(static_cast<int>(out.rays.size()));
        out.rays.push_back(r);
      }
      return idx;
    };
    const auto& dAG = dec_of(G);
    const auto& dAF = dec_of(F);
    const auto& dBE = dec_of(E);
    const auto& dCH = dec_of(H);
    std::vector<std::vector<int>> g;
    g.push_back(pick(dAG, {{*A, 1}, {*B, 1}}));     // 1
    g.push_back(pick(dAG, {{*A, 1}, {*B, -1}}));    // 2
    g.push_back(pick(dAG, {{*A, -1}, {*B, 1}}));    // 3
    g.push_back(pick(dAF, {{*A, 1}, {*C, 1}}));     // 4
    g.push_back(pick(dAF, {{*A, -1}, {*C, 1}}));    // 5
    g.push_back(pick(dAF, {{*A, -1}, {*C, -1}}));   // 6
    g.push_back(pick(dBE, {{*B, 1}, {*D, 1}}));     // 7
    g.push_back(pick(dBE, {{*B, -1}, {*D, 1}}));    // 8
    g.push_back(pick(dBE, {{*B, -1}, {*D, -1}}));   // 9
    g.push_back(pick(dCH, {{*C, 1}, {*D, -1}}));    // 10
    g.push_back(pick(dCH, {{*C, -1}, {*D, 1}}));    // 11
    g.push_back(pick(dCH, {{*C, -1}, {*D, -1}}));   // 12
    g.push_back(pick(id1, {{E, 1}, {F, -1}}));      // 13
    g.push_back(pick(id1, {{E, -1}, {F, 1}}));      // 14
    g.push_back(pick(id1, {{E, -1}, {F, -1}}));     // 15
    g.push_back(pick(id2, {{G, 1}, {H, 1}}));       // 16
    g.push_back(pick(id2, {{G, 1}, {H, -1}}));      // 17
    g.push_back(pick(id2, {{G, -1}, {H, 1}}));      // 18
    static const int kBases[9][4] = {{1, 2, 5, 6},   {1, 3, 8, 9},    {4, 5, 11, 12},  {7, 8, 10, 12}, {2, 3, 16, 17},
                                     {4, 6, 13, 15}, {7, 9, 14, 15}, {10, 11, 16, 18}, {13, 14, 17, 18}};
    for (const auto& b : kBases) {
      std::vector<int> basis;
      for (int gi : b)
        for (int r : g[static_cast<size_t>(gi - 1)]) basis.push_back(r);
      std::sort(basis.begin(), basis.end());
      out.bases.push_back(basis);
    }
    // orthogonal projectors summing to the identity, each ray used twice
    bool ok = true;
    std::vector<int> mult(out.rays.size(), 0);
    for (const auto& b : out.bases) {
      long long dim = 0;
      for (size_t i = 0; i < b.size(); ++i) {
        dim += out.rays[static_cast<size_t>(b[i])].rank;
        ++mult[static_cast<size_t>(b[i])];
        for (size_t j = i + 1; j < b.size(); ++j)
          ok = ok && orthogonal(out.rays[static_cast<size_t>(b[i])], out.rays[static_cast<size_t>(b[j])]);
      }
      ok = ok && dim == (1LL << k.n);
    }
    for (int m : mult) ok = ok && m == 2;
    if (ok) return out;
  }
  throw std::logic_error("Kite does not admit the nine-basis pattern");
}

// ----------------------------------------------------------- graph states

// Generators X_i prod_{j in N(i)} Z_j followed by their total product.
inline IdentityProduct graph_state_id(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n < 2 || n > 6) throw std::invalid_argument("graph states supported for 2..6 vertices");
  std::vector<int> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<size_t>(v)])
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  if (std::count(seen.begin(), seen.end(), 0)) throw std::invalid_argument("graph is disconnected");
  std::vector<Pauli> rows;
  for (int i = 0; i < n; ++i) {
    Pauli p = identity(n);
    p.set_letter(i, 'X');
    for (int j : adj[static_cast<size_t>(i)]) p.set_letter(j, 'Z');
    rows.push_back(p);
  }
  rows.push_back(product(rows).word);
  return verify_id(rows);
}

// Canonical keys of every critical ID on all N qubits whose rows lie in
// the stabilizer group generated by gens.
inline std::set<std::string> stabilizer_critical_ids(const std::vector<Pauli>& gens, int max_rows) {
  int n = gens.front().n;
  std::vector<Pauli> elems;
  for (uint32_t s = 1; s < (1u << gens.size()); ++s) {
    Pauli w = identity(n);
    for (size_t i = 0; i < gens.size(); ++i)
      if (s >> i & 1) w = multiply(PhasedPauli{w, 0}, gens[i]).word;
    if (!w.is_identity()) elems.push_back(w);
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  uint64_t full = (n == 64) ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
  std::set<std::string> keys;
  std::vector<Pauli> pick;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (pick.size() >= 3) {
      Pauli acc = identity(n);
      uint64_t cover = 0;
      for (const auto& p : pick) {
        acc = multiply(PhasedPauli{acc, 0}, p).word;
        cover |= p.support();
      }
      if (acc.is_identity() && cover == full) {
        auto idp = verify_id(pick);
        if (!idp.is_null() && is_critical_id(idp)) keys.insert(canonicalize_id(idp));
      }
    }
    if (static_cast<int>(pick.size()) == max_rows) return;
    for (size_t i = from; i < elems.size(); ++i) {
      pick.push_back(elems[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return keys;
}

// ---------------------------------------------------------- named lookup

struct Named {
  std::string name;
  std::optional<Kernel> kernel;
  KSProof proof;
};

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"mermin_square", "whorl_2",   "mermin_star", "kite_3",    "wheel_3",
                                          "wheel_3_expanded", "special_square", "star_4", "whorl_4",
                                          "whorl_4_expanded", "windmill_4", "saw_4", "star_5", "wheel_5",
                                          "pinwheel_6", "star_6", "whorl_6", "alt_star_5", "arch_6", "arrow_6"};
  return n;
}

inline Named named(const std::string& name) {
  if (name == "mermin_square") return {name, two_qubit_kernel(), mermin_square()};
  if (name == "whorl_2") return {name, two_qubit_kernel(), whorl2()};
  if (name == "mermin_star") return {name, verify_kernel({star_kernel(3)}), mermin_star()};
  if (name == "kite_3") return {name, kite3_kernel(), kite3()};
  if (name == "wheel_3") return {name, wheel_kernel(3), wheel(3)};
  if (name == "wheel_3_expanded") return {name, wheel_kernel(3), wheel(3, 7)};
  if (name == "special_square") return {name, std::nullopt, special_square()};
  if (name == "star_4") return {name, verify_kernel({star_kernel(4)}), star(4)};
  if (name == "whorl_4") return {name, whorl_kernel(4), whorl(4)};
  if (name == "whorl_4_expanded") return {name, whorl_kernel(4), whorl(4, true)};
  if (name == "windmill_4") return {name, windmill_kernel(), windmill4()};
  if (name == "saw_4") return {name, saw_kernel(), saw4()};
  if (name == "star_5") return {name, verify_kernel({star_kernel(5)}), star(5)};
  if (name == "wheel_5") return {name, wheel_kernel(5), wheel(5)};
  if (name == "pinwheel_6") return {name, pinwheel_kernel(), pinwheel6()};
  if (name == "star_6") return {name, verify_kernel({star_kernel(6)}), star(6)};
  if (name == "whorl_6") return {name, whorl_kernel(6), whorl(6)};
  if (name == "alt_star_5") return {name, verify_kernel({whole_id5()}), alt_star5()};
  if (name == "arch_6") return {name, verify_kernel({arch_id()}), arch6()};
  if (name == "arrow_6") return {name, verify_kernel({arrow_id()}), arrow6()};
  throw std::invalid_argument("unknown structure '" + name + "'");
}

}  // namespace pks::catalog
