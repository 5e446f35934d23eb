#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "pauliks/catalog.hpp"
#include "pauliks/search.hpp"

using namespace pks;
namespace cat = pks::catalog;

namespace {

using Hist = std::map<std::pair<int, int>, size_t>;

std::multiset<std::vector<int>> as_multiset(const std::vector<ParityProof>& ps) {
  std::multiset<std::vector<int>> m;
  for (const auto& p : ps) m.insert(p.bases);
  return m;
}

// Exhaustive 0/1 assignment: exactly one 1 per basis.
bool brute_colorable(int nrays, const std::vector<std::vector<int>>& bases) {
  for (uint32_t a = 0; a < (1u << nrays); ++a) {
    bool ok = true;
    for (const auto& b : bases) {
      int ones = 0;
      for (int r : b) ones += a >> r & 1;
      ok = ok && ones == 1;
    }
    if (ok) return true;
  }
  return false;
}

std::vector<int> complement(const std::vector<int>& bases, size_t total) {
  std::vector<int> out;
  for (size_t b = 0; b < total; ++b)
    if (!std::binary_search(bases.begin(), bases.end(), static_cast<int>(b))) out.push_back(static_cast<int>(b));
  return out;
}

void check_proofs(const RBSet& set, const std::vector<ParityProof>& ps, size_t critical_sample) {
  for (size_t i = 0; i < ps.size(); ++i) {
    const auto& p = ps[i];
    ASSERT_TRUE(is_parity_proof(set, p.bases));
    std::vector<std::vector<int>> sub;
    for (int b : p.bases) sub.push_back(set.bases[static_cast<size_t>(b)]);
    ASSERT_EQ(basis_colorable(static_cast<int>(set.rays.size()), sub).status, ColorStatus::Uncolorable);
    if (i < critical_sample) {
      ASSERT_TRUE(is_basis_critical(set, p.bases));
    }
  }
}

}  // namespace

TEST(Color, Basics) {
  auto peres = generate_rb_set(cat::mermin_square().ids);
  EXPECT_EQ(basis_colorable(peres).status, ColorStatus::Uncolorable);
  ColorOptions all;
  all.max_witnesses = 0;
  auto one = basis_colorable(4, {{0, 1, 2, 3}}, all);
  EXPECT_EQ(one.status, ColorStatus::Colorable);
  EXPECT_EQ(one.witnesses.size(), 4u);
  for (const auto& w : one.witnesses) EXPECT_EQ(w.size(), 1u);
  auto r = ray_colorable(4, {{0, 1, 2, 3}}, {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}});
  EXPECT_EQ(r.status, ColorStatus::Colorable);
}

TEST(Color, SmallestProofAndCriticality) {
  auto peres = generate_rb_set(cat::mermin_square().ids);
  ParityOptions o;
  o.max_bases = 9;
  auto res = find_parity_proofs(peres, o);
  ASSERT_EQ(res.proofs.size(), 16u);
  const auto& p = res.proofs.front();
  EXPECT_EQ(p.compact(), "18-9");
  std::vector<std::vector<int>> sub;
  for (int b : p.bases) sub.push_back(peres.bases[static_cast<size_t>(b)]);
  EXPECT_EQ(basis_colorable(24, sub).status, ColorStatus::Uncolorable);
  EXPECT_TRUE(is_basis_critical(peres, p.bases));
  std::vector<int> everything(24);
  std::iota(everything.begin(), everything.end(), 0);
  EXPECT_FALSE(is_basis_critical(peres, everything));
  EXPECT_EQ(ray_colorable(24, sub, orthogonality_lists(peres.rays)).status, ColorStatus::Uncolorable);
}

TEST(ColorProperty, AgreesWithBruteForce) {
  auto peres = generate_rb_set(cat::mermin_square().ids);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> pick(24);
    std::iota(pick.begin(), pick.end(), 0);
    std::shuffle(pick.begin(), pick.end(), rng);
    size_t k = 2 + rng() % 7;
    // relabel the rays that occur to 0..m-1 so brute force stays small
    std::map<int, int> relabel;
    std::vector<std::vector<int>> bases;
    for (size_t i = 0; i < k; ++i) {
      std::vector<int> b;
      for (int r : peres.bases[static_cast<size_t>(pick[i])]) {
        auto it = relabel.emplace(r, static_cast<int>(relabel.size())).first;
        b.push_back(it->second);
      }
      bases.push_back(b);
    }
    if (relabel.size() > 22) continue;
    int n = static_cast<int>(relabel.size());
    bool want = brute_colorable(n, bases);
    EXPECT_EQ(basis_colorable(n, bases).status, want ? ColorStatus::Colorable : ColorStatus::Uncolorable);
  }
}

TEST(Color, RayColorabilityImpliedByBasis) {
  auto star = generate_rb_set(cat::mermin_star().ids);
  EXPECT_EQ(basis_colorable(star).status, ColorStatus::Uncolorable);
  EXPECT_EQ(ray_colorable(static_cast<int>(star.rays.size()), star.bases, orthogonality_lists(star.rays)).status,
            ColorStatus::Uncolorable);
}

TEST(Color, Cell600WithAllOrthogonalities) {
  const auto& c = cell600();
  std::vector<std::vector<int>> orth(c.rays.size());
  for (size_t i = 0; i < c.rays.size(); ++i)
    for (size_t j = 0; j < c.rays.size(); ++j)
      if (i != j && dot(c.rays[i], c.rays[j]).is_zero()) orth[i].push_back(static_cast<int>(j));
  auto set = cat::cell600_set();
  EXPECT_EQ(ray_colorable(60, set.bases, orth).status, ColorStatus::Uncolorable);
}

TEST(Color, BudgetGivesUnknown) {
  auto w = generate_rb_set(cat::whorl2().ids);
  ColorOptions o;
  o.budget.max_nodes = 3;
  EXPECT_EQ(basis_colorable(w, o).status, ColorStatus::Unknown);
}

TEST(Parity, PeresSet) {
  auto set = generate_rb_set(cat::mermin_square().ids);
  auto res = find_parity_proofs(set);
  EXPECT_FALSE(res.truncated);
  ASSERT_EQ(res.proofs.size(), 512u);
  auto h = classify_proofs(set, res.proofs);
  EXPECT_EQ(h.compact, (Hist{{{18, 9}, 16}, {{20, 11}, 240}, {{22, 13}, 240}, {{24, 15}, 16}}));
  check_proofs(set, res.proofs, 32);
  auto fast = fast_path_parity(set);
  EXPECT_EQ(as_multiset(fast), as_multiset(res.proofs));
  EXPECT_EQ(as_multiset(parity_proofs_by_kernel(set)), as_multiset(res.proofs));
}

TEST(Parity, PeresComplementaryPairs) {
  auto set = generate_rb_set(cat::mermin_square().ids);
  auto res = find_parity_proofs(set);
  std::set<std::vector<int>> all;
  for (const auto& p : res.proofs) all.insert(p.bases);
  size_t pairs = 0;
  for (const auto& p : res.proofs) {
    auto c = complement(p.bases, set.bases.size());
    ASSERT_TRUE(all.count(c)) << p.compact();
    if (p.bases.size() == 9) {
      EXPECT_EQ(rays_used(set, c), 24);
      EXPECT_EQ(c.size(), 15u);
    }
    pairs += p.bases < c;
  }
  EXPECT_EQ(pairs, 256u);
}

TEST(Parity, WhorlTwoSet) {
  auto set = generate_rb_set(cat::whorl2().ids);
  EXPECT_EQ(rb_symbol(set).expanded(), "40_4 - 40_4");
  auto fast = fast_path_parity(set);
  ASSERT_EQ(fast.size(), 32768u);
  auto h = classify_proofs(set, fast, false);
  EXPECT_EQ(h.compact, (Hist{{{30, 15}, 64},
                             {{32, 17}, 2880},
                             {{34, 19}, 13440},
                             {{36, 21}, 13440},
                             {{38, 23}, 2880},
                             {{40, 25}, 64}}));
  std::set<std::vector<int>> all;
  for (const auto& p : fast) all.insert(p.bases);
  for (const auto& p : fast) {
    auto c = complement(p.bases, set.bases.size());
    // the other 40 - B bases form the partner proof
    ASSERT_TRUE(all.count(c));
    ASSERT_EQ(rays_used(set, p.bases) + 10, static_cast<int>(p.bases.size()) + 25);
  }
  check_proofs(set, std::vector<ParityProof>(fast.begin(), fast.begin() + 200), 32);
}

TEST(Parity, WhorlTwoGeneralSearchMatchesFastPath) {
  auto set = generate_rb_set(cat::whorl2().ids);
  auto res = find_parity_proofs(set);
  EXPECT_FALSE(res.truncated);
  EXPECT_EQ(as_multiset(res.proofs), as_multiset(fast_path_parity(set)));
}

TEST(Parity, MerminStar) {
  auto set = generate_rb_set(cat::mermin_star().ids);
  auto res = find_parity_proofs(set);
  ASSERT_EQ(res.proofs.size(), 1024u);
  auto h = classify_proofs(set, res.proofs);
  EXPECT_EQ(h.compact, (Hist{{{36, 11}, 320}, {{38, 13}, 640}, {{40, 15}, 64}}));
  EXPECT_EQ(as_multiset(fast_path_parity(set)), as_multiset(res.proofs));
  check_proofs(set, res.proofs, 32);
}

TEST(Parity, KiteThree) {
  auto set = generate_rb_set(cat::kite3().ids);
  auto res = find_parity_proofs(set);
  EXPECT_FALSE(res.truncated);
  ASSERT_EQ(res.proofs.size(), 33152u);
  auto h = classify_proofs(set, res.proofs, false);
  EXPECT_EQ(h.compact.begin()->first, (std::pair<int, int>{24, 9}));
  EXPECT_EQ(h.compact.begin()->second, 16u);
  auto largest = std::max_element(h.compact.begin(), h.compact.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.first.second, a.first.first) < std::make_pair(b.first.second, b.first.first);
  });
  EXPECT_EQ(largest->first, (std::pair<int, int>{32, 17}));
  EXPECT_EQ(rb_symbol(set.rays, set.bases, &res.proofs.front().bases).expanded(), "12^1_2 12^2_2 - 1_8 4_6 4_4");
  // the tails share two observables, so the complementary-pair shortcut does not apply
  EXPECT_THROW(fast_path_parity(set), std::invalid_argument);
  check_proofs(set, std::vector<ParityProof>(res.proofs.begin(), res.proofs.begin() + 64), 32);
}

TEST(Parity, FourQubitFastPaths) {
  struct Case {
    KSProof proof;
    std::string set_compact;
    size_t count;
    std::pair<int, int> smallest, largest;
  };
  for (auto& c : std::vector<Case>{{cat::star4(), "52-30", 4096, {47, 13}, {51, 17}},
                                   {cat::windmill4(), "48-33", 8192, {41, 13}, {47, 19}}}) {
    auto set = generate_rb_set(c.proof.ids);
    EXPECT_EQ(rb_symbol(set).compact(), c.set_compact);
    auto ps = fast_path_parity(set);
    ASSERT_EQ(ps.size(), c.count);
    auto h = classify_proofs(set, ps, false);
    EXPECT_EQ(h.compact.begin()->first, c.smallest);
    EXPECT_EQ(h.compact.rbegin()->first, c.largest);
    check_proofs(set, std::vector<ParityProof>(ps.begin(), ps.begin() + 16), 4);
  }
}

TEST(Parity, WhorlFourConstructionCount) {
  auto set = generate_rb_set(cat::whorl(4).ids);
  size_t n = 0;
  fast_path_parity(set, [&](const ParityProof&) { ++n; });
  EXPECT_EQ(n, size_t{1} << 20);
}

TEST(Parity, ExpandedWheelThreeFullEnumeration) {
  auto set = generate_rb_set(cat::wheel(3, 7).ids);
  auto sym = rb_symbol(set);
  EXPECT_EQ(sym.compact(), "48-48");
  EXPECT_EQ(sym.expanded(), "48^2_4 - 48_4");
  size_t fast = 0;
  fast_path_parity(set, [&](const ParityProof&) { ++fast; });
  EXPECT_EQ(fast, 262144u);
  size_t general = 0;
  auto res = find_parity_proofs(set, {}, [&](const ParityProof&) { ++general; });
  EXPECT_FALSE(res.truncated);
  EXPECT_EQ(general, 262144u);
}

TEST(Parity, ClassifyEmpty) {
  auto set = generate_rb_set(cat::mermin_square().ids);
  auto h = classify_proofs(set, {});
  EXPECT_EQ(h.total, 0u);
  EXPECT_TRUE(h.compact.empty());
}

TEST(Parity, Deterministic) {
  auto set = generate_rb_set(cat::mermin_star().ids);
  auto a = find_parity_proofs(set), b = find_parity_proofs(set);
  ASSERT_EQ(a.proofs.size(), b.proofs.size());
  for (size_t i = 0; i < a.proofs.size(); ++i) EXPECT_EQ(a.proofs[i].bases, b.proofs[i].bases);
}

TEST(Parity, BudgetTruncates) {
  auto set = generate_rb_set(cat::kite3().ids);
  ParityOptions o;
  o.budget.max_nodes = 1000;
  auto res = find_parity_proofs(set, o);
  EXPECT_TRUE(res.truncated);
}

TEST(Parity, RayCriticalSmallestProof) {
  auto set = generate_rb_set(cat::mermin_square().ids);
  ParityOptions o;
  o.max_bases = 9;
  o.max_count = 1;
  auto p = find_parity_proofs(set, o).proofs.at(0);
  // restrict to the 18 rays it uses
  std::map<int, int> idx;
  std::vector<Ray> rays;
  std::vector<std::vector<int>> bases;
  for (int b : p.bases) {
    std::vector<int> nb;
    for (int r : set.bases[static_cast<size_t>(b)]) {
      auto [it, fresh] = idx.emplace(r, static_cast<int>(rays.size()));
      if (fresh) rays.push_back(set.rays[static_cast<size_t>(r)]);
      nb.push_back(it->second);
    }
    bases.push_back(nb);
  }
  EXPECT_EQ(rays.size(), 18u);
  EXPECT_TRUE(is_ray_critical(rays, bases));
}

TEST(Pauli60, SymbolAndSubstructures) {
  auto set = cat::pauli60();
  EXPECT_EQ(rb_symbol(set).expanded(), "60_7 - 105_4");
  auto triples = cat::two_qubit_triples();
  ASSERT_EQ(triples.size(), 15u);
  auto ms = cat::mermin_square(), wh = cat::whorl2();
  int squares = 0, whorls = 0;
  for (uint32_t s = 0; s < (1u << 15); ++s) {
    int k = __builtin_popcount(s);
    if (k != 6 && k != 10) continue;
    std::vector<IdentityProduct> ids;
    for (int i = 0; i < 15; ++i)
      if (s >> i & 1) ids.push_back(triples[static_cast<size_t>(i)]);
    if (!is_ks_proof(ids)) continue;
    auto p = verify_ks_proof(ids);
    squares += k == 6 && proofs_isomorphic(p, ms);
    whorls += k == 10 && proofs_isomorphic(p, wh);
  }
  EXPECT_EQ(squares, 10);
  EXPECT_EQ(whorls, 6);
  ParityOptions o;
  o.max_bases = 9;
  o.max_count = 1;
  auto r = find_parity_proofs(set, o);
  ASSERT_EQ(r.proofs.size(), 1u);
  EXPECT_EQ(r.proofs[0].compact(), "18-9");
}

// Budgeted scans standing in for the full censuses of the two 60-ray sets.
TEST(ParityScan, Pauli60) {
  auto set = cat::pauli60();
  ParityOptions o;
  o.max_bases = 15;
  o.max_count = 100;
  o.budget.max_seconds = 600;
  auto r = find_parity_proofs(set, o);
  ASSERT_GE(r.proofs.size(), 100u);
  check_proofs(set, r.proofs, r.proofs.size());
}

TEST(ParityScan, Cell600) {
  auto set = cat::cell600_set();
  EXPECT_EQ(rb_symbol(set).expanded(), "60_5 - 75_4");
  ParityOptions o;
  o.max_bases = 21;
  o.max_count = 100;
  o.budget.max_seconds = 600;
  auto r = find_parity_proofs(set, o);
  ASSERT_GE(r.proofs.size(), 100u);
  check_proofs(set, r.proofs, r.proofs.size());
  for (const auto& p : r.proofs) {
    EXPECT_GE(p.rays, 26);
    EXPECT_LE(p.rays, 60);
    EXPECT_GE(p.bases.size(), 13u);
    EXPECT_LE(p.bases.size(), 41u);
  }
}
