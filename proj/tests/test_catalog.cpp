#include <gtest/gtest.h>

#include <set>

#include "pauliks/catalog.hpp"
#include "pauliks/search.hpp"

using namespace pks;
namespace cat = pks::catalog;

namespace {

std::multiset<std::string> split_terms(const std::string& side) {
  std::multiset<std::string> out;
  std::string cur;
  for (char c : side + " ") {
    if (c == ' ') {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

// "a b - c d" as two term multisets
std::pair<std::multiset<std::string>, std::multiset<std::string>> sides(const std::string& sym) {
  auto dash = sym.find(" - ");
  return {split_terms(sym.substr(0, dash)), split_terms(sym.substr(dash + 3))};
}

std::vector<std::vector<int>> adjacency(int n, std::vector<std::pair<int, int>> edges) {
  std::vector<std::vector<int>> a(static_cast<size_t>(n));
  for (auto [x, y] : edges) {
    a[static_cast<size_t>(x)].push_back(y);
    a[static_cast<size_t>(y)].push_back(x);
  }
  return a;
}

}  // namespace

TEST(Catalog, ProofSymbols) {
  std::map<std::string, std::string> want{
      {"mermin_square", "9_2 - 6_3"},          {"whorl_2", "15_2 - 10_3"},
      {"mermin_star", "10_2 - 5_4"},           {"kite_3", "10_2 - 2_4 4_3"},
      {"wheel_3", "9_2 - 6_3"},                {"wheel_3_expanded", "18_2 - 12_3"},
      {"special_square", "9_2 - 6_3"},         {"star_4", "12_2 - 1_5 4_4 1_3"},
      {"whorl_4", "20_2 - 1_4 12_3"},          {"whorl_4_expanded", "24_2 - 16_3"},
      {"windmill_4", "13_2 - 5_4 2_3"},        {"saw_4", "17_2 - 4_4 6_3"},
      {"star_5", "16_2 - 2_6 5_4"},            {"wheel_5", "15_2 - 3_5 5_3"},
      {"pinwheel_6", "16_2 - 5_4 4_3"},        {"star_6", "16_2 - 1_7 4_4 3_3"},
      {"whorl_6", "30_2 - 1_6 18_3"},          {"alt_star_5", "12_2 - 1_5 4_4 1_3"},
      {"arch_6", "11_2 - 1_5 2_4 3_3"},        {"arrow_6", "13_2 - 2_5 4_4"}};
  ASSERT_EQ(want.size(), cat::names().size());
  for (const auto& name : cat::names()) {
    auto n = cat::named(name);
    EXPECT_EQ(n.proof.symbol(), want.at(name)) << name;
    EXPECT_NO_THROW(verify_ks_proof(n.proof.ids));
  }
  EXPECT_THROW(cat::named("no_such_thing"), std::invalid_argument);
}

TEST(Catalog, RBSetSymbols) {
  std::map<std::string, std::string> want{
      {"mermin_square", "24_4 - 24_4"},
      {"whorl_2", "40_4 - 40_4"},
      {"mermin_star", "40_5 - 25_8"},
      {"kite_3", "16^1_{10} 16^2_4 - 16_8 8_6 12_4"},
      {"wheel_3", "24^2_4 - 24_4"},
      {"wheel_3_expanded", "48^2_4 - 48_4"},
      {"star_4", "16^1_6 32^2_5 4^4_4 - 1_{16} 8_{12} 2_{10} 14_8 4_6 1_4"},
      {"whorl_4", "8^2_5 48^4_4 - 1_8 8_6 44_4"},
      {"whorl_4_expanded", "64^4_4 - 64_4"},
      {"windmill_4", "8^4_4 40^2_5 - 21_8 8_6 4_4"},
      {"saw_4", "32^2_5 24^4_4 - 10_8 20_6 14_4"},
      {"pinwheel_6", "40^8_5 16^{16}_4 - 19_8 12_6 10_4"},
      {"alt_star_5", "16^2_6 32^4_5 4^8_4 - 1_{16} 8_{12} 2_{10} 14_8 4_6 1_4"}};
  for (auto& [name, sym] : want) {
    auto got = rb_symbol(generate_rb_set(cat::named(name).proof.ids)).expanded();
    EXPECT_EQ(sides(got), sides(sym)) << name << ": " << got;
  }
  EXPECT_EQ(rb_symbol(generate_rb_set(cat::star(5).ids)).compact(), "104-39");
  EXPECT_EQ(rb_symbol(generate_rb_set(cat::arch6().ids)).compact(), "44-28");
  EXPECT_EQ(rb_symbol(generate_rb_set(cat::arrow6().ids)).compact(), "64-32");
  EXPECT_EQ(rb_symbol(generate_rb_set(cat::alt_star5().ids)).compact(), "52-30");
}

TEST(Catalog, WholeIdStructures) {
  IdFilter f;
  f.whole_only = true;
  auto five = enumerate_ids(5, 5, f);
  ASSERT_EQ(five.keys.size(), 1u);
  EXPECT_EQ(five.keys[0], canonicalize_id(cat::whole_id5()));
  auto six = enumerate_ids(5, 6, f);
  ASSERT_EQ(six.keys.size(), 2u);
  std::set<std::string> keys(six.keys.begin(), six.keys.end());
  EXPECT_TRUE(keys.count(canonicalize_id(cat::arch_id())));
  EXPECT_TRUE(keys.count(canonicalize_id(cat::arrow_id())));

  auto arch = generate_rb_set(cat::arch6().ids);
  auto arrow = generate_rb_set(cat::arrow6().ids);
  EXPECT_EQ(sides(rb_symbol(arch).expanded()).first, split_terms("16^4_6 16^8_5 12^{16}_4"));
  EXPECT_EQ(sides(rb_symbol(arrow).expanded()).first, split_terms("32^4_6 32^8_5"));
  EXPECT_EQ(fast_path_parity(arch).size(), size_t{1} << 11);
  EXPECT_EQ(fast_path_parity(arrow).size(), size_t{1} << 13);
  EXPECT_TRUE(proofs_isomorphic(cat::alt_star5(), cat::star4()));
  EXPECT_EQ(fast_path_parity(generate_rb_set(cat::alt_star5().ids)).size(), 4096u);
}

TEST(CatalogProperty, KernelsAreCritical) {
  for (const auto& name : cat::names()) {
    auto n = cat::named(name);
    if (!n.kernel) continue;
    EXPECT_NO_THROW(verify_kernel(n.kernel->ids)) << name;
    EXPECT_TRUE(is_critical_kernel(*n.kernel)) << name;
  }
}

TEST(Catalog, WheelsAndWhorls) {
  auto w3 = cat::wheel_kernel(3);
  int neg = 0;
  for (const auto& id : w3.ids) neg += id.sign < 0;
  EXPECT_EQ(w3.ids.size(), 3u);
  EXPECT_EQ(neg, 3);
  for (unsigned mask = 0; mask < 8; ++mask) {
    auto p = cat::wheel(3, mask);
    int rings = __builtin_popcount(mask);
    EXPECT_EQ(p.ids.size(), 6u + 2u * static_cast<unsigned>(rings)) << mask;
    EXPECT_NO_THROW(verify_ks_proof(p.ids));
  }
  auto full = cat::wheel(3, 7);
  EXPECT_EQ(full.symbol(), "18_2 - 12_3");
  EXPECT_EQ(cat::whorl(4, true).symbol(), "24_2 - 16_3");
  EXPECT_THROW(cat::wheel(4), std::invalid_argument);
  EXPECT_THROW(cat::whorl(5), std::invalid_argument);
}

TEST(Catalog, StarKernels) {
  for (int n = 3; n <= 8; ++n) {
    auto k = cat::star_kernel(n);
    EXPECT_EQ(k.N(), n);
    EXPECT_LT(k.sign, 0) << n;
    EXPECT_EQ(k.oddness, 0) << n;
    EXPECT_TRUE(is_critical_id(k)) << n;
  }
  auto s3 = cat::star_kernel(3).rows, ref = cat::id({"ZZZ", "XXZ", "XZX", "ZXX"}).rows;
  EXPECT_EQ(std::set<Pauli>(s3.begin(), s3.end()), std::set<Pauli>(ref.begin(), ref.end()));
  EXPECT_EQ(cat::star_kernel(5).M(), 6);
  EXPECT_EQ(canonicalize_id(cat::star_kernel(4)), canonicalize_id(cat::four_qubit_ids()[2]));
}

TEST(Catalog, FourQubitIds) {
  auto ids = cat::four_qubit_ids();
  ASSERT_EQ(ids.size(), 9u);
  std::set<std::string> keys;
  for (const auto& id : ids) {
    EXPECT_EQ(id.N(), 4);
    EXPECT_TRUE(is_critical_id(id)) << id.symbol();
    keys.insert(canonicalize_id(id));
  }
  EXPECT_EQ(keys.size(), 9u);
}

TEST(Catalog, KiteFamilies) {
  struct Case {
    cat::KiteVariant v;
    int n;
    int m;
  };
  std::vector<Case> cases{{cat::KiteVariant::OddNp1, 3, 4},       {cat::KiteVariant::OddNp1, 5, 6},
                          {cat::KiteVariant::OddNp1, 7, 8},       {cat::KiteVariant::EvenNp1, 4, 5},
                          {cat::KiteVariant::EvenNp1, 6, 7},      {cat::KiteVariant::EvenHalfN, 4, 4},
                          {cat::KiteVariant::EvenHalfN, 6, 5},    {cat::KiteVariant::EvenHalfN, 8, 6},
                          {cat::KiteVariant::ExemplarM5N7, 7, 5}, {cat::KiteVariant::ExemplarM6N11, 11, 6},
                          {cat::KiteVariant::ExemplarM7N16, 16, 7}};
  for (const auto& c : cases) {
    auto k = cat::kite(c.v, c.n);
    EXPECT_EQ(k.partial.N(), c.n);
    EXPECT_EQ(k.partial.M(), c.m);
    EXPECT_TRUE(is_critical_kernel(k.kernel)) << c.n;
    EXPECT_EQ(k.proof.symbol(), std::to_string(6 + c.m) + "_2 - 2_" + std::to_string(c.m) + " 4_3") << c.n;
    // partner differs by one transposition in one column, with opposite sign
    const auto& a = k.kernel.ids[0];
    const auto& b = k.kernel.ids[1];
    EXPECT_NE(a.sign, b.sign);
    int diff_cols = 0, diff_cells = 0;
    for (int q = 0; q < c.n; ++q) {
      auto ca = a.column(q), cb = b.column(q);
      if (ca != cb) ++diff_cols;
      for (size_t i = 0; i < ca.size(); ++i) diff_cells += ca[i] != cb[i];
    }
    EXPECT_EQ(diff_cols, 1);
    EXPECT_EQ(diff_cells, 2);
  }
  EXPECT_THROW(cat::kite(cat::KiteVariant::OddNp1, 4), std::invalid_argument);
  EXPECT_THROW(cat::kite(cat::KiteVariant::EvenNp1, 5), std::invalid_argument);
}

TEST(Catalog, KitePartialCriticality) {
  EXPECT_TRUE(is_critical_id(cat::kite_partial(cat::KiteVariant::OddNp1, 3)));
  EXPECT_TRUE(is_critical_id(cat::kite_partial(cat::KiteVariant::EvenNp1, 4)));
  // larger odd members carry an ID4^3 sub-ID on rows 0, 1, N-1, N and columns 0, 1, N-1
  for (int n : {5, 7}) {
    auto p = cat::kite_partial(cat::KiteVariant::OddNp1, n);
    EXPECT_FALSE(is_critical_id(p)) << n;
    std::vector<Pauli> rows;
    for (int r : {0, 1, n - 1, n}) {
      Pauli w = identity(3);
      w.set_letter(0, p.rows[static_cast<size_t>(r)].letter(0));
      w.set_letter(1, p.rows[static_cast<size_t>(r)].letter(1));
      w.set_letter(2, p.rows[static_cast<size_t>(r)].letter(n - 1));
      rows.push_back(w);
    }
    auto sub = try_id(rows);
    ASSERT_TRUE(sub.has_value()) << n;
    EXPECT_EQ(sub->M(), 4);
  }
}

TEST(Catalog, NineBasisProofs) {
  struct Case {
    cat::KiteVariant v;
    int n;
    int m;
  };
  for (const auto& c : std::vector<Case>{{cat::KiteVariant::MerminM3, 0, 3},
                                         {cat::KiteVariant::OddNp1, 3, 4},
                                         {cat::KiteVariant::ExemplarM5N7, 0, 5},
                                         {cat::KiteVariant::ExemplarM6N11, 0, 6},
                                         {cat::KiteVariant::ExemplarM7N16, 0, 7}}) {
    auto k = cat::kite(c.v, c.n);
    auto p = cat::kite_nine_basis_proof(k);
    EXPECT_EQ(p.bases.size(), 9u);
    size_t r = 12 + 6 * (size_t{1} << (c.m - 3));
    EXPECT_EQ(p.rays.size(), r) << c.m;
    std::map<int, int> mult;
    for (const auto& b : p.bases) {
      int rank = 0;
      for (int x : b) {
        mult[x]++;
        rank += p.rays[static_cast<size_t>(x)].rank;
      }
      EXPECT_EQ(rank, 1 << k.partial.N());
      for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j)
          EXPECT_TRUE(orthogonal(p.rays[static_cast<size_t>(b[i])], p.rays[static_cast<size_t>(b[j])]));
    }
    for (auto [x, m] : mult) EXPECT_EQ(m, 2);
    std::multiset<size_t> sizes;
    for (const auto& b : p.bases) sizes.insert(b.size());
    size_t h = size_t{1} << (c.m - 3);
    EXPECT_EQ(sizes, (std::multiset<size_t>{4, 4, 4, 4, 2 + 2 * h, 2 + 2 * h, 2 + 2 * h, 2 + 2 * h, 4 * h})) << c.m;
  }
  auto m3 = cat::kite_nine_basis_proof(cat::kite(cat::KiteVariant::MerminM3));
  EXPECT_EQ(m3.symbol().expanded(), "18_2 - 9_4");
  auto m4 = cat::kite_nine_basis_proof(cat::kite(cat::KiteVariant::OddNp1, 3));
  EXPECT_EQ(m4.symbol().expanded(), "12^1_2 12^2_2 - 1_8 4_6 4_4");
  auto m7 = cat::kite_nine_basis_proof(cat::kite(cat::KiteVariant::ExemplarM7N16));
  EXPECT_EQ(m7.symbol().compact(), "108-9");
  EXPECT_EQ(sides(m7.symbol().expanded()), sides("12^{16384}_2 96^{1024}_2 - 1_{64} 4_{34} 4_4"));
}

TEST(Catalog, GraphStates) {
  auto two = cat::graph_state_id(adjacency(2, {{0, 1}}));
  EXPECT_EQ(canonicalize_id(two), canonicalize_id(cat::id({"ZZ", "XX", "YY"})));
  auto p3 = cat::graph_state_id(adjacency(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(p3.M(), 4);
  EXPECT_EQ(p3.oddness, 2);
  auto tri = cat::graph_state_id(adjacency(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(canonicalize_id(tri), canonicalize_id(cat::star_kernel(3)));
  // the two critical ID4^3 types
  auto types = enumerate_ids(4, 3);
  std::set<std::string> keys(types.keys.begin(), types.keys.end());
  EXPECT_EQ(keys, (std::set<std::string>{canonicalize_id(p3), canonicalize_id(tri)}));
  EXPECT_THROW(cat::graph_state_id(adjacency(4, {{0, 1}, {2, 3}})), std::invalid_argument);

  std::map<std::string, std::vector<std::pair<int, int>>> graphs{
      {"path", {{0, 1}, {1, 2}, {2, 3}}},
      {"star", {{0, 1}, {0, 2}, {0, 3}}},
      {"cycle", {{0, 1}, {1, 2}, {2, 3}, {3, 0}}},
      {"paw", {{0, 1}, {1, 2}, {2, 0}, {2, 3}}},
      {"diamond", {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}},
      {"k4", {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}};
  std::map<std::set<std::string>, std::vector<std::string>> classes;
  auto table = cat::four_qubit_ids();
  for (auto& [name, edges] : graphs) {
    auto g = cat::graph_state_id(adjacency(4, edges));
    EXPECT_EQ(g.M(), 5);
    std::vector<Pauli> gens(g.rows.begin(), g.rows.end() - 1);
    classes[cat::stabilizer_critical_ids(gens, 5)].push_back(name);
  }
  ASSERT_EQ(classes.size(), 2u);
  std::multiset<size_t> sizes;
  for (auto& [k, v] : classes) sizes.insert(v.size());
  EXPECT_EQ(sizes, (std::multiset<size_t>{2, 4}));
  for (auto& [keys, members] : classes) {
    if (members.size() != 2) continue;
    EXPECT_EQ(keys, (std::set<std::string>{canonicalize_id(table[3])}));
    EXPECT_EQ(std::set<std::string>(members.begin(), members.end()), (std::set<std::string>{"k4", "star"}));
  }
}

TEST(Catalog, Cell600Data) {
  const auto& c = cell600();
  ASSERT_EQ(c.rays.size(), 60u);
  ASSERT_EQ(c.bases.size(), 75u);
  auto t = GoldenNumber::tau(), k = GoldenNumber::kappa();
  EXPECT_TRUE(t * k == GoldenNumber(1));
  EXPECT_TRUE(t * t == t + GoldenNumber(1));
  RealRay4 r13{k, GoldenNumber(0), -t, GoldenNumber(-1)};
  EXPECT_TRUE(c.rays[12] == r13);
  EXPECT_TRUE(dot(c.rays[12], c.rays[13]).is_zero());
  for (const auto& r : c.rays) EXPECT_TRUE(dot(r, r) == GoldenNumber(4));
  std::vector<int> per_ray(60, 0);
  for (const auto& b : c.bases) {
    for (size_t i = 0; i < 4; ++i) {
      per_ray[static_cast<size_t>(b[i])]++;
      for (size_t j = i + 1; j < 4; ++j)
        EXPECT_TRUE(dot(c.rays[static_cast<size_t>(b[i])], c.rays[static_cast<size_t>(b[j])]).is_zero());
    }
  }
  for (int m : per_ray) EXPECT_EQ(m, 5);
  std::set<std::array<int, 4>> stored;
  for (auto b : c.bases) {
    std::sort(b.begin(), b.end());
    stored.insert(b);
  }
  auto q = orthogonal_quadruples(c.rays);
  std::set<std::array<int, 4>> cliques(q.begin(), q.end());
  EXPECT_EQ(cliques, stored);
  EXPECT_EQ(rb_symbol(cat::cell600_set()).expanded(), "60_5 - 75_4");
  EXPECT_THROW(detail::parse_golden_ray("12x0"), std::invalid_argument);
}
