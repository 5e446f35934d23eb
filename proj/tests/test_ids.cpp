#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pauliks/identity_product.hpp"

using namespace pks;

namespace {

const std::vector<std::string> kTable10a = {"ZZZ", "ZXX", "XZX", "XXZ"};
const std::vector<std::string> kTable10b = {"ZIZ", "IZZ", "XXX", "YYX"};
const std::vector<std::string> kTable11a = {"ZZI", "XXI", "YYI"};

// Four-qubit IDs from the census of critical ID5^4 / ID4^4 types.
const std::vector<std::vector<std::string>> kFourQubit = {
    {"ZZZZ", "XXXX", "YIZX", "IYXZ"},         {"ZZZI", "XXIZ", "YIXX", "IYYY"},
    {"ZZZZ", "ZZXX", "XXII", "XIZX", "IXXZ"}, {"ZZZZ", "XXZZ", "YIXI", "IYIX", "IIXX"},
    {"ZZZZ", "XIXI", "YIZX", "IXXZ", "IYIX"}, {"ZZZI", "XXIZ", "YIXX", "IYXX", "IIZZ"},
    {"ZZZI", "XXZZ", "YZXX", "IZIX", "IYXZ"}, {"ZZZI", "XXIZ", "YZXZ", "IZZX", "IYXX"},
    {"ZZZI", "ZXXZ", "ZYXX", "XXZZ", "YXIX"}};

// Independent criticality oracle: literal deletion of rows and columns, each
// sub-grid re-verified from strings.
bool brute_critical(const IdentityProduct& id) {
  int M = id.M(), N = id.N();
  auto rows = id.row_strings();
  for (uint32_t R = 1; R < (1u << M); ++R) {
    if (__builtin_popcount(R) < 3) continue;
    for (uint32_t C = 1; C < (1u << N); ++C) {
      if (R == (1u << M) - 1 && C == (1u << N) - 1) continue;
      std::vector<std::string> sub;
      for (int i = 0; i < M; ++i) {
        if (!(R >> i & 1)) continue;
        std::string s;
        for (int q = 0; q < N; ++q)
          if (C >> q & 1) s.push_back(rows[static_cast<size_t>(i)][static_cast<size_t>(q)]);
        sub.push_back(s);
      }
      std::set<std::string> distinct(sub.begin(), sub.end());
      if (distinct.size() != sub.size()) continue;
      bool has_identity = std::any_of(sub.begin(), sub.end(), [](const std::string& s) {
        return s.find_first_not_of('I') == std::string::npos;
      });
      if (has_identity) continue;
      try {
        auto s = verify_id(sub);
        if (!s.is_null()) return false;
      } catch (const IdError&) {
      }
    }
  }
  return true;
}

// Orbit census over all 4^M strings, minimum image over the 6 letter relabelings.
size_t brute_sqp_census(int M) {
  std::set<std::string> reps;
  const char letters[4] = {'I', 'Z', 'X', 'Y'};
  const std::vector<std::string> perms = {"ZXY", "ZYX", "XZY", "XYZ", "YZX", "YXZ"};
  size_t total = size_t{1} << (2 * M);
  for (size_t code = 0; code < total; ++code) {
    std::string s;
    for (int i = 0; i < M; ++i) s.push_back(letters[(code >> (2 * i)) & 3]);
    auto cls = classify_sqp(s).cls;
    if (cls != SqpClass::Odd && cls != SqpClass::Even) continue;
    std::string best;
    for (const auto& p : perms) {
      std::string t = s;
      for (auto& c : t) c = c == 'Z' ? p[0] : c == 'X' ? p[1] : c == 'Y' ? p[2] : 'I';
      if (best.empty() || t < best) best = t;
    }
    reps.insert(best);
  }
  return reps.size();
}

IdentityProduct random_permutation(const IdentityProduct& id, std::mt19937& rng) {
  std::vector<int> qp(static_cast<size_t>(id.N()));
  std::iota(qp.begin(), qp.end(), 0);
  std::shuffle(qp.begin(), qp.end(), rng);
  std::vector<std::string> lp;
  for (int q = 0; q < id.N(); ++q) {
    std::string p = "ZXY";
    std::shuffle(p.begin(), p.end(), rng);
    lp.push_back(p);
  }
  auto out = permute_id(id, qp, lp);
  std::shuffle(out.rows.begin(), out.rows.end(), rng);
  return verify_id(out.rows);
}

}  // namespace

TEST(Sqp, Classification) {
  auto a = classify_sqp("ZXY");
  EXPECT_EQ(a.cls, SqpClass::Odd);
  EXPECT_EQ(a.phase, 1);
  EXPECT_EQ(classify_sqp("ZZXX").cls, SqpClass::Even);
  auto t = classify_sqp("IZZI");
  EXPECT_EQ(t.cls, SqpClass::Trivial);
  EXPECT_EQ(t.phase, 0);
  EXPECT_EQ(classify_sqp("ZX").cls, SqpClass::Invalid);
}

TEST(Sqp, CensusMatchesBruteForceOrbits) {
  for (int M = 3; M <= 8; ++M) {
    auto sqps = enumerate_unique_sqps(M);
    EXPECT_EQ(sqps.size(), brute_sqp_census(M)) << "M=" << M;
    for (const auto& s : sqps) {
      auto c = classify_sqp(s).cls;
      EXPECT_TRUE(c == SqpClass::Odd || c == SqpClass::Even);
    }
  }
}

TEST(Sqp, CensusSmallValues) {
  const size_t expect[] = {1, 7, 35, 155};
  for (int M = 3; M <= 6; ++M) EXPECT_EQ(enumerate_unique_sqps(M).size(), expect[M - 3]);
}

TEST(Id, VerifyExamples) {
  auto upper = verify_id(std::vector<std::string>{"ZZ", "XX", "YY"});
  EXPECT_EQ(upper.sign, -1);
  EXPECT_EQ(upper.oddness, 2);
  EXPECT_EQ(upper.symbol(), "ID3^2_2");
  auto b = verify_id(kTable10b);
  EXPECT_EQ(b.symbol(), "ID4^3_2");
  try {
    verify_id(std::vector<std::string>{"ZZ", "XX", "XZ"});
    FAIL() << "expected NON_COMMUTING";
  } catch (const IdError& e) {
    EXPECT_EQ(e.code, IdErrorCode::NonCommuting);
    EXPECT_EQ(e.row_i, 0);
    EXPECT_EQ(e.row_j, 2);
  }
  try {
    verify_id(std::vector<std::string>{"ZZ", "ZI", "IX"});
    FAIL() << "expected NON_COMMUTING";
  } catch (const IdError& e) {
    EXPECT_EQ(e.code, IdErrorCode::NonCommuting);
  }
  try {
    verify_id(std::vector<std::string>{"ZI", "IZ", "ZI"});
    FAIL() << "expected PRODUCT_NOT_IDENTITY";
  } catch (const IdError& e) {
    EXPECT_EQ(e.code, IdErrorCode::ProductNotIdentity);
  }
  auto null_id = verify_id(std::vector<std::string>{"ZZ", "ZI", "IZ"});
  EXPECT_TRUE(null_id.is_null());
}

TEST(Id, Criticality) {
  EXPECT_TRUE(is_critical_id(verify_id(kTable10a)));
  EXPECT_TRUE(is_critical_id(verify_id(kTable10b)));
  EXPECT_FALSE(is_critical_id(verify_id(kTable11a)));
  for (const auto& rows : kFourQubit) {
    auto id = verify_id(rows);
    EXPECT_EQ(is_critical_id(id), brute_critical(id)) << rows[0];
  }
  EXPECT_TRUE(is_critical_id(verify_id(kFourQubit[2])));
}

TEST(Id, CanonicalKey) {
  auto upper = verify_id(std::vector<std::string>{"ZZ", "XX", "YY"});
  auto swapped = verify_id(std::vector<std::string>{"XX", "ZZ", "YY"});
  auto lower = verify_id(std::vector<std::string>{"ZX", "XZ", "YY"});
  EXPECT_EQ(canonicalize_id(upper), canonicalize_id(swapped));
  EXPECT_EQ(canonicalize_id(upper), canonicalize_id(lower));
  EXPECT_NE(canonicalize_id(verify_id(kTable10a)), canonicalize_id(verify_id(kTable10b)));
}

// Every ID3^2 reachable by row, column and letter permutations shares one key,
// and distinct keys never share an orbit.
TEST(Id, CanonicalKeyMatchesBruteOrbitAtTwoQubits) {
  auto base = verify_id(std::vector<std::string>{"ZZ", "XX", "YY"});
  std::set<std::string> orbit;
  const std::vector<std::string> perms = {"ZXY", "ZYX", "XZY", "XYZ", "YZX", "YXZ"};
  for (int qswap = 0; qswap < 2; ++qswap)
    for (const auto& p0 : perms)
      for (const auto& p1 : perms) {
        auto id = permute_id(base, qswap ? std::vector<int>{1, 0} : std::vector<int>{0, 1}, {p0, p1});
        auto rows = id.row_strings();
        std::sort(rows.begin(), rows.end());
        do {
          orbit.insert(rows[0] + rows[1] + rows[2]);
          EXPECT_EQ(canonicalize_id(verify_id(rows)), canonicalize_id(base));
        } while (std::next_permutation(rows.begin(), rows.end()));
      }
  // all 2-qubit ID3s with non-Null content belong to that orbit
  const char letters[4] = {'I', 'Z', 'X', 'Y'};
  std::vector<std::string> words;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) words.push_back(std::string{letters[a], letters[b]});
  for (auto& a : words)
    for (auto& b : words)
      for (auto& c : words) {
        auto id = try_id({parse_pauli(a), parse_pauli(b), parse_pauli(c)});
        if (!id || id->is_null() || a == b || b == c || a == c) continue;
        if (a == "II" || b == "II" || c == "II") continue;
        EXPECT_EQ(orbit.count(a + b + c), 1u) << a << b << c;
      }
}

TEST(IdProperty, CanonicalAndCriticalInvariantUnderPermutation) {
  std::mt19937 rng(99);
  std::vector<std::vector<std::string>> pool = kFourQubit;
  pool.push_back(kTable10a);
  pool.push_back(kTable10b);
  pool.push_back(kTable11a);
  for (const auto& rows : pool) {
    auto id = verify_id(rows);
    std::string key = canonicalize_id(id);
    bool crit = is_critical_id(id);
    for (int t = 0; t < 10; ++t) {
      auto p = random_permutation(id, rng);
      ASSERT_EQ(canonicalize_id(p), key);
      ASSERT_EQ(is_critical_id(p), crit);
      ASSERT_EQ(p.oddness, id.oddness);
    }
  }
}

TEST(Id, PermutationSignRules) {
  auto b = verify_id(kTable10b);
  auto ident = permute_id(b, {0, 1, 2}, {});
  EXPECT_EQ(ident.rows, b.rows);
  // Swapping Z and X in the Odd second column flips the sign.
  auto flipped = permute_id(b, {0, 1, 2}, {"ZXY", "XZY", "ZXY"});
  EXPECT_EQ(flipped.sign, -b.sign);
  // Any letter permutation of the Even columns of ZZZZ/ZZXX/... keeps the sign.
  auto c = verify_id(kFourQubit[2]);
  std::mt19937 rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::string> lp;
    for (int q = 0; q < 4; ++q) {
      std::string p = "ZXY";
      std::shuffle(p.begin(), p.end(), rng);
      lp.push_back(p);
    }
    EXPECT_EQ(permute_id(c, {0, 1, 2, 3}, lp).sign, c.sign);
  }
}

TEST(IdEnum, SmallCases) {
  auto e32 = enumerate_ids(3, 2);
  EXPECT_EQ(e32.unique.size(), 1u);
  auto e43 = enumerate_ids(4, 3);
  EXPECT_EQ(e43.unique.size(), 2u);
  auto e44 = enumerate_ids(4, 4);
  EXPECT_EQ(e44.unique.size(), 2u);
  EXPECT_EQ(e44.raw, 4u);
}

TEST(IdEnum, FiveByFourUniqueTypes) {
  auto e = enumerate_ids(5, 4);
  EXPECT_EQ(e.unique.size(), 7u);
  std::set<std::string> found(e.keys.begin(), e.keys.end());
  for (size_t i = 2; i < kFourQubit.size(); ++i) {
    auto id = verify_id(kFourQubit[i]);
    if (id.M() == 5) {
      EXPECT_EQ(found.count(canonicalize_id(id)), 1u) << kFourQubit[i][0];
    }
  }
}

TEST(IdEnum, OutputInvariants) {
  for (auto [M, N] : {std::pair{3, 2}, {4, 3}, {4, 4}, {5, 4}, {3, 3}}) {
    auto e = enumerate_ids(M, N);
    for (const auto& id : e.unique) {
      auto again = verify_id(id.rows);
      EXPECT_EQ(again.oddness % 2, 0);
      EXPECT_FALSE(again.is_null());
      EXPECT_LE(id.M(), id.N() + 1);
      EXPECT_TRUE(brute_critical(id));
    }
  }
}

TEST(IdEnum, WholeIds) {
  IdFilter f;
  f.whole_only = true;
  EXPECT_EQ(enumerate_ids(5, 5, f).unique.size(), 1u);
  EXPECT_EQ(enumerate_ids(5, 6, f).unique.size(), 2u);
}

TEST(IdEnum, BudgetTruncates) {
  auto e = enumerate_ids(5, 4, {}, Budget{100, 0});
  EXPECT_TRUE(e.truncated);
}

TEST(IdEnum, ArgumentErrors) {
  EXPECT_THROW(enumerate_ids(2, 2), std::invalid_argument);
  EXPECT_THROW(enumerate_unique_sqps(2), std::invalid_argument);
}
