#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "pauliks/pauli.hpp"

using namespace pks;
using Mat = Eigen::MatrixXcd;

namespace {

Mat dense(const Pauli& p) {
  using C = std::complex<double>;
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < p.n; ++q) {
    Mat m(2, 2);
    switch (p.letter(q)) {
      case 'Z': m << 1, 0, 0, -1; break;
      case 'X': m << 0, 1, 1, 0; break;
      case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
      default: m << 1, 0, 0, 1;
    }
    Mat k(out.rows() * 2, out.cols() * 2);
    for (int i = 0; i < out.rows(); ++i)
      for (int j = 0; j < out.cols(); ++j) k.block(2 * i, 2 * j, 2, 2) = out(i, j) * m;
    out = k;
  }
  return out;
}

std::complex<double> phase_value(int k) {
  static const std::complex<double> v[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return v[k & 3];
}

Pauli random_pauli(std::mt19937& rng, int n) {
  Pauli p = identity(n);
  const char letters[4] = {'I', 'Z', 'X', 'Y'};
  for (int q = 0; q < n; ++q) p.set_letter(q, letters[rng() % 4]);
  return p;
}

}  // namespace

TEST(Pauli, LetterEncoding) {
  Pauli p = parse_pauli("ZIX");
  EXPECT_EQ(p.n, 3);
  EXPECT_EQ(p.letter(0), 'Z');
  EXPECT_EQ(p.letter(1), 'I');
  EXPECT_EQ(p.letter(2), 'X');
  EXPECT_EQ(p.z, 1u);
  EXPECT_EQ(p.x, 4u);
  Pauli y = parse_pauli("YYYY");
  EXPECT_EQ(y.z, 15u);
  EXPECT_EQ(y.x, 15u);
}

TEST(Pauli, ParseErrors) {
  EXPECT_THROW(parse_pauli(""), std::invalid_argument);
  EXPECT_THROW(parse_pauli("ZQ"), std::invalid_argument);
  EXPECT_THROW(parse_pauli("zx"), std::invalid_argument);
}

TEST(Pauli, RoundTripAllWordsUpToSix) {
  const char letters[4] = {'I', 'Z', 'X', 'Y'};
  for (int n = 1; n <= 6; ++n) {
    int total = 1 << (2 * n);
    for (int code = 0; code < total; ++code) {
      std::string s;
      for (int q = 0; q < n; ++q) s.push_back(letters[(code >> (2 * q)) & 3]);
      ASSERT_EQ(format_pauli(parse_pauli(s)), s);
    }
  }
}

TEST(Pauli, Commutation) {
  EXPECT_TRUE(commutes(parse_pauli("ZZ"), parse_pauli("XX")));
  EXPECT_FALSE(commutes(parse_pauli("ZI"), parse_pauli("XI")));
  EXPECT_THROW(commutes(parse_pauli("ZZ"), parse_pauli("ZZZ")), DimensionError);
}

TEST(Pauli, MerminSquareRowsAndColumnsCommute) {
  const char* grid[3][3] = {{"ZI", "IX", "ZX"}, {"IZ", "XI", "XZ"}, {"ZZ", "XX", "YY"}};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        EXPECT_TRUE(commutes(parse_pauli(grid[i][a]), parse_pauli(grid[i][b])));
        EXPECT_TRUE(commutes(parse_pauli(grid[a][i]), parse_pauli(grid[b][i])));
      }
}

TEST(Pauli, ProductExamples) {
  auto p = product({parse_pauli("ZZ"), parse_pauli("XX"), parse_pauli("YY")});
  EXPECT_TRUE(p.word.is_identity());
  EXPECT_EQ(p.phase, 2);
  auto q = product({parse_pauli("ZI"), parse_pauli("ZI")});
  EXPECT_TRUE(q.word.is_identity());
  EXPECT_EQ(q.phase, 0);
  auto r = product({parse_pauli("ZZZ"), parse_pauli("ZXX"), parse_pauli("XZX"), parse_pauli("XXZ")});
  EXPECT_TRUE(r.word.is_identity());
  EXPECT_EQ(r.phase, 2);
  EXPECT_THROW(product({}), std::invalid_argument);
  EXPECT_THROW(product({parse_pauli("Z"), parse_pauli("ZZ")}), DimensionError);
}

TEST(Pauli, SingleQubitPhaseConvention) {
  auto p = product({parse_pauli("Z"), parse_pauli("X")});
  EXPECT_EQ(format_pauli(p.word), "Y");
  EXPECT_EQ(p.phase, 1);
}

// Dense-matrix oracle for products and commutation on random words.
TEST(PauliProperty, ProductMatchesDenseMatrices) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    int len = 1 + static_cast<int>(rng() % 4);
    std::vector<Pauli> list;
    Mat acc = Mat::Identity(1 << n, 1 << n);
    for (int i = 0; i < len; ++i) {
      list.push_back(random_pauli(rng, n));
      acc = acc * dense(list.back());
    }
    auto got = product(list);
    Mat expect = phase_value(got.phase) * dense(got.word);
    ASSERT_LT((acc - expect).norm(), 1e-12);
    Pauli a = list[0], b = list.back();
    Mat ab = dense(a) * dense(b), ba = dense(b) * dense(a);
    ASSERT_EQ(commutes(a, b), (ab - ba).norm() < 1e-12);
  }
}

TEST(PauliProperty, AlgebraicLaws) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    Pauli a = random_pauli(rng, n), b = random_pauli(rng, n), c = random_pauli(rng, n);
    ASSERT_EQ(commutes(a, b), commutes(b, a));
    ASSERT_TRUE(commutes(a, a));
    ASSERT_TRUE(commutes(a, identity(n)));
    auto sq = product({a, a});
    ASSERT_TRUE(sq.word.is_identity());
    ASSERT_EQ(sq.phase, 0);
    auto left = multiply(multiply({a, 0}, b), c);
    auto bc = multiply({b, 0}, c);
    auto right = multiply({a, 0}, bc.word);
    right.phase = (right.phase + bc.phase) & 3;
    ASSERT_EQ(left.word, right.word);
    ASSERT_EQ(left.phase, right.phase);
    if (commutes(a, b) && commutes(a, c) && commutes(b, c)) {
      auto p1 = product({a, b, c});
      auto p2 = product({c, a, b});
      auto p3 = product({b, c, a});
      ASSERT_EQ(p1.phase, p2.phase);
      ASSERT_EQ(p1.phase, p3.phase);
      ASSERT_EQ(p1.phase % 2, 0);
    }
  }
}
