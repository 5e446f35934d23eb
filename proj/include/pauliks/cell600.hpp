#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace pks {

// a + b*tau with tau the golden ratio (tau^2 = tau + 1).
struct GoldenNumber {
  using Q = boost::rational<long long>;
  Q a{0}, b{0};

  GoldenNumber() = default;
  GoldenNumber(long long x) : a(x) {}
  GoldenNumber(Q a_, Q b_) : a(a_), b(b_) {}

  static GoldenNumber tau() { return {Q(0), Q(1)}; }
  static GoldenNumber kappa() { return {Q(-1), Q(1)}; }  // 1/tau = tau - 1

  friend GoldenNumber operator+(const GoldenNumber& x, const GoldenNumber& y) { return {x.a + y.a, x.b + y.b}; }
  friend GoldenNumber operator-(const GoldenNumber& x, const GoldenNumber& y) { return {x.a - y.a, x.b - y.b}; }
  friend GoldenNumber operator-(const GoldenNumber& x) { return {-x.a, -x.b}; }
  friend GoldenNumber operator*(const GoldenNumber& x, const GoldenNumber& y) {
    // (a + b t)(c + d t) = ac + bd + (ad + bc + bd) t
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }
  friend bool operator==(const GoldenNumber& x, const GoldenNumber& y) { return x.a == y.a && x.b == y.b; }
  bool is_zero() const { return a.numerator() == 0 && b.numerator() == 0; }

  double value() const {
    static const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    return boost::rational_cast<double>(a) + boost::rational_cast<double>(b) * t;
  }
};

using RealRay4 = std::array<GoldenNumber, 4>;

inline GoldenNumber dot(const RealRay4& u, const RealRay4& v) {
  GoldenNumber s;
  for (size_t i = 0; i < 4; ++i) s = s + u[i] * v[i];
  return s;
}

namespace detail {

// Components written with t = tau, k = kappa, a leading '-' negating the
// next symbol.
inline RealRay4 parse_golden_ray(const std::string& s) {
  RealRay4 r;
  size_t c = 0;
  bool neg = false;
  for (char ch : s) {
    if (ch == '-') {
      neg = true;
      continue;
    }
    GoldenNumber g;
    switch (ch) {
      case '0': g = 0; break;
      case '1': g = 1; break;
      case '2': g = 2; break;
      case 't': g = GoldenNumber::tau(); break;
      case 'k': g = GoldenNumber::kappa(); break;
      default: throw std::invalid_argument("bad ray component");
    }
    if (c >= 4) throw std::invalid_argument("too many ray components");
    r[c++] = neg ? -g : g;
    neg = false;
  }
  if (c != 4) throw std::invalid_argument("too few ray components");
  return r;
}

}  // namespace detail

struct Cell600 {
  std::vector<RealRay4> rays;               // 60, all of squared norm 4
  std::vector<std::array<int, 4>> bases;    // 75, zero-based ray indices
};

inline const Cell600& cell600() {
  static const Cell600 data = [] {
    static const char* kRays[60] = {
        "2000",  "0200",  "0020",  "0002",  "1111",  "11-1-1", "1-11-1", "1-1-11", "1-1-1-1", "1-111",
        "11-11", "111-1", "k0-t-1", "0k1-t", "t-1k0", "1t0k",   "tk0-1",  "10kt",   "k-t-10", "01-tk",
        "1kt0",  "t0-1k", "0t-k-1", "k-10-t", "t01k", "0t-k1",  "1-k-t0", "k10-t",  "0k1t",   "t1-k0",
        "k0t-1", "1-t0k", "t-k0-1", "01-t-k", "10-kt", "kt10",   "t0-1-k", "0tk-1",  "1-kt0",  "k10t",
        "t1k0",  "0k-1-t", "1-t0-k", "k0-t1", "01tk",  "t-k01",  "kt-10",  "10k-t",  "k0t1",   "0k-1t",
        "t-1-k0", "1t0-k", "10-k-t", "tk01",  "01t-k", "k-t10",  "t01-k",  "1k-t0",  "k-10t",  "0tk1"};
    static const int kBases[15][20] = {
        {1, 2, 3, 4, 31, 42, 51, 16, 22, 60, 39, 28, 57, 23, 27, 40, 44, 29, 15, 52},
        {5, 6, 7, 8, 38, 24, 58, 25, 18, 47, 33, 55, 36, 53, 20, 46, 59, 26, 37, 21},
        {9, 10, 11, 12, 56, 45, 17, 35, 13, 32, 50, 41, 43, 49, 30, 14, 34, 19, 48, 54},
        {13, 14, 15, 16, 43, 54, 3, 28, 34, 12, 51, 40, 9, 35, 39, 52, 56, 41, 27, 4},
        {17, 18, 19, 20, 50, 36, 10, 37, 30, 59, 45, 7, 48, 5, 32, 58, 11, 38, 49, 33},
        {21, 22, 23, 24, 8, 57, 29, 47, 25, 44, 2, 53, 55, 1, 42, 26, 46, 31, 60, 6},
        {25, 26, 27, 28, 55, 6, 15, 40, 46, 24, 3, 52, 21, 47, 51, 4, 8, 53, 39, 16},
        {29, 30, 31, 32, 2, 48, 22, 49, 42, 11, 57, 19, 60, 17, 44, 10, 23, 50, 1, 45},
        {33, 34, 35, 36, 20, 9, 41, 59, 37, 56, 14, 5, 7, 13, 54, 38, 58, 43, 12, 18},
        {37, 38, 39, 40, 7, 18, 27, 52, 58, 36, 15, 4, 33, 59, 3, 16, 20, 5, 51, 28},
        {41, 42, 43, 44, 14, 60, 34, 1, 54, 23, 9, 31, 12, 29, 56, 22, 35, 2, 13, 57},
        {45, 46, 47, 48, 32, 21, 53, 11, 49, 8, 26, 17, 19, 25, 6, 50, 10, 55, 24, 30},
        {49, 50, 51, 52, 19, 30, 39, 4, 10, 48, 27, 16, 45, 11, 15, 28, 32, 17, 3, 40},
        {53, 54, 55, 56, 26, 12, 46, 13, 6, 35, 21, 43, 24, 41, 8, 34, 47, 14, 25, 9},
        {57, 58, 59, 60, 44, 33, 5, 23, 1, 20, 38, 29, 31, 37, 18, 2, 22, 7, 36, 42}};
    Cell600 c;
    for (const char* s : kRays) c.rays.push_back(detail::parse_golden_ray(s));
    for (const auto& row : kBases)
      for (int g = 0; g < 5; ++g) c.bases.push_back({row[4 * g] - 1, row[4 * g + 1] - 1, row[4 * g + 2] - 1, row[4 * g + 3] - 1});
    return c;
  }();
  return data;
}

// Every orthonormal 4-clique of the exact orthogonality graph.
inline std::vector<std::array<int, 4>> orthogonal_quadruples(const std::vector<RealRay4>& rays) {
  size_t n = rays.size();
  std::vector<std::vector<char>> orth(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) orth[i][j] = orth[j][i] = dot(rays[i], rays[j]).is_zero();
  std::vector<std::array<int, 4>> out;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      if (!orth[a][b]) continue;
      for (size_t c = b + 1; c < n; ++c) {
        if (!orth[a][c] || !orth[b][c]) continue;
        for (size_t d = c + 1; d < n; ++d)
          if (orth[a][d] && orth[b][d] && orth[c][d])
            out.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c), static_cast<int>(d)});
      }
    }
  return out;
}

}  // namespace pks
