#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "cell600.hpp"
#include "rays.hpp"

namespace pks {

struct Pentagon {
  std::array<int, 5> ring;   // ray indices in cyclic order
  double sigma_max = 0;
  Eigen::MatrixXcd sigma;    // sum of the five projectors
};

struct PentagonClass {
  double sigma_max;
  size_t count;
};

inline Eigen::MatrixXcd projector_of(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

// Largest eigenvalue of the sum of projectors onto the given unit vectors.
inline double sigma_max(const std::vector<Eigen::VectorXcd>& states) {
  if (states.empty()) throw std::invalid_argument("no states");
  Eigen::Index d = states.front().size();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& v : states) {
    if (v.size() != d) throw std::invalid_argument("states of mixed dimension");
    if (std::abs(v.norm() - 1.0) > 1e-9) throw std::invalid_argument("state is not normalized");
    S += projector_of(v);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline bool is_orthogonal_ring(const std::vector<Eigen::VectorXcd>& s, double tol = 1e-9) {
  if (s.size() != 5) return false;
  for (size_t i = 0; i < 5; ++i)
    if (std::abs(s[i].dot(s[(i + 1) % 5])) > tol) return false;
  return true;
}

// Unit vectors for the 600-cell rays (all squared norms are 4).
inline std::vector<Eigen::VectorXcd> cell600_states() {
  std::vector<Eigen::VectorXcd> out;
  for (const auto& r : cell600().rays) {
    Eigen::VectorXcd v(4);
    for (int i = 0; i < 4; ++i) v(i) = r[static_cast<size_t>(i)].value() / 2.0;
    out.push_back(v);
  }
  return out;
}

// Rank-1 rays of an RBSet as unit vectors.
inline std::vector<Eigen::VectorXcd> ray_states(const std::vector<Ray>& rays) {
  std::vector<Eigen::VectorXcd> out;
  for (const auto& r : rays) {
    if (r.rank != 1) throw std::invalid_argument("pentagons need rank-1 rays");
    Eigen::MatrixXcd P = ray_projector(r);
    Eigen::Index best = 0;
    P.colwise().norm().maxCoeff(&best);
    Eigen::VectorXcd v = P.col(best);
    out.push_back(v.normalized());
  }
  return out;
}

inline std::vector<std::vector<int>> orthogonality_from_states(const std::vector<Eigen::VectorXcd>& s, double tol = 1e-9) {
  std::vector<std::vector<int>> adj(s.size());
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (std::abs(s[i].dot(s[j])) < tol) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  return adj;
}

// Every 5-cycle of the orthogonality graph whose projector sum exceeds 2,
// one per ray 5-set.
inline std::vector<Pentagon> find_conflict_pentagons(const std::vector<Eigen::VectorXcd>& states,
                                                     const std::vector<std::vector<int>>& orth) {
  size_t n = states.size();
  std::vector<std::vector<char>> is_orth(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (int j : orth[i]) is_orth[i][static_cast<size_t>(j)] = 1;
  std::map<std::array<int, 5>, Pentagon> found;
  // cycles a-b-c-d-e-a with a the smallest index and b < e
  for (int a = 0; a < static_cast<int>(n); ++a)
    for (int b : orth[static_cast<size_t>(a)]) {
      if (b < a) continue;
      for (int c : orth[static_cast<size_t>(b)]) {
        if (c <= a || c == b) continue;
        for (int d : orth[static_cast<size_t>(c)]) {
          if (d <= a || d == b || d == c) continue;
          for (int e : orth[static_cast<size_t>(d)]) {
            if (e <= a || e == b || e == c || e == d || e < b) continue;
            if (!is_orth[static_cast<size_t>(e)][static_cast<size_t>(a)]) continue;
            std::array<int, 5> key{a, b, c, d, e};
            std::sort(key.begin(), key.end());
            if (found.count(key)) continue;
            std::vector<Eigen::VectorXcd> s{states[static_cast<size_t>(a)], states[static_cast<size_t>(b)],
                                            states[static_cast<size_t>(c)], states[static_cast<size_t>(d)],
                                            states[static_cast<size_t>(e)]};
            double m = sigma_max(s);
            if (m <= 2 + 1e-9) {
              found[key] = Pentagon{{a, b, c, d, e}, m, {}};
              continue;
            }
            Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(states.front().size(), states.front().size());
            for (const auto& v : s) S += projector_of(v);
            found[key] = Pentagon{{a, b, c, d, e}, m, S};
          }
        }
      }
    }
  std::vector<Pentagon> out;
  for (auto& [k, p] : found)
    if (p.sigma_max > 2 + 1e-9) out.push_back(std::move(p));
  return out;
}

// Classes by sigma_max rounded to 1e-4, strongest first.
inline std::vector<PentagonClass> classify_pentagons(const std::vector<Pentagon>& ps) {
  std::map<long long, size_t> m;
  for (const auto& p : ps) m[std::llround(p.sigma_max * 1e4)]++;
  std::vector<PentagonClass> out;
  for (auto it = m.rbegin(); it != m.rend(); ++it) out.push_back({static_cast<double>(it->first) / 1e4, it->second});
  return out;
}

inline double expectation(const Eigen::MatrixXcd& S, const Eigen::VectorXcd& v) { return std::real(v.dot(S * v)); }

// max over pentagons of <r|Sigma|r>
inline double max_expectation(const std::vector<Pentagon>& ps, const Eigen::VectorXcd& v) {
  double best = -1;
  for (const auto& p : ps) best = std::max(best, expectation(p.sigma, v));
  return best;
}

struct CoverageResult {
  double min_v = 0;
  double phi = 0, theta1 = 0, theta2 = 0;
  size_t points = 0;
};

inline Eigen::VectorXcd real_state(double phi, double t1, double t2) {
  Eigen::VectorXcd r(4);
  r << std::cos(phi) * std::sin(t1) * std::sin(t2), std::sin(phi) * std::sin(t1) * std::sin(t2), std::cos(t1) * std::sin(t2),
      std::cos(t2);
  return r;
}

// Minimum over a (phi, theta1, theta2) mesh of the largest pentagon
// expectation, followed by a finer pass around the lowest cells. A point is
// abandoned as soon as one pentagon beats the running minimum.
inline CoverageResult coverage_scan(const std::vector<Pentagon>& ps, double step = 0.02, int refine_cells = 100,
                                    int refine_factor = 10, unsigned threads = 0) {
  if (step <= 0) throw std::invalid_argument("mesh step must be positive");
  if (ps.empty()) throw std::invalid_argument("no pentagons");
  const double pi = std::acos(-1.0);
  std::vector<Eigen::Matrix4d> S;
  for (const auto& p : ps) S.push_back(p.sigma.real());
  if (!threads) threads = std::max(1u, std::thread::hardware_concurrency());

  struct Cell {
    double v, phi, t1, t2;
  };
  std::mutex mu;
  std::vector<Cell> lowest;
  std::atomic<size_t> points{0};

  // keeps the k lowest exact values seen; returns the current cut
  auto scan = [&](const std::vector<std::array<double, 3>>& pts, size_t keep) {
    std::vector<Cell> cells;
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        std::vector<Cell> local;
        double cut = 1e9;
        size_t hint = 0;
        for (size_t i; (i = next.fetch_add(1)) < pts.size();) {
          auto [phi, t1, t2] = pts[i];
          Eigen::Vector4d r(std::cos(phi) * std::sin(t1) * std::sin(t2), std::sin(phi) * std::sin(t1) * std::sin(t2),
                            std::cos(t1) * std::sin(t2), std::cos(t2));
          // try the last winner first
          double best = r.dot(S[hint] * r);
          if (local.size() >= keep && best > cut) continue;
          for (size_t k = 0; k < S.size(); ++k) {
            double e = r.dot(S[k] * r);
            if (e > best) {
              best = e;
              hint = k;
              if (local.size() >= keep && best > cut) break;
            }
          }
          if (local.size() < keep || best <= cut) {
            local.push_back({best, phi, t1, t2});
            if (local.size() > keep) {
              std::nth_element(local.begin(), local.begin() + static_cast<long>(keep), local.end(),
                               [](const Cell& a, const Cell& b) { return a.v < b.v; });
              local.resize(keep);
            }
            if (local.size() >= keep) {
              cut = 0;
              for (const auto& c : local) cut = std::max(cut, c.v);
            }
          }
        }
        std::lock_guard<std::mutex> lk(mu);
        cells.insert(cells.end(), local.begin(), local.end());
      });
    for (auto& th : pool) th.join();
    points += pts.size();
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.v < b.v; });
    if (cells.size() > keep) cells.resize(keep);
    return cells;
  };

  std::vector<std::array<double, 3>> pts;
  for (double phi = 0; phi < 2 * pi; phi += step)
    for (double t1 = 0; t1 < pi; t1 += step)
      for (double t2 = 0; t2 < pi; t2 += step) pts.push_back({phi, t1, t2});
  auto coarse = scan(pts, static_cast<size_t>(std::max(1, refine_cells)));
  Cell best = coarse.front();
  if (refine_factor > 1) {
    double fine = step / refine_factor;
    pts.clear();
    for (const auto& c : coarse)
      for (int a = -refine_factor; a <= refine_factor; ++a)
        for (int b = -refine_factor; b <= refine_factor; ++b)
          for (int e = -refine_factor; e <= refine_factor; ++e) pts.push_back({c.phi + a * fine, c.t1 + b * fine, c.t2 + e * fine});
    auto refined = scan(pts, 1);
    if (!refined.empty() && refined.front().v < best.v) best = refined.front();
  }
  return {best.v, best.phi, best.t1, best.t2, points.load()};
}

// ------------------------------------------------------ product pentagons

// Vertex i joins i and i+1. Each edge is realised on one qubit; on that
// qubit the edges form paths whose states alternate a(theta), b(theta).
// Vertices untouched on a qubit carry |0>. Returns <00|Sigma|00>.
inline double product_pentagon_value(const std::array<int, 5>& edge_qubit, const std::vector<double>& thetas) {
  std::array<std::array<double, 2>, 5> amp{};  // |<0|state>| per vertex and qubit
  for (auto& a : amp) a = {1.0, 1.0};
  size_t next_theta = 0;
  for (int q = 0; q < 2; ++q) {
    std::array<char, 5> seen{};
    for (int start = 0; start < 5; ++start) {
      // begin a path at a vertex whose incoming edge is not on this qubit
      int in_edge = (start + 4) % 5;
      int out_edge = start;
      if (edge_qubit[static_cast<size_t>(in_edge)] == q || edge_qubit[static_cast<size_t>(out_edge)] != q) continue;
      if (next_theta >= thetas.size()) throw std::invalid_argument("too few angles");
      double th = thetas[next_theta++];
      int v = start, parity = 0;
      for (;;) {
        seen[static_cast<size_t>(v)] = 1;
        amp[static_cast<size_t>(v)][static_cast<size_t>(q)] = parity ? std::sin(th) : std::cos(th);
        if (edge_qubit[static_cast<size_t>(v)] != q) break;
        v = (v + 1) % 5;
        parity ^= 1;
      }
    }
    (void)seen;
  }
  double s = 0;
  for (const auto& a : amp) s += a[0] * a[0] * a[1] * a[1];
  return s;
}

// The three ways to split the ring's edges between two qubits (up to
// symmetry): one edge on qubit 2, two adjacent edges, two separated edges.
inline const std::vector<std::array<int, 5>>& product_pentagon_configs() {
  static const std::vector<std::array<int, 5>> c{{0, 0, 0, 0, 1}, {0, 0, 0, 1, 1}, {0, 1, 0, 1, 0}};
  return c;
}

inline int product_pentagon_angles(const std::array<int, 5>& cfg) {
  int n = 0;
  for (int v = 0; v < 5; ++v)
    if (cfg[static_cast<size_t>((v + 4) % 5)] != cfg[static_cast<size_t>(v)]) ++n;
  return n;
}

// Grid search plus coordinate refinement over all angles of one config.
inline double product_pentagon_max(const std::array<int, 5>& cfg, int grid = 24) {
  const double pi = std::acos(-1.0);
  int k = product_pentagon_angles(cfg);
  std::vector<double> th(static_cast<size_t>(k), 0.0), best_th = th;
  double best = -1;
  size_t total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<size_t>(grid);
  for (size_t idx = 0; idx < total; ++idx) {
    size_t r = idx;
    for (int i = 0; i < k; ++i) {
      th[static_cast<size_t>(i)] = pi * static_cast<double>(r % static_cast<size_t>(grid)) / grid;
      r /= static_cast<size_t>(grid);
    }
    double v = product_pentagon_value(cfg, th);
    if (v > best) {
      best = v;
      best_th = th;
    }
  }
  double h = pi / grid;
  th = best_th;
  while (h > 1e-9) {
    bool improved = false;
    for (int i = 0; i < k; ++i)
      for (double d : {h, -h}) {
        auto t = th;
        t[static_cast<size_t>(i)] += d;
        double v = product_pentagon_value(cfg, t);
        if (v > best + 1e-15) {
          best = v;
          th = t;
          improved = true;
        }
      }
    if (!improved) h /= 2;
  }
  return best;
}

inline double product_pentagon_max() {
  double m = 0;
  for (const auto& c : product_pentagon_configs()) m = std::max(m, product_pentagon_max(c));
  return m;
}

}  // namespace pks
