#pragma once

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cell600.hpp"
#include "kernel.hpp"
#include "pentagon.hpp"
#include "proof.hpp"
#include "rays.hpp"
#include "search.hpp"

namespace pks::io {

using nlohmann::json;

inline constexpr const char* kSchema = "pauliks/1";

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

// ------------------------------------------------------------------ text

inline std::string write_id(const IdentityProduct& id) {
  std::string s = "ID " + std::to_string(id.M()) + " " + std::to_string(id.N()) + " " + std::to_string(id.oddness) +
                  " " + (id.sign > 0 ? "+1" : "-1") + "\n";
  for (const auto& r : id.rows) s += format_pauli(r) + "\n";
  return s;
}

inline std::string write_ids(const std::vector<IdentityProduct>& ids, const std::string& header = "") {
  std::string s = header.empty() ? "" : header + "\n";
  for (const auto& id : ids) s += write_id(id);
  return s;
}

inline std::string write_kernel(const Kernel& k) { return write_ids(k.ids, "KERNEL"); }
inline std::string write_proof(const KSProof& p) { return write_ids(p.ids, "PROOF"); }

inline std::string write_cks(const Cks& c) {
  std::string s;
  for (const auto& l : c.lines()) s += l + "\n";
  return s;
}

struct IdFile {
  std::string header;  // "", "KERNEL" or "PROOF"
  std::vector<IdentityProduct> ids;
};

namespace detail {

inline std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string l;
  int no = 0;
  while (std::getline(in, l)) {
    ++no;
    if (!l.empty() && l.back() == '\r') l.pop_back();
    auto a = l.find_first_not_of(" \t");
    if (a == std::string::npos || l[a] == '#') continue;
    auto b = l.find_last_not_of(" \t");
    out.push_back({no, l.substr(a, b - a + 1)});
  }
  return out;
}

}  // namespace detail

// ID blocks with an optional KERNEL / PROOF header. Header counts are
// checked against the rows; oddness and sign are checked against the
// recomputed values.
inline IdFile parse_id_file(const std::string& text) {
  auto lines = detail::content_lines(text);
  IdFile f;
  size_t i = 0;
  if (i < lines.size() && (lines[i].second == "KERNEL" || lines[i].second == "PROOF")) f.header = lines[i++].second;
  while (i < lines.size()) {
    auto [no, head] = lines[i++];
    std::istringstream hs(head);
    std::string tag, sign;
    int M = 0, N = 0, O = -1;
    if (!(hs >> tag >> M >> N >> O >> sign) || tag != "ID") throw ParseError(no, "expected 'ID M N O sign'");
    if (sign != "+1" && sign != "-1" && sign != "1" && sign != "+" && sign != "-")
      throw ParseError(no, "bad sign '" + sign + "'");
    if (M < 1 || N < 1) throw ParseError(no, "bad ID dimensions");
    std::vector<std::string> rows;
    for (int r = 0; r < M; ++r) {
      if (i >= lines.size()) throw ParseError(no, "ID block ends early");
      const auto& [rno, row] = lines[i++];
      if (static_cast<int>(row.size()) != N) throw ParseError(rno, "row length differs from N");
      rows.push_back(row);
    }
    IdentityProduct id;
    try {
      id = verify_id(rows);
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
    int s = sign[0] == '-' ? -1 : 1;
    if (id.sign != s) throw ParseError(no, "header sign disagrees with the rows");
    if (id.oddness != O) throw ParseError(no, "header oddness disagrees with the rows");
    f.ids.push_back(std::move(id));
  }
  return f;
}

inline Cks parse_cks_text(const std::string& text) {
  std::vector<std::string> rows;
  for (auto& [no, l] : detail::content_lines(text)) rows.push_back(l);
  return parse_cks(rows);
}

// ------------------------------------------------------------------ JSON

inline json id_json(const IdentityProduct& id) {
  return {{"M", id.M()}, {"N", id.N()}, {"O", id.oddness}, {"sign", id.sign}, {"rows", id.row_strings()},
          {"symbol", id.symbol()}, {"profile", id.profile()}};
}

inline IdentityProduct id_from_json(const json& j) {
  auto id = verify_id(j.at("rows").get<std::vector<std::string>>());
  if (j.contains("sign") && j["sign"].get<int>() != id.sign) throw std::invalid_argument("sign disagrees with rows");
  return id;
}

inline json proof_json(const KSProof& p) {
  json ids = json::array();
  for (const auto& id : p.ids) ids.push_back(id_json(id));
  return {{"schema", kSchema},
          {"symbol", p.symbol()},
          {"compact", p.compact_symbol()},
          {"negatives", p.negatives()},
          {"quantum_product", p.quantum_product()},
          {"noncontextual_product", p.noncontextual_product()},
          {"ids", ids}};
}

inline json ray_json(const Ray& r) {
  json sig = json::array();
  for (size_t i = 0; i < r.words.size(); ++i) sig.push_back({format_pauli(r.words[i]), r.values[i]});
  return {{"signature", sig}, {"rank", r.rank}, {"origin", r.origin}};
}

inline json rbset_json(const RBSet& s) {
  json rays = json::array(), kinds = json::array(), pairs = json::array();
  for (const auto& r : s.rays) rays.push_back(ray_json(r));
  for (int k : s.basis_kind) kinds.push_back(k);
  for (auto [a, b] : s.hybrid_pairs) pairs.push_back({a, b});
  auto sym = rb_symbol(s);
  return {{"schema", kSchema}, {"n", s.n},           {"symbol", sym.expanded()}, {"compact", sym.compact()},
          {"rays", rays},      {"bases", s.bases}, {"basis_kind", kinds},      {"hybrid_pairs", pairs}};
}

inline RBSet rbset_from_json(const json& j) {
  RBSet s;
  s.n = j.at("n").get<int>();
  for (const auto& jr : j.at("rays")) {
    Ray r;
    r.n = s.n;
    r.rank = jr.value("rank", 1);
    r.origin = jr.value("origin", -1);
    std::vector<std::pair<Pauli, int>> sig;
    for (const auto& e : jr.at("signature")) {
      auto p = parse_pauli(e.at(0).get<std::string>());
      if (p.n != s.n) throw std::invalid_argument("signature word has the wrong length");
      int v = e.at(1).get<int>();
      if (v != 1 && v != -1) throw std::invalid_argument("eigenvalue must be +1 or -1");
      sig.push_back({p, v});
    }
    std::sort(sig.begin(), sig.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [p, v] : sig) {
      r.words.push_back(p);
      r.values.push_back(static_cast<signed char>(v));
    }
    s.rays.push_back(std::move(r));
  }
  s.bases = j.at("bases").get<std::vector<std::vector<int>>>();
  for (auto& b : s.bases) {
    std::sort(b.begin(), b.end());
    for (int r : b)
      if (r < 0 || r >= static_cast<int>(s.rays.size())) throw std::invalid_argument("basis refers to a missing ray");
  }
  if (j.contains("basis_kind")) s.basis_kind = j["basis_kind"].get<std::vector<int>>();
  else s.basis_kind.assign(s.bases.size(), -1);
  if (j.contains("hybrid_pairs"))
    for (const auto& p : j["hybrid_pairs"]) s.hybrid_pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  else s.hybrid_pairs.assign(s.bases.size(), {-1, -1});
  if (s.basis_kind.size() != s.bases.size() || s.hybrid_pairs.size() != s.bases.size())
    throw std::invalid_argument("basis metadata length mismatch");
  s.rays_before_dedup = s.rays.size();
  return s;
}

inline json parity_record(const RBSet& set, const ParityProof& p) {
  return {{"bases", p.bases}, {"symbol", rb_symbol(set.rays, set.bases, &p.bases).expanded()},
          {"compact", p.compact()}, {"critical", p.critical}};
}

inline json histogram_json(const ProofHistogram& h) {
  json c = json::array(), e = json::object();
  for (auto& [k, v] : h.compact) c.push_back({{"rays", k.first}, {"bases", k.second}, {"count", v}});
  for (auto& [k, v] : h.expanded) e[k] = v;
  return {{"schema", kSchema}, {"total", h.total}, {"compact", c}, {"expanded", e}};
}

// Two-column table, smallest proofs first.
inline std::string histogram_table(const ProofHistogram& h) {
  std::ostringstream o;
  o << std::left << std::setw(16) << "Compact Symbol" << "# of Proofs\n";
  for (auto& [k, v] : h.compact)
    o << std::left << std::setw(16) << (std::to_string(k.first) + "-" + std::to_string(k.second)) << v << "\n";
  o << std::left << std::setw(16) << "Total" << h.total << "\n";
  return o.str();
}

inline json pentagon_classes_json(const std::vector<PentagonClass>& cs) {
  json a = json::array();
  for (const auto& c : cs) {
    // fixed 4 decimals so reruns are byte-identical
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", c.sigma_max);
    a.push_back({{"sigma_max", std::stod(buf)}, {"count", c.count}});
  }
  return a;
}

inline std::string golden_text(const GoldenNumber& g) {
  auto q = [](const GoldenNumber::Q& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  };
  return "(" + q(g.a) + "," + q(g.b) + ")";
}

inline json cell600_json() {
  const auto& c = cell600();
  json rays = json::array();
  for (const auto& r : c.rays) {
    json exact = json::array(), approx = json::array();
    for (const auto& x : r) {
      exact.push_back(golden_text(x));
      approx.push_back(x.value());
    }
    rays.push_back({{"exact", exact}, {"float", approx}});
  }
  return {{"schema", kSchema}, {"rays", rays}, {"bases", c.bases}};
}

}  // namespace pks::io
