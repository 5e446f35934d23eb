#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "pauliks/catalog.hpp"
#include "pauliks/io.hpp"

using namespace pks;
namespace cat = pks::catalog;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kTruncated = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string format = "text";
  std::string out;
  uint64_t max_nodes = 0;
  double max_seconds = 0;
  unsigned workers = 1;
  Budget budget() const { return {max_nodes, max_seconds}; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const Job& job, const std::string& text) {
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(job.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + job.out + "'");
  f << text;
}

void emit_json(const Job& job, const json& j) { emit(job, j.dump(2) + "\n"); }

bool is_json(const Job& job) { return job.format == "json"; }

// --catalog names a whole structure; files hold ID blocks.
std::vector<IdentityProduct> load_ids(const std::string& file, const std::string& name, const char* want) {
  if (!name.empty()) {
    auto n = cat::named(name);
    if (std::string(want) == "KERNEL") {
      if (!n.kernel) throw UsageError(name + " has no kernel");
      return n.kernel->ids;
    }
    return n.proof.ids;
  }
  if (file.empty()) throw UsageError("need an input file or --catalog");
  auto f = io::parse_id_file(slurp(file));
  if (!f.header.empty() && f.header != want) throw UsageError("'" + file + "' holds a " + f.header + ", not a " + want);
  return f.ids;
}

RBSet load_rbset(const std::string& file, const std::string& name) {
  if (name == "pauli60") return cat::pauli60();
  if (name == "cell600") return cat::cell600_set();
  if (!name.empty()) return generate_rb_set(cat::named(name).proof.ids);
  if (file.empty()) throw UsageError("need --rbset or --catalog");
  auto text = slurp(file);
  if (!text.empty() && text.front() == '{') return io::rbset_from_json(json::parse(text));
  // a proof file generates its set on the fly
  return generate_rb_set(io::parse_id_file(text).ids);
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> v;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ','))
    if (!tok.empty()) v.push_back(std::stoi(tok));
  return v;
}

// ------------------------------------------------------------------ ids

int ids_enumerate(const Job& job, int M, int N, bool all, bool whole, int oddness, int sign) {
  IdFilter f;
  f.critical_only = !all;
  f.whole_only = whole;
  if (oddness >= 0) f.oddness = oddness;
  if (sign) f.sign = sign;
  auto r = enumerate_ids(M, N, f, job.budget());
  if (is_json(job)) {
    json ids = json::array();
    for (const auto& id : r.unique) ids.push_back(io::id_json(id));
    emit_json(job, {{"schema", io::kSchema}, {"M", M}, {"N", N}, {"unique", r.unique.size()}, {"raw", r.raw},
                    {"truncated", r.truncated}, {"ids", ids}});
  } else {
    std::string s = "# " + std::to_string(r.unique.size()) + " unique, " + std::to_string(r.raw) + " raw\n";
    if (r.unique.empty()) s += "0 results\n";
    s += io::write_ids(r.unique);
    emit(job, s);
  }
  return r.truncated ? kTruncated : kOk;
}

int ids_verify(const Job& job, const std::string& file) {
  auto f = io::parse_id_file(slurp(file));
  json a = json::array();
  std::string s;
  for (const auto& id : f.ids) {
    bool crit = is_critical_id(id);
    auto j = io::id_json(id);
    j["critical"] = crit;
    a.push_back(j);
    s += id.symbol() + " " + id.profile() + (id.sign > 0 ? " +1" : " -1") + (crit ? " critical" : " not-critical") + "\n";
  }
  if (is_json(job)) emit_json(job, a);
  else emit(job, f.ids.empty() ? "0 results\n" : s);
  return kOk;
}

int ids_sqp(const Job& job, int M) {
  auto v = enumerate_unique_sqps(M);
  if (is_json(job)) emit_json(job, {{"M", M}, {"count", v.size()}, {"sqps", v}});
  else {
    std::string s = "# " + std::to_string(v.size()) + " unique SQPs\n";
    for (const auto& x : v) s += x + "\n";
    emit(job, s);
  }
  return kOk;
}

// ------------------------------------------------------------------ cks / kernel

int cks_enumerate(const Job& job, int N) {
  auto r = enumerate_cks(N, job.budget());
  if (is_json(job)) {
    json a = json::array();
    for (const auto& c : r.structures) a.push_back(c.lines());
    emit_json(job, {{"schema", io::kSchema}, {"N", N}, {"count", r.structures.size()}, {"truncated", r.truncated},
                    {"structures", a}});
  } else {
    std::string s = "# " + std::to_string(r.structures.size()) + " critical CKSs\n";
    if (r.structures.empty()) s += "0 results\n";
    for (const auto& c : r.structures) s += io::write_cks(c) + "\n";
    emit(job, s);
  }
  return r.truncated ? kTruncated : kOk;
}

int cks_verify(const Job& job, const std::string& file) {
  auto c = io::parse_cks_text(slurp(file));
  bool valid = is_valid_cks(c);
  bool crit = valid && is_critical_cks(c);
  if (is_json(job)) emit_json(job, {{"valid", valid}, {"critical", crit}, {"canonical", canonicalize_cks(c)}});
  else emit(job, std::string(valid ? "valid" : "invalid") + (crit ? " critical" : "") + "\n");
  return valid ? kOk : kInvalid;
}

int kernel_verify(const Job& job, const std::string& file, const std::string& name, bool critical) {
  auto k = verify_kernel(load_ids(file, name, "KERNEL"));
  std::optional<bool> crit;
  if (critical) crit = is_critical_kernel(k, job.budget());
  if (is_json(job)) {
    json j{{"ids", k.ids.size()}, {"N", k.n}, {"negatives", k.negatives()}, {"quantum_product", k.quantum_product()},
           {"noncontextual_product", k.noncontextual_product()}};
    if (crit) j["critical"] = *crit;
    emit_json(job, j);
  } else {
    std::string s = "kernel " + std::to_string(k.ids.size()) + " IDs on " + std::to_string(k.n) +
                    " qubits, A_Q=" + std::to_string(k.quantum_product()) +
                    " A_NC=" + std::to_string(k.noncontextual_product()) + "\n";
    if (crit) s += *crit ? "critical\n" : "not critical\n";
    emit(job, s);
  }
  return crit && !*crit ? kInvalid : kOk;
}

// ------------------------------------------------------------------ proof

int proof_verify(const Job& job, const std::string& file, const std::string& name) {
  auto p = verify_ks_proof(load_ids(file, name, "PROOF"));
  if (job.format == "dot") emit(job, export_dot(p));
  else if (is_json(job)) emit_json(job, io::proof_json(p));
  else
    emit(job, p.symbol() + "\n" + p.compact_symbol() + " A_Q=" + std::to_string(p.quantum_product()) +
                  " A_NC=" + std::to_string(p.noncontextual_product()) + "\n");
  return kOk;
}

int proof_generate(const Job& job, const std::string& file, const std::string& name, bool cross) {
  auto k = verify_kernel(load_ids(file, name, "KERNEL"));
  auto p = cross ? generate_cross_closure(k) : generate_proof_from_kernel(k);
  if (job.format == "dot") emit(job, export_dot(p));
  else if (is_json(job)) emit_json(job, io::proof_json(p));
  else emit(job, io::write_proof(p));
  return kOk;
}

int proof_alpha(const Job& job, const std::string& file, const std::string& name, int max_obs) {
  auto p = verify_ks_proof(load_ids(file, name, "PROOF"));
  auto a = alpha_bound(p, max_obs);
  if (is_json(job)) {
    json j{{"quantum_value", a.quantum_value}, {"classical_bound", a.classical_bound}};
    if (a.brute_force_max) j["brute_force_max"] = *a.brute_force_max;
    emit_json(job, j);
  } else {
    std::string s = "quantum " + std::to_string(a.quantum_value) + " classical " + std::to_string(a.classical_bound);
    s += a.brute_force_max ? " brute-force " + std::to_string(*a.brute_force_max) : " brute-force skipped";
    emit(job, s + "\n");
  }
  return a.brute_force_max && *a.brute_force_max != a.classical_bound ? kInvalid : kOk;
}

int proof_iso(const Job& job, const std::string& a, const std::string& b) {
  auto pa = verify_ks_proof(io::parse_id_file(slurp(a)).ids);
  auto pb = verify_ks_proof(io::parse_id_file(slurp(b)).ids);
  bool iso = proofs_isomorphic(pa, pb);
  if (is_json(job)) emit_json(job, {{"isomorphic", iso}});
  else emit(job, iso ? "isomorphic\n" : "not isomorphic\n");
  return kOk;
}

// ------------------------------------------------------------------ rays

int rays_generate(const Job& job, const std::string& file, const std::string& name, int max_shared) {
  RBSet set;
  if (name == "pauli60" || name == "cell600") set = load_rbset("", name);
  else set = generate_rb_set(load_ids(file, name, "PROOF"), max_shared);
  if (job.format == "text") {
    auto sym = rb_symbol(set);
    emit(job, sym.expanded() + "\n" + sym.compact() + "\n");
  } else {
    emit_json(job, io::rbset_json(set));
  }
  return kOk;
}

// ------------------------------------------------------------------ parity

struct Checkpoint {
  std::string path;
  std::string key;
  std::set<int> done;
  std::vector<ParityProof> proofs;

  void load() {
    if (path.empty() || !std::filesystem::exists(path)) return;
    auto j = json::parse(slurp(path));
    if (j.value("key", "") != key) throw UsageError("checkpoint '" + path + "' belongs to a different search");
    for (int r : j.at("done")) done.insert(r);
    for (const auto& p : j.at("proofs"))
      proofs.push_back({p.at("bases").get<std::vector<int>>(), p.at("rays").get<int>(), p.at("critical").get<bool>()});
  }
  void save() const {
    if (path.empty()) return;
    json ps = json::array();
    for (const auto& p : proofs) ps.push_back({{"bases", p.bases}, {"rays", p.rays}, {"critical", p.critical}});
    std::string tmp = path + ".tmp";
    std::ofstream(tmp) << json{{"key", key}, {"done", done}, {"proofs", ps}}.dump() << "\n";
    std::filesystem::rename(tmp, path);
  }
};

void sort_proofs(std::vector<ParityProof>& v) {
  std::sort(v.begin(), v.end(), [](const ParityProof& a, const ParityProof& b) {
    if (a.bases.size() != b.bases.size()) return a.bases.size() < b.bases.size();
    return a.bases < b.bases;
  });
}

int report_proofs(const Job& job, const RBSet& set, std::vector<ParityProof> proofs, bool histogram, bool truncated) {
  sort_proofs(proofs);
  auto h = classify_proofs(set, proofs, histogram);
  std::string s;
  if (histogram) {
    if (is_json(job)) {
      auto j = io::histogram_json(h);
      j["truncated"] = truncated;
      emit_json(job, j);
    } else {
      emit(job, io::histogram_table(h) + (truncated ? "# truncated\n" : ""));
    }
    return truncated ? kTruncated : kOk;
  }
  for (const auto& p : proofs) {
    if (is_json(job)) {
      s += io::parity_record(set, p).dump() + "\n";
    } else {
      s += p.compact() + "  " + rb_symbol(set.rays, set.bases, &p.bases).expanded() + "  [";
      for (size_t i = 0; i < p.bases.size(); ++i) s += (i ? " " : "") + std::to_string(p.bases[i]);
      s += "]\n";
    }
  }
  if (proofs.empty() && !is_json(job)) s = "0 results\n";
  if (truncated && !is_json(job)) s += "# truncated\n";
  emit(job, s);
  return truncated ? kTruncated : kOk;
}

int parity_search(const Job& job, const RBSet& set, ParityOptions opt, bool histogram, const std::string& ckpt_path,
                  double ckpt_interval) {
  opt.budget = job.budget();
  Checkpoint ck;
  ck.path = ckpt_path;
  ck.key = rb_symbol(set).expanded() + "|" + std::to_string(opt.max_bases) + "|" +
           std::to_string(opt.require_critical) + "|" + std::to_string(opt.require_circuit);
  ck.load();
  std::vector<int> todo;
  for (int b = 0; b < static_cast<int>(set.bases.size()); ++b)
    if (!ck.done.count(b)) todo.push_back(b);

  std::atomic<size_t> next{0};
  std::atomic<bool> truncated{false}, stop{false};
  std::mutex mu;
  std::vector<ParityProof> partial;
  auto last_save = std::chrono::steady_clock::now();
  BudgetTracker clock(job.budget());
  auto worker = [&] {
    for (;;) {
      size_t i = next++;
      if (i >= todo.size() || stop) return;
      ParityOptions unit = opt;
      unit.roots = {todo[i]};
      if (opt.budget.max_seconds > 0) {
        double left = opt.budget.max_seconds - clock.elapsed();
        if (left <= 0) {
          truncated = stop = true;
          return;
        }
        unit.budget.max_seconds = left;
      }
      auto r = find_parity_proofs(set, unit);
      std::lock_guard lock(mu);
      if (r.truncated) {
        // an unfinished root is redone whole on resume
        truncated = stop = true;
        partial.insert(partial.end(), r.proofs.begin(), r.proofs.end());
        return;
      }
      for (auto& p : r.proofs) ck.proofs.push_back(std::move(p));
      ck.done.insert(todo[i]);
      if (opt.max_count && ck.proofs.size() >= opt.max_count) stop = true;
      auto now = std::chrono::steady_clock::now();
      if (std::chrono::duration<double>(now - last_save).count() >= ckpt_interval) {
        ck.save();
        last_save = now;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < job.workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  ck.save();
  auto proofs = ck.proofs;
  proofs.insert(proofs.end(), partial.begin(), partial.end());
  if (opt.max_count && proofs.size() > opt.max_count) {
    sort_proofs(proofs);
    proofs.resize(opt.max_count);
  }
  return report_proofs(job, set, proofs, histogram, truncated);
}

int parity_fastpath(const Job& job, const RBSet& set, bool histogram) {
  return report_proofs(job, set, fast_path_parity(set), histogram, false);
}

// ------------------------------------------------------------------ colour

int color(const Job& job, const RBSet& set, const std::string& bases, bool rays) {
  std::vector<std::vector<int>> use;
  if (bases.empty()) use = set.bases;
  else
    for (int b : parse_list(bases)) {
      if (b < 0 || b >= static_cast<int>(set.bases.size())) throw UsageError("basis index out of range");
      use.push_back(set.bases[static_cast<size_t>(b)]);
    }
  ColorOptions o;
  o.budget = job.budget();
  int R = static_cast<int>(set.rays.size());
  auto v = rays ? ray_colorable(R, use, orthogonality_lists(set.rays), o) : basis_colorable(R, use, o);
  const char* s = v.status == ColorStatus::Colorable ? "COLORABLE" : v.status == ColorStatus::Uncolorable ? "UNCOLORABLE" : "UNKNOWN";
  if (is_json(job)) {
    json j{{"status", s}, {"nodes", v.nodes}};
    if (!v.witnesses.empty()) j["witness"] = v.witnesses.front();
    emit_json(job, j);
  } else {
    emit(job, std::string(s) + "\n");
  }
  return v.status == ColorStatus::Unknown ? kTruncated : kOk;
}

// ------------------------------------------------------------------ catalog / pentagon

int catalog_list(const Job& job) {
  std::vector<std::string> all = cat::names();
  all.push_back("pauli60");
  all.push_back("cell600");
  if (is_json(job)) emit_json(job, all);
  else {
    std::string s;
    for (const auto& n : all) s += n + "\n";
    emit(job, s);
  }
  return kOk;
}

int catalog_emit(const Job& job, const std::string& name, const std::string& kind) {
  if (name == "cell600" && kind != "rbset") {
    const auto& c = cell600();
    if (is_json(job)) {
      emit_json(job, io::cell600_json());
      return kOk;
    }
    std::string s;
    for (const auto& r : c.rays) {
      std::ostringstream line;
      for (size_t i = 0; i < 4; ++i) line << (i ? " " : "") << io::golden_text(r[i]);
      line << "  ";
      for (size_t i = 0; i < 4; ++i) line << (i ? " " : "") << r[i].value();
      s += line.str() + "\n";
    }
    emit(job, s);
    return kOk;
  }
  if (name == "pauli60" || name == "cell600" || kind == "rbset") {
    emit_json(job, io::rbset_json(load_rbset("", name)));
    return kOk;
  }
  auto n = cat::named(name);
  if (kind == "kernel") {
    if (!n.kernel) throw UsageError(name + " has no kernel");
    emit(job, io::write_kernel(*n.kernel));
  } else if (is_json(job)) {
    emit_json(job, io::proof_json(n.proof));
  } else if (job.format == "dot") {
    emit(job, export_dot(n.proof));
  } else {
    emit(job, io::write_proof(n.proof));
  }
  return kOk;
}

std::vector<Pentagon> pentagons_of(const std::string& set) {
  std::vector<Eigen::VectorXcd> s;
  if (set == "cell600") s = cell600_states();
  else if (set == "pauli60") s = ray_states(cat::pauli60().rays);
  else throw UsageError("--set must be cell600 or pauli60");
  return find_conflict_pentagons(s, orthogonality_from_states(s));
}

int pentagon_scan(const Job& job, const std::string& set) {
  auto ps = pentagons_of(set);
  auto cs = classify_pentagons(ps);
  if (is_json(job)) {
    emit_json(job, {{"schema", io::kSchema}, {"set", set}, {"total", ps.size()}, {"classes", io::pentagon_classes_json(cs)}});
  } else {
    std::ostringstream o;
    o << std::left << std::setw(12) << "sigma_max" << "count\n";
    for (const auto& c : cs) o << std::left << std::setw(12) << std::fixed << std::setprecision(4) << c.sigma_max << c.count << "\n";
    o << std::left << std::setw(12) << "total" << ps.size() << "\n";
    emit(job, o.str());
  }
  return kOk;
}

int pentagon_coverage(const Job& job, const std::string& set, double step, size_t cells, int factor) {
  auto ps = pentagons_of(set);
  auto r = coverage_scan(ps, step, cells, factor, job.workers);
  if (is_json(job)) {
    emit_json(job, {{"set", set}, {"step", step}, {"min_v", r.min_v}, {"phi", r.phi}, {"theta1", r.theta1},
                    {"theta2", r.theta2}, {"points", r.points}});
  } else {
    std::ostringstream o;
    o << std::setprecision(10) << "min V " << r.min_v << " at phi=" << r.phi << " theta1=" << r.theta1
      << " theta2=" << r.theta2 << " over " << r.points << " points\n";
    emit(job, o.str());
  }
  return r.min_v > 2.0 ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli-group Kochen-Specker toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Job job;
  if (const char* env = std::getenv("PAULIKS_MAX_SECONDS")) job.max_seconds = std::atof(env);
  if (const char* env = std::getenv("PAULIKS_MAX_NODES")) job.max_nodes = std::strtoull(env, nullptr, 10);
  app.add_option("--format", job.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("-o,--out", job.out, "Write output to a file");
  app.add_option("--max-nodes", job.max_nodes, "Search node budget (0 = none)");
  app.add_option("--max-seconds", job.max_seconds, "Wall-clock budget in seconds (0 = none)")->check(CLI::NonNegativeNumber);
  app.add_option("-j,--workers", job.workers, "Worker threads")->check(CLI::Range(1u, 1024u));

  std::function<int()> run;
  std::string file, file2, name, kind = "proof", set, bases, ckpt;
  int M = 0, N = 0, oddness = -1, sign = 0, max_shared = 4, max_obs = 24, refine_factor = 10;
  bool all = false, whole = false, critical = false, histogram = false, cross = false, rays = false, no_critical = false;
  size_t max_count = 0, refine_cells = 100;
  int max_bases = 0;
  double step = 0.02, ckpt_interval = 30;

  auto* ids = app.add_subcommand("ids", "Identity Products")->require_subcommand(1);
  auto* ie = ids->add_subcommand("enumerate", "Enumerate IDs of M rows on N qubits");
  ie->add_option("-M", M)->required()->check(CLI::Range(3, 8));
  ie->add_option("-N", N)->required()->check(CLI::Range(2, 64));
  ie->add_flag("--critical", "Critical IDs only (default)");
  ie->add_flag("--all", all, "Include non-critical IDs");
  ie->add_flag("--whole", whole, "Whole IDs only");
  ie->add_option("--oddness", oddness);
  ie->add_option("--sign", sign)->check(CLI::IsMember({-1, 1}));
  ie->callback([&] { run = [&] { return ids_enumerate(job, M, N, all, whole, oddness, sign); }; });
  auto* iv = ids->add_subcommand("verify", "Verify an ID file");
  iv->add_option("file", file)->required();
  iv->callback([&] { run = [&] { return ids_verify(job, file); }; });
  auto* is = ids->add_subcommand("sqp", "List unique single-qubit products of length M");
  is->add_option("-M", M)->required()->check(CLI::Range(1, 8));
  is->callback([&] { run = [&] { return ids_sqp(job, M); }; });

  auto* cks = app.add_subcommand("cks", "Composite Kernel Structures")->require_subcommand(1);
  auto* ce = cks->add_subcommand("enumerate", "Critical CKSs on N odd qubits");
  ce->add_option("-N", N)->required()->check(CLI::Range(2, 10));
  ce->callback([&] { run = [&] { return cks_enumerate(job, N); }; });
  auto* cv = cks->add_subcommand("verify", "Check a CKS file");
  cv->add_option("file", file)->required();
  cv->callback([&] { run = [&] { return cks_verify(job, file); }; });

  auto* kern = app.add_subcommand("kernel", "Kernels")->require_subcommand(1);
  auto* kv = kern->add_subcommand("verify", "Verify a kernel file");
  kv->add_option("file", file);
  kv->add_option("--catalog", name);
  kv->add_flag("--critical", critical, "Also test criticality");
  kv->callback([&] { run = [&] { return kernel_verify(job, file, name, critical); }; });

  auto* proof = app.add_subcommand("proof", "Observable proofs")->require_subcommand(1);
  auto* pv = proof->add_subcommand("verify", "Verify a proof file");
  pv->add_option("file", file);
  pv->add_option("--catalog", name);
  pv->callback([&] { run = [&] { return proof_verify(job, file, name); }; });
  auto* pg = proof->add_subcommand("generate", "Generate a proof from a kernel");
  pg->add_option("file", file);
  pg->add_option("--catalog", name);
  pg->add_flag("--cross", cross, "Close cross terms instead of single decomposition");
  pg->callback([&] { run = [&] { return proof_generate(job, file, name, cross); }; });
  auto* pa = proof->add_subcommand("alpha", "Noncontextuality inequality bound");
  pa->add_option("file", file);
  pa->add_option("--catalog", name);
  pa->add_option("--max-observables", max_obs);
  pa->callback([&] { run = [&] { return proof_alpha(job, file, name, max_obs); }; });
  auto* pi = proof->add_subcommand("iso", "Isomorphism test");
  pi->add_option("a", file)->required();
  pi->add_option("b", file2)->required();
  pi->callback([&] { run = [&] { return proof_iso(job, file, file2); }; });

  auto* ray = app.add_subcommand("rays", "Ray/basis sets")->require_subcommand(1);
  auto* rg = ray->add_subcommand("generate", "Generate the ray/basis set of a proof");
  rg->add_option("file", file);
  rg->add_option("--catalog", name);
  rg->add_option("--max-shared", max_shared);
  rg->callback([&] { run = [&] { return rays_generate(job, file, name, max_shared); }; });

  auto* par = app.add_subcommand("parity", "Parity proofs")->require_subcommand(1);
  auto* ps = par->add_subcommand("search", "Tree search for parity proofs");
  auto* pf = par->add_subcommand("fastpath", "Complementary-pair construction");
  for (auto* sc : {ps, pf}) {
    sc->add_option("--rbset", file, "RBSet JSON or proof file");
    sc->add_option("--catalog", name, "Catalog structure, pauli60 or cell600");
    sc->add_flag("--histogram", histogram);
  }
  ps->add_option("--max-bases", max_bases);
  ps->add_option("--max-count", max_count);
  ps->add_flag("--no-critical", no_critical, "Keep non-critical proofs");
  ps->add_option("--checkpoint", ckpt, "Resume file for completed roots");
  ps->add_option("--checkpoint-interval", ckpt_interval, "Seconds between checkpoint writes");
  ps->callback([&] {
    run = [&] {
      ParityOptions o;
      o.max_bases = max_bases;
      o.max_count = max_count;
      o.require_critical = !no_critical;
      return parity_search(job, load_rbset(file, name), o, histogram, ckpt, ckpt_interval);
    };
  });
  pf->callback([&] { run = [&] { return parity_fastpath(job, load_rbset(file, name), histogram); }; });

  auto* col = app.add_subcommand("color", "Colourability of a set or subset of bases");
  col->add_option("--rbset", file);
  col->add_option("--catalog", name);
  col->add_option("--bases", bases, "Comma-separated basis indices");
  col->add_flag("--rays", rays, "Use full ray orthogonality");
  col->callback([&] { run = [&] { return color(job, load_rbset(file, name), bases, rays); }; });

  auto* catc = app.add_subcommand("catalog", "Named structures")->require_subcommand(1);
  catc->add_subcommand("list")->callback([&] { run = [&] { return catalog_list(job); }; });
  auto* cem = catc->add_subcommand("emit");
  cem->add_option("name", name)->required();
  cem->add_option("--kind", kind)->check(CLI::IsMember({"proof", "kernel", "rbset"}));
  cem->callback([&] { run = [&] { return catalog_emit(job, name, kind); }; });

  auto* pent = app.add_subcommand("pentagon", "Pentagon inequality analysis")->require_subcommand(1);
  auto* pscan = pent->add_subcommand("scan");
  pscan->add_option("--set", set)->required()->check(CLI::IsMember({"cell600", "pauli60"}));
  pscan->callback([&] { run = [&] { return pentagon_scan(job, set); }; });
  auto* pcov = pent->add_subcommand("coverage");
  pcov->add_option("--set", set)->check(CLI::IsMember({"cell600", "pauli60"}))->default_val("cell600");
  pcov->add_option("--step", step)->check(CLI::PositiveNumber);
  pcov->add_option("--refine-cells", refine_cells);
  pcov->add_option("--refine-factor", refine_factor);
  pcov->callback([&] { run = [&] { return pentagon_coverage(job, set, step, refine_cells, refine_factor); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IdError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const KernelError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const ProofError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const io::ParseError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
