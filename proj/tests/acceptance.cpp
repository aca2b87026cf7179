// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check rebuilds its reference values independently of the
// quantity under test where it can.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>
#include <json.hpp>

#include "oracles.hpp"
#include "wemm/certifier.hpp"
#include "wemm/comparator.hpp"
#include "wemm/datagen.hpp"
#include "wemm/harness.hpp"
#include "wemm/kernel.hpp"
#include "wemm/primal.hpp"

namespace {

using namespace wemm;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + messages_};
  }

 private:
  int failures_ = 0;
  std::string messages_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Run {
  Stream stream;
  RunTrace trace;
};

// Every primal WEMM run made by the suite, for the range invariants.
std::vector<Run> g_runs;

Stream make_stream(GeneratorKind kind, Eigen::Index d, std::size_t T, double sigma,
                   std::uint64_t seed, Vec* u_true = nullptr) {
  GeneratorSpec spec;
  spec.kind = kind;
  spec.d = d;
  spec.T = T;
  spec.seed = seed;
  spec.sigma = sigma;
  auto g = generate(spec);
  if (u_true) *u_true = g.truth.u_true;
  return std::move(g.stream);
}

struct Experiment {
  Eigen::Index d;
  std::size_t T;
  double b;
  double sigma;
  std::uint64_t seed;
  Vec u_true;
  RunTrace trace;
  ComparatorReport comp;
  BoundReport t2;
  std::vector<BoundReport> t3;
  std::vector<BoundReport> t4;
  Stream stream;
};

std::vector<Experiment> g_experiments;
double g_experiment_seconds = 0.0;

// The 50 seeded experiments shared by criteria 1, 4, 5, 6 and 11.
void run_experiments() {
  const Eigen::Index ds[] = {1, 2, 3, 5};
  const std::size_t Ts[] = {50, 200, 1000};
  const double bs[] = {1.5, 2.0, 4.0};
  const double sigmas[] = {0.0, 0.1, 1.0};
  const auto start = Clock::now();
  for (int i = 0; i < 50; ++i) {
    Experiment e;
    e.d = ds[i % 4];
    e.T = Ts[i % 3];
    e.b = bs[(i / 3) % 3];
    e.sigma = sigmas[(i / 9) % 3];
    e.seed = 1000 + static_cast<std::uint64_t>(i);
    e.stream = make_stream(e.sigma > 0.0 ? GeneratorKind::kGaussianNoise : GeneratorKind::kRealizable,
                           e.d, e.T, e.sigma, e.seed, &e.u_true);
    e.trace = run_wemm(e.stream, e.b);
    e.comp = make_comparator_report(e.stream, e.trace.weights(), e.b);
    e.t2 = certify_theorem2(e.trace, e.comp);
    e.t3 = certify_theorem3(e.trace, e.comp);
    e.t4 = certify_theorem4(e.trace, e.comp);
    g_experiments.push_back(std::move(e));
  }
  g_experiment_seconds = seconds_since(start);
  for (const auto& e : g_experiments) g_runs.push_back({e.stream, e.trace});
}

std::string label(const Experiment& e) {
  return "d=" + std::to_string(e.d) + " T=" + std::to_string(e.T) + " b=" + fmt(e.b) +
         " sigma=" + fmt(e.sigma);
}

Outcome criterion1() {
  Check c;
  double worst = 0.0;
  for (const auto& e : g_experiments) {
    const double gap = std::abs(e.t2.lhs - e.t2.rhs);
    worst = std::max(worst, gap / (1.0 + e.t2.rhs));
    c.expect(gap <= 1e-6 * (1.0 + e.t2.rhs) && e.t2.pass, label(e) + " gap " + fmt(gap));
  }
  c.expect(g_experiment_seconds < 10.0, "runtime " + fmt(g_experiment_seconds) + " s");
  return c.done("50 experiments, max |lhs-rhs|/(1+rhs) = " + fmt(worst) + ", " +
                fmt(g_experiment_seconds) + " s");
}

Outcome criterion2() {
  Check c;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = make_stream(GeneratorKind::kGaussianNoise, 1 + static_cast<Eigen::Index>(seed % 3),
                               100, 0.5, 200 + seed);
    const auto trace = run_wemm(s, 2.0);
    g_runs.push_back({s, trace});
    const auto phi = prefix_optimum_values(s, trace.weights(), 2.0);
    for (std::size_t t = 0; t < s.size(); ++t) {
      const double loss = trace.rows[t].loss;
      const double r = std::abs(loss + phi[t] - phi[t + 1]);
      worst = std::max(worst, r / (1.0 + loss));
      c.expect(r <= 1e-8 * (1.0 + loss), "seed " + std::to_string(seed) + " round " +
                                              std::to_string(t + 1) + " residual " + fmt(r));
    }
  }
  return c.done("1000 rounds, max residual/(1+l) = " + fmt(worst));
}

Outcome criterion3() {
  Check c;
  double worst_l2 = 0.0;
  double worst_t2 = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(seed % 4);
    const double b = 1.5 + 0.5 * static_cast<double>(seed % 3);
    const auto s = make_stream(GeneratorKind::kGaussianNoise, d, 100, 0.3, 300 + seed);
    WemmLearner l(d, b);
    for (const auto& ex : s.examples) {
      // Both inverses come from direct inversion of the accumulators.
      const Mat prev_inv = l.accumulated_a().matrix().inverse();
      const double q_prev = ex.x.dot(prev_inv * ex.x);
      const double a = l.update(ex.x, ex.y);
      const Mat next_inv = l.accumulated_a().matrix().inverse();
      const double q_next = ex.x.dot(next_inv * ex.x);
      const double lhs = a * a * q_next + 1.0 - a;
      const double rhs = (1.0 + a * q_prev - a) / (1.0 + a * q_prev);
      worst_l2 = std::max(worst_l2, std::abs(lhs - rhs));
      c.expect(std::abs(lhs - rhs) <= 1e-10, "lemma 2 residual " + fmt(lhs - rhs));
      const Mat t2 = next_inv * (a * ex.x * ex.x.transpose()) * prev_inv - (prev_inv - next_inv);
      const double e = t2.lpNorm<Eigen::Infinity>();
      worst_t2 = std::max(worst_t2, e);
      c.expect(e <= 1e-8, "rank-one inverse difference residual " + fmt(e));
    }
  }
  return c.done("10 runs, max residuals " + fmt(worst_l2) + " / " + fmt(worst_t2));
}

Outcome criterion4() {
  Check c;
  double min_margin = 1e300;
  for (const auto& e : g_experiments) {
    for (const auto& r : e.t3) {
      c.expect(r.pass, label(e) + " " + r.theorem + " slack " + fmt(r.slack));
      if (r.theorem == "theorem3_closed_form") min_margin = std::min(min_margin, r.slack);
    }
  }
  return c.done("150 reports, min closed-form margin " + fmt(min_margin));
}

Outcome criterion5() {
  Check c;
  for (const auto& e : g_experiments) {
    for (const auto& r : e.t4) c.expect(r.pass, label(e) + " " + r.theorem + " slack " + fmt(r.slack));
  }
  std::string ratios;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto s = make_stream(GeneratorKind::kUnitSphereEdge, 3, 2000, 0.01, 500 + seed);
    const auto trace = run_wemm(s, 2.0);
    g_runs.push_back({s, trace});
    const auto comp = make_comparator_report(s, trace.weights(), 2.0);
    const auto t3 = certify_theorem3(trace, comp);
    const auto t4 = certify_theorem4(trace, comp);
    for (const auto& r : t4) c.expect(r.pass, "low-noise " + r.theorem);
    const double rhs3 = t3[1].rhs;
    const double rhs4 = t4[1].rhs;
    c.expect(rhs4 < rhs3, "seed " + std::to_string(seed) + ": theorem 4 rhs " + fmt(rhs4) +
                              " >= theorem 3 rhs " + fmt(rhs3));
    const double term_ratio = t4[0].rhs / t3[0].rhs;
    ratios += (ratios.empty() ? "" : ", ") + fmt(rhs4 / rhs3) + " (loss terms " + fmt(term_ratio) + ")";
  }
  return c.done("100 reports pass; low-noise rhs4/rhs3 = " + ratios);
}

Outcome criterion6() {
  Check c;
  int runs = 0;
  for (const auto& e : g_experiments) {
    if (e.sigma != 0.0) continue;
    ++runs;
    const auto comp = make_comparator_report(e.stream, e.trace.weights(), e.b, e.u_true);
    c.expect(comp.S == 0.0, label(e) + " S = " + fmt(comp.S));
    const double reg = e.b * e.u_true.squaredNorm();
    const double regret = e.trace.total_loss() - comp.L_T;
    c.expect(regret <= reg + 1e-6, label(e) + " regret " + fmt(regret) + " > " + fmt(reg));
    const auto t3 = certify_theorem3(e.trace, comp);
    const auto t4 = certify_theorem4(e.trace, comp);
    c.expect(t3[1].rhs == reg && t4[1].rhs == reg, label(e) + " bounds do not reduce to b|u|^2");
  }
  c.expect(runs > 0, "no realizable experiments");
  return c.done(std::to_string(runs) + " realizable runs at u = u_true");
}

Outcome criterion7() {
  Check c;
  double worst_pred = 0.0;
  double worst_sym = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = make_stream(GeneratorKind::kGaussianNoise, 3, 500, 0.2, 700 + seed);
    WemmLearner primal(3, 2.0);
    KernelWemm dual(KernelSpec::linear(), 2.0);
    for (const auto& ex : s.examples) {
      const double diff = std::abs(dual.predict(ex.x) - primal.predict(ex.x));
      worst_pred = std::max(worst_pred, diff);
      c.expect(diff <= 1e-8, "seed " + std::to_string(seed) + " prediction gap " + fmt(diff));
      primal.update(ex.x, ex.y);
      dual.update(ex.x, ex.y);
      const double sym = (dual.beta() - dual.beta().transpose()).lpNorm<Eigen::Infinity>();
      worst_sym = std::max(worst_sym, sym);
      c.expect(sym <= 1e-10, "beta asymmetry " + fmt(sym));
    }
  }
  return c.done("5 seeds x 500 rounds, max gap " + fmt(worst_pred) + ", max asymmetry " +
                fmt(worst_sym));
}

Outcome criterion8() {
  Check c;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index d = 1 + i % 3;
    const std::size_t T = 5 + static_cast<std::size_t>(i % 16);
    const double c_pen = 3.0 + static_cast<double>(i);
    const auto s = make_stream(GeneratorKind::kGaussianNoise, d, T, 0.4, 800 + static_cast<std::uint64_t>(i));
    const auto trace = run_wemm(s, 2.0);
    const auto a_tilde = nonstationary_weights(trace, s, c_pen);
    const auto opt = nonstationary_optimum(s, a_tilde, 2.0, c_pen);
    const auto alt = testing::alternating_minimization(s, a_tilde, 2.0, c_pen);
    double e = std::max(std::abs(opt.J_min - alt.J), (opt.u_bar - alt.u_bar).norm());
    for (std::size_t t = 0; t < T; ++t) e = std::max(e, (opt.u_t[t] - alt.u_t[t]).norm());
    worst = std::max(worst, e);
    c.expect(e <= 1e-6, "instance " + std::to_string(i) + " differs by " + fmt(e));
  }
  return c.done("20 instances, max difference " + fmt(worst));
}

Outcome criterion9() {
  Check c;
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kDrift;
  spec.d = 2;
  spec.T = 1000;
  spec.step = 0.01;
  int reports = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    spec.seed = 900 + seed;
    const auto g = generate(spec);
    const auto trace = run_wemm(g.stream, 2.0);
    g_runs.push_back({g.stream, trace});
    const auto truth = make_drift_comparator(g.stream, g.truth.u_true, g.truth.u_t);
    for (double c_pen : {4.0, 8.0, 16.0}) {
      const auto a_tilde = nonstationary_weights(trace, g.stream, c_pen);
      const auto opt = nonstationary_optimum(g.stream, a_tilde, 2.0, c_pen);
      const auto tuple = make_drift_comparator(g.stream, opt.u_bar, opt.u_t);
      for (const auto* drift : {&truth, &tuple}) {
        const auto rs = certify_corollaries(trace, g.stream, *drift, c_pen);
        c.expect(rs.size() == 5, "expected five corollary reports");
        for (const auto& r : rs) {
          ++reports;
          c.expect(r.pass, "seed " + std::to_string(seed) + " c=" + fmt(c_pen) + " " + r.theorem +
                               " slack " + fmt(r.slack));
        }
      }
    }
    // A constant tuple has V_m = 0 and must reproduce the theorem3 reports exactly.
    const auto flat = make_drift_comparator(g.stream, g.truth.u_true,
                                            std::vector<Vec>(g.stream.size(), g.truth.u_true));
    const auto routed = certify_corollaries(trace, g.stream, flat, 4.0);
    const auto direct = certify_theorem3(
        trace, make_comparator_report(g.stream, trace.weights(), 2.0, g.truth.u_true));
    bool same = routed.size() == direct.size();
    for (std::size_t i = 0; same && i < routed.size(); ++i) {
      same = routed[i].theorem == direct[i].theorem && routed[i].lhs == direct[i].lhs &&
             routed[i].rhs == direct[i].rhs && routed[i].slack == direct[i].slack &&
             routed[i].terms == direct[i].terms && routed[i].pass == direct[i].pass;
    }
    c.expect(same, "V_m = 0 reports differ from theorem 3");
  }
  return c.done(std::to_string(reports) + " corollary reports over 3 drift streams; V_m = 0 matches");
}

Outcome criterion10() {
  Check c;
  const auto start = Clock::now();
  SplitMix64 rng(1010);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t T = 1 + static_cast<std::size_t>(rng.uniform() * 50);
    const double S = 0.05 + 4.0 * rng.uniform();
    std::vector<double> losses(T);
    std::vector<double> a(T);
    for (std::size_t t = 0; t < T; ++t) {
      losses[t] = S * rng.uniform() * (rng.uniform() < 0.3 ? 0.0 : 1.0);
      a[t] = 1.0 + 3.0 * rng.uniform();
    }
    losses[static_cast<std::size_t>(rng.uniform() * static_cast<double>(T))] = S;
    c.expect(check_lemma5(losses, a, S), "lemma 5 instance " + std::to_string(i));
  }
  std::size_t sequences = 0;
  for (double b : {1.5, 2.0, 4.0}) {
    for (Eigen::Index d = 1; d <= 2; ++d) {
      for (int tau = 1; tau <= 4; ++tau) {
        const auto r = lemma6_search(b, d, tau);
        sequences += r.sequences;
        c.expect(r.holds, "lemma 6 b=" + fmt(b) + " d=" + std::to_string(d) + " tau=" +
                              std::to_string(tau) + ": " + fmt(r.worst_realized) + " > " +
                              fmt(r.bound));
      }
    }
  }
  const double secs = seconds_since(start);
  c.expect(secs < 60.0, "runtime " + fmt(secs) + " s");
  return c.done("1000 lemma 5 instances, " + std::to_string(sequences) +
                " lemma 6 sequences, " + fmt(secs) + " s");
}

struct SuiteArtifacts {
  std::map<std::string, std::string> files;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs one config and returns its artifacts, with runtime_ms dropped from
// report.json. Also records the primal WEMM runs.
SuiteArtifacts run_suite_config(const fs::path& config_path, const fs::path& out) {
  auto config = load_config(config_path.string());
  const auto res = run_experiment(config);
  write_experiment(res, out.string());
  for (std::size_t i = 0; i < res.traces.size(); ++i) {
    if (config.learners[i].algorithm == "wemm") g_runs.push_back({res.stream, res.traces[i]});
  }
  SuiteArtifacts art;
  for (const auto& entry : fs::directory_iterator(out)) {
    const auto name = entry.path().filename().string();
    if (name == "report.json") {
      auto j = nlohmann::ordered_json::parse(slurp(entry.path()));
      for (auto& l : j["learners"]) l.erase("runtime_ms");
      art.files[name] = j.dump(2);
    } else {
      art.files[name] = slurp(entry.path());
    }
  }
  return art;
}

Outcome criterion12() {
  Check c;
  const fs::path configs(WEMM_CONFIG_DIR);
  const fs::path scratch = fs::temp_directory_path() / "wemm_acceptance";
  fs::remove_all(scratch);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(configs)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  c.expect(!files.empty(), "no configs in " + configs.string());
  std::size_t compared = 0;
  for (const auto& f : files) {
    const auto stem = f.stem().string();
    const auto first = run_suite_config(f, scratch / "first" / stem);
    const auto second = run_suite_config(f, scratch / "second" / stem);
    c.expect(first.files.size() == second.files.size(), stem + ": artifact sets differ");
    for (const auto& [name, bytes] : first.files) {
      const auto it = second.files.find(name);
      c.expect(it != second.files.end() && it->second == bytes, stem + "/" + name + " differs");
      ++compared;
    }
  }
  fs::remove_all(scratch);
  return c.done(std::to_string(files.size()) + " configs, " + std::to_string(compared) +
                " artifacts identical across reruns");
}

Outcome criterion11() {
  Check c;
  for (const auto& run : g_runs) {
    for (const auto& r : certify_weight_range(run.trace, run.stream)) {
      if (r.theorem == "log_det_sum") {
        c.expect(r.lhs <= r.rhs + 1e-8, run.trace.learner + " sum " + fmt(r.lhs) + " > log det " +
                                            fmt(r.rhs));
      } else {
        c.expect(r.pass, run.trace.learner + " " + r.theorem + " slack " + fmt(r.slack));
      }
    }
  }
  return c.done(std::to_string(g_runs.size()) + " runs");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  // Order of evaluation differs from display order: criterion 11 checks
  // every run the others made.
  const std::vector<Entry> entries = {
      {1, "weighted-loss equality", criterion1},
      {2, "per-round min-max identity", criterion2},
      {3, "rank-one inverse identities", criterion3},
      {4, "log-det regret bound", criterion4},
      {5, "loss-adaptive regret bound", criterion5},
      {6, "realizable case", criterion6},
      {7, "kernel/primal equivalence", criterion7},
      {8, "non-stationary closed form vs alternating minimization", criterion8},
      {9, "drifting-comparator corollaries", criterion9},
      {10, "index-set and eigenvalue lemmas", criterion10},
      {12, "determinism of the default suite", criterion12},
      {11, "weight range and log-det sum", criterion11},
  };
  std::map<int, std::pair<std::string, Outcome>> results;
  try {
    run_experiments();
  } catch (const std::exception& e) {
    std::cerr << "experiment setup failed: " << e.what() << '\n';
    return 1;
  }
  for (const auto& entry : entries) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = entry.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    o.detail += " [" + fmt(seconds_since(start)) + " s]";
    results[entry.id] = {entry.title, o};
  }
  int failed = 0;
  for (const auto& [id, r] : results) {
    std::cout << (r.second.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << r.first
              << " -- " << r.second.detail << '\n';
    if (!r.second.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all 12 criteria pass" : std::to_string(failed) + " criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}
