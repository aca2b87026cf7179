// Command-line front end: run experiments, generate streams, certify traces.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "wemm/certifier.hpp"
#include "wemm/comparator.hpp"
#include "wemm/datagen.hpp"
#include "wemm/errors.hpp"
#include "wemm/harness.hpp"
#include "wemm/trace.hpp"

namespace {

using namespace wemm;

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_dir,
            const std::optional<std::uint64_t>& seed_override) {
  ExperimentConfig config = load_config(config_path);
  if (seed_override) {
    if (!config.generator) throw ConfigError("--seed-override needs a generator config");
    config.generator->seed = *seed_override;
  }
  if (out_dir) config.output_dir = *out_dir;
  const auto result = run_experiment(config);
  write_experiment(result, config.output_dir);
  for (const auto& [learner, r] : result.bounds) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << learner << ' ' << r.theorem
              << " lhs=" << format_double(r.lhs) << " rhs=" << format_double(r.rhs)
              << " slack=" << format_double(r.slack) << '\n';
  }
  std::cout << "wrote " << config.output_dir << '\n';
  return result.all_pass ? kExitPass : kExitCertification;
}

int cmd_gen(const std::string& spec_path, const std::string& out_path) {
  const GeneratorSpec spec = load_generator_spec(spec_path);
  const auto g = generate(spec);
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    write_stream_csv(out, g.stream);
    if (!out) throw IoError("write failed for " + out_path);
  }
  std::filesystem::path truth_path(out_path);
  truth_path.replace_extension(".truth.json");
  std::ofstream truth(truth_path, std::ios::binary);
  if (!truth) throw IoError("cannot open " + truth_path.string() + " for writing");
  truth << ground_truth_to_json(g.truth).dump(2) << '\n';
  return kExitPass;
}

// A_0 = bI gives a_1 = 1 / (1 - ||x_1||^2 / b), so b = ||x||^2 / (1 - 1/a)
// at the first round with a nonzero input.
double infer_b(const RunTrace& trace, const Stream& stream) {
  for (std::size_t t = 0; t < trace.rows.size() && t < stream.size(); ++t) {
    const double n2 = stream.examples[t].x.squaredNorm();
    if (n2 > 0.0 && trace.rows[t].a_t) return n2 / (1.0 - 1.0 / *trace.rows[t].a_t);
  }
  throw ConfigError("cannot infer b from this trace; pass --b");
}

int cmd_certify(const std::string& trace_path, const std::string& stream_path,
                const std::string& theorem, std::optional<double> b_opt,
                std::optional<double> c_opt) {
  std::ifstream tin(trace_path);
  if (!tin) throw IoError("cannot open trace " + trace_path);
  RunTrace trace = read_trace_csv(tin);
  trace.learner = std::filesystem::path(trace_path).stem().string();
  const Stream stream = load_stream(stream_path, NormPolicy::kReject);
  if (trace.rows.size() != stream.size()) {
    throw ConfigError("trace has " + std::to_string(trace.rows.size()) + " rounds, stream " +
                      std::to_string(stream.size()));
  }
  if (trace.weight_mode != WeightMode::kEquality) {
    throw ConfigError("trace has no a_t column values; only wemm traces can be certified");
  }
  trace.b_reg = b_opt ? *b_opt : infer_b(trace, stream);
  const auto a = trace.weights();

  std::vector<BoundReport> reports;
  const auto comp = make_comparator_report(stream, a, trace.b_reg);
  if (theorem == "theorem2") {
    reports.push_back(certify_theorem2(trace, comp));
  } else if (theorem == "theorem3") {
    reports = certify_theorem3(trace, comp);
  } else if (theorem == "theorem4") {
    reports = certify_theorem4(trace, comp);
  } else if (theorem == "a_range") {
    reports = certify_weight_range(trace, stream);
  } else if (theorem == "lemma5") {
    reports.push_back(certify_lemma5(comp));
  } else if (theorem == "corollaries") {
    if (!c_opt) throw ConfigError("corollaries need --c");
    const auto a_tilde = nonstationary_weights(trace, stream, *c_opt);
    const auto opt = nonstationary_optimum(stream, a_tilde, trace.b_reg, *c_opt);
    const auto drift = make_drift_comparator(stream, opt.u_bar, opt.u_t);
    reports = certify_corollaries(trace, stream, drift, *c_opt);
  } else {
    throw ConfigError("unknown theorem id '" + theorem + "'");
  }

  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    out.push_back(bound_to_json(r));
    all_pass = all_pass && r.pass;
  }
  std::cout << out.dump(2) << '\n';
  return all_pass ? kExitPass : kExitCertification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wemm: weighted min-max online regression experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed_override;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("--config", config_path, "experiment JSON")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  run->add_option("--seed-override", seed_override, "replace the generator seed");

  std::string spec_path;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a synthetic stream");
  gen->add_option("--spec", spec_path, "generator spec JSON")->required();
  gen->add_option("--out", gen_out, "output CSV; ground truth goes next to it")->required();

  std::string trace_path;
  std::string stream_path;
  std::string theorem;
  std::optional<double> b_opt;
  std::optional<double> c_opt;
  auto* cert = app.add_subcommand("certify", "certify a recorded wemm trace");
  cert->add_option("--trace", trace_path, "trace CSV")->required();
  cert->add_option("--stream", stream_path, "stream CSV")->required();
  cert->add_option("--theorem", theorem,
                   "theorem2 | theorem3 | theorem4 | lemma5 | a_range | corollaries")
      ->required();
  cert->add_option("--b", b_opt, "regularizer used by the run (inferred when omitted)");
  cert->add_option("--c", c_opt, "drift penalty for corollaries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, seed_override);
    if (*gen) return cmd_gen(spec_path, gen_out);
    if (*cert) return cmd_certify(trace_path, stream_path, theorem, b_opt, c_opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NormViolation& e) {
    std::cerr << "norm violation: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidSpec& e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnexpected;
  }
  return kExitUnexpected;
}
