#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wemm/certifier.hpp"
#include "wemm/comparator.hpp"
#include "wemm/datagen.hpp"
#include "wemm/kernel.hpp"
#include "wemm/stream.hpp"
#include "wemm/trace.hpp"

namespace wemm {

inline constexpr int kSchemaVersion = 1;

// Process exit codes of the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCertification = 3;

enum class NormPolicy { kReject, kPrescale };

struct LearnerConfig {
  std::string algorithm;  // wemm | kernel_wemm | arowr | aar | ridge | rls
  std::string name;       // defaults to algorithm; must be unique
  double b = 2.0;
  double r = 1.0;  // arowr and rls only
  KernelSpec kernel;
};

struct CertificationRequest {
  std::string theorem;  // theorem2 | theorem3 | theorem4 | lemma5 | corollaries | a_range
  double tol = kRelativeTolerance;
};

struct NonstationaryConfig {
  bool use_c_v = false;
  double c = 0.0;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::optional<GeneratorSpec> generator;
  std::optional<std::string> input_csv;
  std::vector<LearnerConfig> learners;
  std::vector<CertificationRequest> certifications;
  std::optional<NonstationaryConfig> nonstationary;
  std::string output_dir = "out";
  NormPolicy norm_policy = NormPolicy::kReject;

  // Throws ConfigError on any violated precondition.
  void validate() const;
};

// JSON <-> structs. Parsing is strict about unknown keys; every failure is
// a ConfigError (InvalidSpec for a bad generator block).
GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json generator_spec_to_json(const GeneratorSpec& spec);
nlohmann::ordered_json ground_truth_to_json(const GroundTruth& truth);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

// Reads and validates a config file. A relative input_csv is resolved
// against the config file's directory.
ExperimentConfig load_config(const std::string& path);
GeneratorSpec load_generator_spec(const std::string& path);

// FNV-1a 64 of the canonical config dump, output_dir excluded.
std::string config_hash(const ExperimentConfig& config);

// Parses a stream CSV and applies the norm policy: reject throws
// NormViolation when some ||x|| > 1; prescale divides every x by the max
// norm (only when it exceeds 1) and records the factor.
Stream load_stream(const std::string& path, NormPolicy policy);
void apply_norm_policy(Stream& stream, NormPolicy policy);

RunTrace run_wemm(const Stream& stream, double b_reg, const std::string& name = "wemm");
RunTrace run_kernel_wemm(const Stream& stream, const KernelSpec& spec, double b_reg,
                         const std::string& name = "kernel_wemm");
RunTrace run_learner(const LearnerConfig& learner, const Stream& stream);

struct ExperimentResult {
  Stream stream;
  std::optional<GroundTruth> truth;
  std::vector<RunTrace> traces;
  std::optional<ComparatorReport> comparator;
  std::vector<std::pair<std::string, BoundReport>> bounds;  // (learner, report)
  nlohmann::ordered_json report;
  bool all_pass = true;
};

// Runs every learner on one shared stream, then every requested
// certificate on every primal WEMM learner.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes stream.csv, <name>_trace.csv per learner, report.json and, for
// generated streams, truth.json into dir.
void write_experiment(const ExperimentResult& result, const std::string& dir);

nlohmann::ordered_json bound_to_json(const BoundReport& report);

}  // namespace wemm
