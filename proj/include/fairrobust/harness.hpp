#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairrobust/constraints.hpp"
#include "fairrobust/dataset.hpp"
#include "fairrobust/model.hpp"

namespace fairrobust {

// Which trainer a run uses. true_groups is the oracle baseline that sees the
// clean group column; every other constrained approach trains on the noisy
// proxies only.
enum class Approach {
  Unconstrained,
  TrueGroups,
  Naive,
  Dro,
  SaPractical,
  SaIdeal,
};

const std::string& approach_name(Approach a);
Approach approach_from_name(const std::string& name);  // ConfigError if unknown

// Hyperparameter grid plus the fixed trainer knobs. The vectors are swept;
// which ones apply depends on the approach (unconstrained: eta_theta only;
// naive/true_groups: x eta_lambda; dro: x eta_p; sa_practical: x eta_w;
// sa_ideal: eta_lambda x eta_w).
struct GridConfig {
  std::vector<double> eta_theta{0.001, 0.01, 0.1};
  std::vector<double> eta_lambda{0.25, 0.5, 1.0, 2.0};
  std::vector<double> eta_p{0.001, 0.01, 0.1};
  std::vector<double> eta_w{0.001, 0.01, 0.1};
  int iterations = 750;
  double lambda_radius = 10.0;
  double tau = 1e-3;
  int q_inner = 10;
  double r_prime = 10.0;
};

// Axis-aligned candidate grid for the enumeration-scale trainer: one
// {lo, hi, steps} range per weight coordinate plus one for the bias.
struct ThetaGridAxis {
  double lo = 0.0, hi = 0.0;
  int steps = 1;
};
struct ThetaGridSpec {
  std::vector<ThetaGridAxis> weights;
  ThetaGridAxis bias;
};

struct ExperimentConfig {
  std::string dataset;
  Schema schema;
  std::vector<Approach> approaches;
  std::vector<RateKind> kinds;  // {TPR} or {TPR, FPR}
  double alpha = 0.05;
  std::vector<double> noise_levels;
  std::vector<uint64_t> seeds;
  SplitSpec split;  // ratios only; the per-run seed is derived per seed
  GridConfig grid;
  std::map<std::string, GridConfig> grid_overrides;  // keyed by approach name
  std::optional<double> dro_gamma;  // overrides the estimated per-group gamma
  std::optional<ThetaGridSpec> ideal_grid;  // required for sa_ideal
  long subsample = 0;                       // 0 = full data
  int threads = 0;                          // 0 = hardware concurrency
  std::string out_dir = "out";
};

// Flat JSON file; validation failures name the offending field.
ExperimentConfig load_experiment_config(const std::string& path);

// One test-set record per (approach, noise level, seed). Violation vectors
// are per constraint in spec-major-then-group order and use exact indicators
// at slack alpha; viol_robust is the approach's own robust evaluator and is
// empty for approaches without one. wall_seconds goes to timings.csv only,
// never into the raw reports (those must be byte-identical across reruns).
struct RunRecord {
  std::string approach;
  double noise = 0.0;
  uint64_t seed = 0;
  double test_error = 0.0;
  std::vector<std::string> constraint_names;
  std::vector<double> viol_true;
  std::vector<double> viol_noisy;
  std::vector<double> viol_robust;
  double max_viol_true = 0.0;
  double max_viol_noisy = 0.0;
  double max_viol_robust = 0.0;  // NaN when viol_robust is empty
  int best_index = 0;            // -1 for the stochastic mixture
  double beta = 0.0;
  // Winning grid point; NaN for rates the approach does not use.
  double eta_theta = 0.0;
  double eta_lambda = 0.0;
  double eta_p = 0.0;
  double eta_w = 0.0;
  double wall_seconds = 0.0;
};

// Per (approach, noise): mean/stderr of error, and of the violation of the
// constraint with the maximum mean violation (reported with its label).
struct RunSummary {
  std::string approach;
  double noise = 0.0;
  int n_seeds = 0;
  double error_mean = 0.0, error_se = 0.0;
  std::string viol_true_constraint;
  double viol_true_mean = 0.0, viol_true_se = 0.0;
  std::string viol_noisy_constraint;
  double viol_noisy_mean = 0.0, viol_noisy_se = 0.0;
  std::string viol_robust_constraint;
  double viol_robust_mean = 0.0, viol_robust_se = 0.0;  // NaN when absent
};

// One validation outcome per grid point: the selection rule picks the lowest
// error among feasible (max violation <= 0) settings, falling back to the
// smallest violation, ties broken by error then position.
struct GridOutcome {
  double val_error = 0.0;
  double val_violation = 0.0;
};
int select_grid_point(const std::vector<GridOutcome>& outcomes);

// Runs every (approach, noise, seed) job over a work queue, writes selected
// models, per-(noise, seed) noise-model files, and timings.csv into
// cfg.out_dir, and returns the records. Degenerate splits (a group with no
// relevant examples somewhere) are skipped with a stderr note.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

std::vector<RunSummary> aggregate(const std::vector<RunRecord>& records);

// raw.csv / raw.json / summary.csv / summary.json with deterministic field
// ordering and %.17g numbers; files are written atomically (temp + rename).
void emit_reports(const std::vector<RunRecord>& records,
                  const std::vector<RunSummary>& summaries,
                  const std::string& out_dir);

// Model file: a text header (dim, bias), the flat weight vector, then the
// constraint set and feature names the model was trained with.
struct SavedModel {
  ModelParams theta;
  std::vector<std::string> feature_names;
  std::vector<ConstraintSpec> specs;
};
void save_model(const std::string& path, const SavedModel& model);
SavedModel load_model(const std::string& path);

// Noise model as a labeled CSV: conditional P(G | Ghat) rows, then the noisy
// marginal; the derived quantities are recomputed on load.
void save_noise_model_csv(const std::string& path, const NoiseModel& noise,
                          const std::vector<std::string>& group_names);
struct LoadedNoiseModel {
  NoiseModel noise;
  std::vector<std::string> group_names;
};
LoadedNoiseModel load_noise_model_csv(const std::string& path);

// Offline certification of a saved model on a preprocessed table (numeric
// feature columns matching the model file, plus `label` and `group`): exact
// noisy-group violations, the TV-budget certificates they imply, and the
// soft-assignment worst case under the supplied noise model. The robust
// values are on the per-example constraint-function scale (compare by sign;
// a nonpositive value certifies the constraint for every plausible
// assignment of true groups).
struct AuditReport {
  long n = 0;
  double error = 0.0;
  std::vector<std::string> constraint_names;
  std::vector<double> noisy_violation;
  std::vector<bool> certified;
  std::vector<double> certified_bound;  // NaN where not certified
  std::vector<double> robust_violation_sa;
};
AuditReport run_audit(const std::string& model_path,
                      const std::string& data_csv,
                      const std::string& noise_model_csv);
std::string audit_to_json(const AuditReport& report);

}  // namespace fairrobust
