#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fairrobust/constraints.hpp"
#include "fairrobust/model.hpp"

namespace fairrobust {

// What a trainer is allowed to see: features, labels, and the conditioning
// group labels (the noisy proxies in every realistic path; the true groups
// only for the oracle baseline). True groups are never passed here otherwise.
struct TrainingData {
  const Eigen::MatrixXd& X;
  const std::vector<int>& labels;
  const std::vector<int>& groups;
  int n_groups = 0;

  long n() const { return static_cast<long>(labels.size()); }
};

struct TrainerConfig {
  double eta_theta = 0.01;
  double eta_lambda = 0.5;
  double eta_p = 0.01;   // adversarial-weights step
  double eta_w = 0.01;   // soft-assignment step
  int iterations = 750;
  double lambda_radius = 10.0;
  // Soft-assignment idealized-algorithm knobs.
  double tau = 1e-3;       // noise-model consistency tolerance
  double kappa = 0.0;      // inner oracle slack
  int q_inner = 10;        // inner iterations per outer step
  double r_prime = 10.0;   // multiplier radius for the consistency terms
  uint64_t seed = 0;
};

struct IterateRecord {
  ModelParams theta;            // pre-update iterate
  double objective = 0.0;
  Eigen::VectorXd surrogate_viol;  // per constraint, at the training slack
  Eigen::VectorXd eval_viol;       // per constraint, trainer's evaluator
};

struct IterateLog {
  std::vector<IterateRecord> iterates;
};

struct TrainResult {
  ModelParams theta;
  IterateLog log;
  int best_index = 0;
  double beta = 0.0;  // calibrated extra hinge slack (hinge-evaluated trainers)
};

// Constraint index layout shared by every multi-constraint trainer: one
// constraint per (spec, group) pair, index = spec_idx * n_groups + group.
inline int constraint_count(size_t n_specs, int n_groups) {
  return static_cast<int>(n_specs) * n_groups;
}

// Plain subgradient descent on the hinge objective; returns the final
// iterate. Aborts with NumericalError if the objective exceeds 1e6.
TrainResult train_unconstrained(const TrainingData& data,
                                const TrainerConfig& cfg);

// Simultaneous GDA on f(theta) + sum_c lambda_c * surrogate_violation_c with
// lambda projected onto {lambda >= 0, ||lambda||_1 <= R} after each ascent
// step. With specs empty the trajectory is bit-for-bit the unconstrained one.
// Afterwards: beta is calibrated on the logged iterates, eval_viol is the
// surrogate violation at the calibrated slack, and the best iterate is chosen
// by select_best_iterate.
TrainResult train_lagrangian(const TrainingData& data,
                             const std::vector<ConstraintSpec>& specs,
                             const TrainerConfig& cfg);

// Feasible (all eval_viol <= 0) iterate with the lowest objective; if none,
// lowest max violation, ties broken by objective then earliest index.
int select_best_iterate(const IterateLog& log);

// lambda projection used by all trainers: clip negatives, then Euclidean
// projection onto the L1 ball of the given radius.
Eigen::VectorXd project_multipliers(const Eigen::VectorXd& lambda,
                                    double radius);

void write_iterate_log_csv(const IterateLog& log, const std::string& path);

}  // namespace fairrobust
