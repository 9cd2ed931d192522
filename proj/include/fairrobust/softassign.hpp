#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fairrobust/constraints.hpp"
#include "fairrobust/dataset.hpp"
#include "fairrobust/trainers.hpp"

namespace fairrobust {

// A soft assignment w maps (true group i, predicted label yhat, outcome y,
// noisy group k) to a probability that an example in cell (yhat, y, k)
// belongs to true group i. Flat layout: index (k*4 + cell)*m + i with
// cell = yhat*2 + y, so each (cell, k) simplex block is contiguous.
inline int w_index(int i, int cell, int k, int m) {
  return (k * 4 + cell) * m + i;
}
inline int w_size(int m, int m_hat) { return m * 4 * m_hat; }

// Empirical cell decomposition at a fixed model: exact-indicator predictions
// bucket every example into (yhat, y) cells within its noisy group.
struct CellTable {
  Eigen::MatrixXd p_cell;    // m_hat x 4: P(cell | noisy group k)
  std::vector<int> cell_of;  // per example
  std::vector<int> count_k;  // per noisy group
};
CellTable make_cell_table(const Eigen::VectorXd& margins,
                          const std::vector<int>& labels,
                          const std::vector<int>& noisy_groups, int m_hat);

// Equality system tying cell-conditional soft assignments to the noise
// model's group-given-noisy-group column: per (j, k) a total-probability row,
// then one row per (cell, k) simplex.
struct WPolytope {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd p_cell;  // m_hat x 4, kept for reports
  int m = 0;
  int m_hat = 0;
};
WPolytope build_w_polytope(const Eigen::VectorXd& margins,
                           const TrainingData& data, const NoiseModel& noise);

struct SAViolation {
  double value = 0.0;
  Eigen::VectorXd w;  // an argmax assignment, flat layout
};

// Worst-case constraint value for one (rate, true group) pair over the
// assignment polytope, solved as a linear program. Exact-indicator h for
// evaluation; surrogate h while training.
SAViolation max_violation_sa(const Eigen::VectorXd& margins,
                             const TrainingData& data, const NoiseModel& noise,
                             const ConstraintSpec& spec, int group, bool exact);

// Alternating loop: one LP maximizes the multiplier-weighted constraints over
// the shared assignment, theta takes a gradient step holding that assignment
// fixed, and the multipliers ascend on the constraint values at the updated
// theta. Iterates are scored with the exact per-group LP evaluator.
TrainResult train_practical(const TrainingData& data, const NoiseModel& noise,
                            const std::vector<ConstraintSpec>& specs,
                            const TrainerConfig& cfg);

struct StochasticClassifier {
  std::vector<ModelParams> models;  // uniform mixture
};

double evaluate_stochastic(const StochasticClassifier& sc,
                           const std::function<double(const ModelParams&)>& metric);

struct IdealTrainResult {
  StochasticClassifier classifier;
  IterateLog log;  // per outer iteration: mixture objective / violations
};

// Oracle-based outer loop at enumeration scale: each outer iteration runs an
// inner best response (joint enumeration over the grid with closed-form
// multipliers for the relaxed total-probability rows, plus projected ascent
// on the per-constraint assignments), then ascends the outer multipliers on
// exact expected violations. Returns the uniform mixture over all inner
// iterates. Exact-indicator h throughout.
IdealTrainResult train_ideal(const TrainingData& data, const NoiseModel& noise,
                             const std::vector<ConstraintSpec>& specs,
                             const TrainerConfig& cfg,
                             const std::vector<ModelParams>& theta_grid);

}  // namespace fairrobust
