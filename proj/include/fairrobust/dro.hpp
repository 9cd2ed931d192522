#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fairrobust/constraints.hpp"
#include "fairrobust/trainers.hpp"

namespace fairrobust {

// Exact maximum of sum_i p_i h_i over {p >= 0, sum p = 1,
// 0.5*||p - p_hat||_1 <= gamma}: move min(gamma, 1 - p_hat[argmax h]) of mass
// from the lowest-h support of p_hat onto the single best index.
double max_over_tv_ball(const Eigen::VectorXd& h, const Eigen::VectorXd& p_hat,
                        double gamma);

// Per-group worst case of the mean-h constraint over the TV ball around the
// uniform distribution on that group's rows, using exact-indicator h. This is
// the evaluator behind robust-constraint reports and best-iterate selection.
ViolationReport worst_case_violation(const Eigen::VectorXd& margins,
                                     const std::vector<int>& labels,
                                     const std::vector<int>& groups,
                                     int n_groups,
                                     const Eigen::VectorXd& gamma,
                                     const ConstraintSpec& spec);

struct DroEval {
  double value = 0.0;
  Eigen::VectorXd dmargin;          // d value / d margin_i (surrogate h)
  Eigen::VectorXd f;                // per-constraint adversarial values
  std::vector<Eigen::VectorXd> dp;  // d value / d p_c = lambda_c * h_spec
};

// Lagrangian f(theta) + sum_c lambda_c * (p_c . h_spec(c)) over per-constraint
// adversarial weight vectors p_c (surrogate h; gradients for all three
// players). Constraint index layout: spec-major, then group.
DroEval dro_lagrangian(const Eigen::VectorXd& margins, const TrainingData& data,
                       const std::vector<ConstraintSpec>& specs,
                       const Eigen::VectorXd& lambda,
                       const std::vector<Eigen::VectorXd>& p_tilde);

struct DroTrainResult : TrainResult {
  std::vector<Eigen::VectorXd> p_final;  // adversarial weights at the end
  int projection_warnings = 0;           // TV projections that hit the cap
};

// Projected GDA: theta descends, lambda ascends on the adversarial values,
// each p_c ascends along h and is projected back onto its TV ball; all three
// players step from the iteration-t state. Iterates are scored by the exact
// worst-case evaluator above and the best one is returned.
DroTrainResult train_dro(const TrainingData& data, const Eigen::VectorXd& gamma,
                         const std::vector<ConstraintSpec>& specs,
                         const TrainerConfig& cfg);

}  // namespace fairrobust
