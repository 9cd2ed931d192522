#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fairrobust {

// Linear classifier: score(x) = weights . x + bias; predict 1 iff score > 0.
struct ModelParams {
  Eigen::VectorXd weights;
  double bias = 0.0;

  static ModelParams zeros(int dim) {
    return {Eigen::VectorXd::Zero(dim), 0.0};
  }
};

struct Objective {
  double value = 0.0;
  Eigen::VectorXd grad_weights;
  double grad_bias = 0.0;
};

// Per-row scores. Throws ConfigError on dimension mismatch.
Eigen::VectorXd margins(const ModelParams& theta, const Eigen::MatrixXd& X);

// Mean hinge loss (1/n) sum max(0, 1 - s_i m_i), s_i = 2 y_i - 1, with its
// exact subgradient (0 on the kink).
Objective hinge_objective(const ModelParams& theta, const Eigen::MatrixXd& X,
                          const std::vector<int>& labels);

// Same, reusing precomputed margins (trainers compute margins once per
// iteration and share them across the objective and all constraints).
Objective hinge_objective_at(const Eigen::VectorXd& m, const Eigen::MatrixXd& X,
                             const std::vector<int>& labels);

struct MarginObjective {
  double value = 0.0;
  Eigen::VectorXd dmargin;  // d value / d margin_i
};

// Value and per-margin subgradient only; lets trainers fold the objective and
// all constraint gradients into a single X^T (.) product per iteration.
MarginObjective hinge_loss_parts(const Eigen::VectorXd& m,
                                 const std::vector<int>& labels);

}  // namespace fairrobust
