#include "fairrobust/dro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fairrobust/errors.hpp"
#include "fairrobust/lp.hpp"
#include "fairrobust/model.hpp"

namespace fairrobust {

double max_over_tv_ball(const Eigen::VectorXd& h, const Eigen::VectorXd& p_hat,
                        double gamma) {
  const int n = static_cast<int>(h.size());
  if (p_hat.size() != n) throw ConfigError("max_over_tv_ball: size mismatch");
  double value = p_hat.dot(h);
  if (gamma <= 0.0 || n == 0) return value;

  int i_star = 0;
  h.maxCoeff(&i_star);
  const double delta = std::min(gamma, 1.0 - p_hat[i_star]);
  if (delta <= 0.0) return value;
  value += delta * h[i_star];

  // Drain the added mass from the cheapest (lowest-h) support entries.
  std::vector<int> support;
  support.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (i != i_star && p_hat[i] > 0.0) support.push_back(i);
  }
  std::sort(support.begin(), support.end(),
            [&](int a, int b) { return h[a] < h[b]; });
  double rem = delta;
  for (int i : support) {
    const double take = std::min(rem, p_hat[i]);
    value -= take * h[i];
    rem -= take;
    if (rem <= 1e-15) break;
  }
  return value;
}

ViolationReport worst_case_violation(const Eigen::VectorXd& margins,
                                     const std::vector<int>& labels,
                                     const std::vector<int>& groups,
                                     int n_groups,
                                     const Eigen::VectorXd& gamma,
                                     const ConstraintSpec& spec) {
  const int n = static_cast<int>(margins.size());
  if (gamma.size() != n_groups)
    throw ConfigError("worst_case_violation: gamma size != group count");
  const Eigen::VectorXd h = h_values(margins, labels, spec, /*exact=*/true);

  ViolationReport report;
  report.per_group = Eigen::VectorXd::Constant(
      n_groups, std::numeric_limits<double>::quiet_NaN());
  std::vector<int> counts(n_groups, 0);
  for (int i = 0; i < n; ++i) ++counts[groups[i]];

  Eigen::VectorXd p_hat(n);
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_groups; ++j) {
    if (counts[j] == 0) {
      report.empty_groups.push_back(j);
      continue;
    }
    p_hat.setZero();
    const double mass = 1.0 / counts[j];
    for (int i = 0; i < n; ++i) {
      if (groups[i] == j) p_hat[i] = mass;
    }
    report.per_group[j] = max_over_tv_ball(h, p_hat, gamma[j]);
    if (report.per_group[j] > best) {
      best = report.per_group[j];
      report.group_of_max = j;
    }
  }
  report.max_violation = report.group_of_max >= 0
                             ? best
                             : std::numeric_limits<double>::quiet_NaN();
  return report;
}

DroEval dro_lagrangian(const Eigen::VectorXd& margins, const TrainingData& data,
                       const std::vector<ConstraintSpec>& specs,
                       const Eigen::VectorXd& lambda,
                       const std::vector<Eigen::VectorXd>& p_tilde) {
  const int n = static_cast<int>(margins.size());
  const int n_constraints = constraint_count(specs.size(), data.n_groups);
  if (lambda.size() != n_constraints)
    throw ConfigError("dro_lagrangian: lambda size mismatch");
  if (static_cast<int>(p_tilde.size()) != n_constraints)
    throw ConfigError("dro_lagrangian: p_tilde count mismatch");

  DroEval ev;
  const MarginObjective obj = hinge_loss_parts(margins, data.labels);
  ev.value = obj.value;
  ev.dmargin = obj.dmargin;
  ev.f.resize(n_constraints);
  ev.dp.resize(n_constraints);
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const Eigen::VectorXd h =
        h_values(margins, data.labels, specs[s], /*exact=*/false);
    for (int j = 0; j < data.n_groups; ++j) {
      const int c = static_cast<int>(s) * data.n_groups + j;
      if (p_tilde[c].size() != n)
        throw ConfigError("dro_lagrangian: p_tilde size mismatch");
      ev.f[c] = p_tilde[c].dot(h);
      ev.value += lambda[c] * ev.f[c];
      ev.dp[c] = lambda[c] * h;
      if (lambda[c] != 0.0)
        ev.dmargin +=
            lambda[c] *
            weighted_h_margin_grad(margins, data.labels, specs[s], p_tilde[c]);
    }
  }
  return ev;
}

DroTrainResult train_dro(const TrainingData& data, const Eigen::VectorXd& gamma,
                         const std::vector<ConstraintSpec>& specs,
                         const TrainerConfig& cfg) {
  const int n = data.n();
  const int dim = static_cast<int>(data.X.cols());
  const int m = data.n_groups;
  const int n_specs = static_cast<int>(specs.size());
  const int n_constraints = constraint_count(specs.size(), m);
  if (gamma.size() != m) throw ConfigError("train_dro: gamma size mismatch");
  if (n_specs == 0) throw ConfigError("train_dro: no constraints given");

  std::vector<int> counts(m, 0);
  for (int g : data.groups) ++counts[g];
  for (int j = 0; j < m; ++j) {
    if (counts[j] == 0) throw ConfigError("train_dro: empty group");
  }

  std::vector<Eigen::VectorXd> p_hat(m, Eigen::VectorXd::Zero(n));
  for (int j = 0; j < m; ++j) {
    const double mass = 1.0 / counts[j];
    for (int i = 0; i < n; ++i) {
      if (data.groups[i] == j) p_hat[j][i] = mass;
    }
  }

  DroTrainResult result;
  ModelParams theta = ModelParams::zeros(dim);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n_constraints);
  std::vector<Eigen::VectorXd> p(n_constraints);
  for (int s = 0; s < n_specs; ++s) {
    for (int j = 0; j < m; ++j) p[s * m + j] = p_hat[j];
  }

  result.log.iterates.reserve(cfg.iterations);
  std::vector<Eigen::VectorXd> h_sur(n_specs);
  for (int t = 0; t < cfg.iterations; ++t) {
    const Eigen::VectorXd m_vec = margins(theta, data.X);
    const MarginObjective obj = hinge_loss_parts(m_vec, data.labels);
    if (!std::isfinite(obj.value) || obj.value > 1e6)
      throw NumericalError("train_dro: objective diverged");

    IterateRecord rec;
    rec.theta = theta;
    rec.objective = obj.value;
    rec.surrogate_viol.resize(n_constraints);
    rec.eval_viol.resize(n_constraints);
    Eigen::VectorXd lambda_step(n_constraints);
    for (int s = 0; s < n_specs; ++s) {
      h_sur[s] = h_values(m_vec, data.labels, specs[s], /*exact=*/false);
      // The multiplier ascent reads the adversarial value of the exact
      // indicator h at the current weights; the surrogate is only for the
      // theta gradient, where differentiability matters.
      const Eigen::VectorXd h_ex =
          h_values(m_vec, data.labels, specs[s], /*exact=*/true);
      for (int j = 0; j < m; ++j) {
        rec.surrogate_viol[s * m + j] = p[s * m + j].dot(h_sur[s]);
        lambda_step[s * m + j] = p[s * m + j].dot(h_ex);
      }
      const ViolationReport wc = worst_case_violation(
          m_vec, data.labels, data.groups, m, gamma, specs[s]);
      for (int j = 0; j < m; ++j) rec.eval_viol[s * m + j] = wc.per_group[j];
    }

    Eigen::VectorXd dm = obj.dmargin;
    for (int s = 0; s < n_specs; ++s) {
      for (int j = 0; j < m; ++j) {
        const int c = s * m + j;
        if (lambda[c] != 0.0)
          dm += lambda[c] * weighted_h_margin_grad(m_vec, data.labels, specs[s],
                                                   p[c]);
      }
    }

    // All three players step from the iteration-t state, so the p step must
    // read the multipliers before they move.
    theta.weights -= cfg.eta_theta * (data.X.transpose() * dm);
    theta.bias -= cfg.eta_theta * dm.sum();
    for (int s = 0; s < n_specs; ++s) {
      for (int j = 0; j < m; ++j) {
        const int c = s * m + j;
        if (lambda[c] == 0.0) continue;
        const Eigen::VectorXd moved = p[c] + cfg.eta_p * lambda[c] * h_sur[s];
        TVProjection proj = project_tv_ball(moved, p_hat[j], gamma[j]);
        p[c] = std::move(proj.x);
        if (proj.hit_sweep_cap) ++result.projection_warnings;
      }
    }
    lambda += cfg.eta_lambda * lambda_step;
    lambda = project_multipliers(lambda, cfg.lambda_radius);
    result.log.iterates.push_back(std::move(rec));
  }

  result.best_index = select_best_iterate(result.log);
  result.theta = result.log.iterates[result.best_index].theta;
  result.beta = 0.0;
  result.p_final = std::move(p);
  return result;
}

}  // namespace fairrobust
