#include "fairrobust/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairrobust/errors.hpp"

namespace fairrobust {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline bool relevant(int label, RateKind kind) {
  return kind == RateKind::TPR ? label == 1 : label == 0;
}
}  // namespace

double population_rate(const Eigen::VectorXd& m, const std::vector<int>& labels,
                       RateKind kind, bool exact) {
  double sum = 0.0;
  long count = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (!relevant(labels[i], kind)) continue;
    ++count;
    if (exact)
      sum += m[i] > 0 ? 1.0 : 0.0;
    else
      sum += kind == RateKind::TPR ? hinge_ub_tight(m[i]) : hinge_lb_tight(m[i]);
  }
  if (count == 0) return kNaN;
  return sum / count;
}

ViolationReport group_rate_violations(const Eigen::VectorXd& m,
                                      const std::vector<int>& labels,
                                      const std::vector<int>& groups,
                                      int n_groups, const ConstraintSpec& spec,
                                      bool exact) {
  if (m.size() != static_cast<long>(labels.size()) ||
      labels.size() != groups.size())
    throw ConfigError("group_rate_violations: length mismatch");
  const double slack = exact ? spec.alpha : spec.alpha + spec.beta;
  // Group-side rate bound runs opposite to the overall-side bound so the
  // surrogate violation upper-bounds the exact one.
  std::vector<double> gsum(n_groups, 0.0);
  std::vector<long> gcount(n_groups, 0);
  double osum = 0.0;
  long ocount = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (!relevant(labels[i], spec.kind)) continue;
    int g = groups[i];
    if (g < 0 || g >= n_groups)
      throw ConfigError("group_rate_violations: group id out of range");
    double pred_exact = m[i] > 0 ? 1.0 : 0.0;
    if (exact) {
      osum += pred_exact;
      gsum[g] += pred_exact;
    } else if (spec.kind == RateKind::TPR) {
      osum += hinge_ub_tight(m[i]);
      gsum[g] += hinge_lb(m[i]);
    } else {
      osum += hinge_lb_tight(m[i]);
      gsum[g] += hinge_ub(m[i]);
    }
    ++ocount;
    ++gcount[g];
  }
  ViolationReport out;
  out.per_group = Eigen::VectorXd::Constant(n_groups, kNaN);
  double best = -std::numeric_limits<double>::infinity();
  for (int g = 0; g < n_groups; ++g) {
    if (gcount[g] == 0) {
      out.empty_groups.push_back(g);
      continue;
    }
    double grate = gsum[g] / gcount[g];
    double orate = osum / ocount;  // ocount > 0 since gcount[g] > 0
    double v = spec.kind == RateKind::TPR ? orate - grate - slack
                                          : grate - orate - slack;
    out.per_group[g] = v;
    if (v > best) {
      best = v;
      out.group_of_max = g;
    }
  }
  out.max_violation = out.group_of_max >= 0 ? best : kNaN;
  return out;
}

Eigen::VectorXd h_values(const Eigen::VectorXd& m, const std::vector<int>& labels,
                         const ConstraintSpec& spec, bool exact) {
  const double slack = exact ? spec.alpha : spec.alpha + spec.beta;
  const double overall = population_rate(m, labels, spec.kind, exact);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(m.size());
  if (std::isnan(overall)) return h;  // no relevant examples: h vanishes
  for (int i = 0; i < m.size(); ++i) {
    if (!relevant(labels[i], spec.kind)) continue;
    if (spec.kind == RateKind::TPR) {
      double pred = exact ? (m[i] > 0 ? 1.0 : 0.0) : hinge_lb(m[i]);
      h[i] = 0.5 * (-pred - (slack - overall));
    } else {
      double pred = exact ? (m[i] > 0 ? 1.0 : 0.0) : hinge_ub(m[i]);
      h[i] = 0.5 * (pred - (slack + overall));
    }
  }
  return h;
}

Eigen::VectorXd weighted_h_margin_grad(const Eigen::VectorXd& m,
                                       const std::vector<int>& labels,
                                       const ConstraintSpec& spec,
                                       const Eigen::VectorXd& weights) {
  const int n = static_cast<int>(m.size());
  long n_rel = 0;
  double wsum_rel = 0.0;
  for (int i = 0; i < n; ++i)
    if (relevant(labels[i], spec.kind)) {
      ++n_rel;
      wsum_rel += weights[i];
    }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  if (n_rel == 0) return g;
  for (int i = 0; i < n; ++i) {
    if (!relevant(labels[i], spec.kind)) continue;
    if (spec.kind == RateKind::TPR)
      g[i] = 0.5 * (-weights[i] * hinge_lb_grad(m[i]) +
                    wsum_rel * hinge_ub_tight_grad(m[i]) / n_rel);
    else
      g[i] = 0.5 * (weights[i] * hinge_ub_grad(m[i]) -
                    wsum_rel * hinge_lb_tight_grad(m[i]) / n_rel);
  }
  return g;
}

Eigen::VectorXd violation_margin_grad(const Eigen::VectorXd& m,
                                      const std::vector<int>& labels,
                                      const std::vector<int>& groups,
                                      const ConstraintSpec& spec, int group) {
  const int n = static_cast<int>(m.size());
  long n_rel = 0, n_grp = 0;
  for (int i = 0; i < n; ++i)
    if (relevant(labels[i], spec.kind)) {
      ++n_rel;
      if (groups[i] == group) ++n_grp;
    }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  if (n_rel == 0 || n_grp == 0) return g;
  for (int i = 0; i < n; ++i) {
    if (!relevant(labels[i], spec.kind)) continue;
    bool in_group = groups[i] == group;
    if (spec.kind == RateKind::TPR) {
      g[i] = hinge_ub_tight_grad(m[i]) / n_rel;
      if (in_group) g[i] -= hinge_lb_grad(m[i]) / n_grp;
    } else {
      g[i] = -hinge_lb_tight_grad(m[i]) / n_rel;
      if (in_group) g[i] += hinge_ub_grad(m[i]) / n_grp;
    }
  }
  return g;
}

CertifiedBounds certified_bounds(const ViolationReport& noisy_report,
                                 const Eigen::VectorXd& gamma) {
  const int m = static_cast<int>(noisy_report.per_group.size());
  if (gamma.size() != m)
    throw ConfigError("certified_bounds: gamma length mismatch");
  CertifiedBounds out;
  out.bound = noisy_report.per_group + gamma;
  out.certified.resize(m);
  for (int j = 0; j < m; ++j)
    out.certified[j] = !std::isnan(noisy_report.per_group[j]) &&
                       noisy_report.per_group[j] <= 0.0;
  return out;
}

double calibrate_beta(const std::vector<double>& per_iterate_max_viol) {
  double need = std::numeric_limits<double>::infinity();
  for (double v : per_iterate_max_viol) need = std::min(need, v);
  for (int k = 0; k <= 10; ++k) {
    double beta = 0.005 * k;
    if (need <= beta + 1e-12) return beta;
  }
  return 0.05;
}

}  // namespace fairrobust
