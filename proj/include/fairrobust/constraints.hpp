#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace fairrobust {

enum class RateKind { TPR, FPR };

struct ConstraintSpec {
  RateKind kind = RateKind::TPR;
  double alpha = 0.05;
  // Extra slack added to alpha in surrogate (hinge) mode only; calibrated
  // after training so that the hinge-relaxed constraints hold on train.
  double beta = 0.0;
};

struct ViolationReport {
  Eigen::VectorXd per_group;      // NaN for groups with no relevant examples
  double max_violation = 0.0;     // max over non-NaN entries
  int group_of_max = -1;
  std::vector<int> empty_groups;  // groups whose rate was undefined
};

// Hinge bounds of I(margin > 0) used in surrogate (training) mode. Two
// variants per side, chosen by role:
//
// The unclipped pair backs the per-example terms a constraint actively drags
// across the decision boundary (a group rate, or a reweighted h). A bound
// confined to [0, 1] is flat on the entire wrong side of the boundary — any
// lower bound of the indicator must be 0 for all m <= 0 — which starves the
// constraint player of gradients exactly where the violating examples sit.
// The unclipped forms keep a unit slope through the whole active region and
// still bracket the indicator pointwise.
inline double hinge_ub(double m) { return std::max(0.0, 1.0 + m); }
inline double hinge_ub_grad(double m) { return m > -1.0 ? 1.0 : 0.0; }
inline double hinge_lb(double m) { return std::min(m, 1.0); }
inline double hinge_lb_grad(double m) { return m < 1.0 ? 1.0 : 0.0; }

// The tight pair backs the population-rate offsets inside a violation. Those
// enter through every example of a label class, so an unclipped bound would
// inflate the surrogate by roughly the mean margin — no iterate could ever
// look hinge-feasible and the extra-slack calibration below would saturate by
// construction. Clipping to [0, 1] keeps the offset exact wherever margins
// are solid and wrong only on the |m| < 1 band.
inline double hinge_ub_tight(double m) { return std::clamp(1.0 + m, 0.0, 1.0); }
inline double hinge_ub_tight_grad(double m) {
  return (m > -1.0 && m < 0.0) ? 1.0 : 0.0;
}
inline double hinge_lb_tight(double m) { return std::clamp(m, 0.0, 1.0); }
inline double hinge_lb_tight_grad(double m) {
  return (m > 0.0 && m < 1.0) ? 1.0 : 0.0;
}

// Overall positive rate of the relevant class. exact: mean of I(m_i > 0) over
// Y=1 (TPR) or Y=0 (FPR). Surrogate mode returns the bound whose direction
// makes downstream violation values upper bounds of the exact ones: an upper
// bound for TPR (it enters violations positively) and a lower bound for FPR.
double population_rate(const Eigen::VectorXd& margins,
                       const std::vector<int>& labels, RateKind kind,
                       bool exact);

// Per-group constraint values. TPR: overall TPR - group TPR - slack.
// FPR: group FPR - overall FPR - slack. Exact mode uses I(margin > 0) and
// slack alpha; surrogate mode uses the hinge bounds (upper bound on every
// exact value) and slack alpha + beta.
ViolationReport group_rate_violations(const Eigen::VectorXd& margins,
                                      const std::vector<int>& labels,
                                      const std::vector<int>& groups,
                                      int n_groups, const ConstraintSpec& spec,
                                      bool exact);

// Per-example h with E_w[h] reproducing the group constraint when w is a
// (possibly fractional) group membership weighting:
//   TPR: h_i = 1/2 (-I(Yhat=1, Y=1) - I(Y=1) (slack - overall TPR))
//   FPR: h_i = 1/2 ( I(Yhat=1, Y=0) - I(Y=0) (slack + overall FPR))
// so that sum_i p_i h_i <= 0  <=>  the group rate constraint holds under the
// distribution/weighting p. Surrogate mode bounds each piece from the side
// that keeps h an upper bound, and uses slack alpha + beta.
Eigen::VectorXd h_values(const Eigen::VectorXd& margins,
                         const std::vector<int>& labels,
                         const ConstraintSpec& spec, bool exact);

// The adversarial-reweighting and soft-assignment formulations share one h
// formula; both names are kept for call-site clarity.
inline Eigen::VectorXd h_values_dro(const Eigen::VectorXd& margins,
                                    const std::vector<int>& labels,
                                    const ConstraintSpec& spec, bool exact) {
  return h_values(margins, labels, spec, exact);
}
inline Eigen::VectorXd h_values_sa(const Eigen::VectorXd& margins,
                                   const std::vector<int>& labels,
                                   const ConstraintSpec& spec, bool exact) {
  return h_values(margins, labels, spec, exact);
}

// Gradient of sum_i weights_i h_i with respect to each margin (surrogate h).
// Serves both weighting schemes: adversarial per-group distributions and
// soft group-assignment weights.
Eigen::VectorXd weighted_h_margin_grad(const Eigen::VectorXd& margins,
                                       const std::vector<int>& labels,
                                       const ConstraintSpec& spec,
                                       const Eigen::VectorXd& weights);

// Gradient of the surrogate group_rate_violations value for one group with
// respect to each margin.
Eigen::VectorXd violation_margin_grad(const Eigen::VectorXd& margins,
                                      const std::vector<int>& labels,
                                      const std::vector<int>& groups,
                                      const ConstraintSpec& spec, int group);

struct CertifiedBounds {
  Eigen::VectorXd bound;        // noisy value + gamma where certified
  std::vector<bool> certified;  // false where the noisy value is positive
};

// Upper bounds on the true-group violations implied by noisy-group violations
// g_hat_j <= 0 together with a total-variation budget gamma_j between the
// true and noisy within-group feature/label distributions.
CertifiedBounds certified_bounds(const ViolationReport& noisy_report,
                                 const Eigen::VectorXd& gamma);

// Smallest beta in {0, 0.005, ..., 0.05} such that some logged iterate's
// surrogate violations (computed at beta = 0) all drop to <= 0 once beta is
// granted; returns 0.05 (the cap) if none qualifies.
double calibrate_beta(const std::vector<double>& per_iterate_max_surrogate_viol);

}  // namespace fairrobust
