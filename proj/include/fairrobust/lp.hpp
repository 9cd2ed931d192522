#pragma once

#include <Eigen/Dense>

namespace fairrobust {

// maximize c·x  subject to  A x = b,  0 <= x <= upper (upper optional).
struct LinearProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd upper;  // empty => no upper bounds; +inf entries allowed
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
  // Equality-constraint duals of the solved system (original rows only),
  // reconstructed from the final basis; used for optimality checks.
  Eigen::VectorXd duals;
  int iterations = 0;
};

// Dense two-phase simplex with Bland's anti-cycling rule (pivot tol 1e-9).
LPSolution solve_lp(const LinearProgram& lp);

// Euclidean projection onto {x >= 0, sum x = 1} (sorted-threshold method).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

// Euclidean projection onto {x : ||x - center||_1 <= radius} (soft-threshold).
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& v,
                                const Eigen::VectorXd& center, double radius);

struct TVProjection {
  Eigen::VectorXd x;
  bool hit_sweep_cap = false;
  int sweeps = 0;
};

// Euclidean projection onto {x >= 0, sum x = 1, ||x - p_hat||_1 <= 2*gamma}
// by Dykstra's alternating projections (cap 500 sweeps, stop when the iterate
// moves < 1e-10 between sweeps). gamma=0 returns p_hat; gamma>=1 reduces to
// project_simplex since no two points of the simplex are further than 2 apart
// in L1.
TVProjection project_tv_ball(const Eigen::VectorXd& v,
                             const Eigen::VectorXd& p_hat, double gamma);

}  // namespace fairrobust
