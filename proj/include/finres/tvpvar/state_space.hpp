#pragma once

#include <vector>

#include <Eigen/Dense>

#include "finres/rng.hpp"

namespace finres::tvpvar {

/// Linear-Gaussian model with random-walk states:
///   y_t = Z_t x_t + v_t,        v_t ~ N(0, H_t)
///   x_{t+1} = x_t + u_t,        u_t ~ N(0, diag(q))
///   x_0 ~ N(a0, P0)
struct RandomWalkStateModel {
  std::vector<Eigen::VectorXd> observations;
  std::vector<Eigen::MatrixXd> designs;
  std::vector<Eigen::MatrixXd> observation_covs;
  Eigen::VectorXd state_variances;
  Eigen::VectorXd initial_mean;
  Eigen::MatrixXd initial_cov;
};

/// Forward-filtering backward-sampling (Carter–Kohn). Returns the sampled
/// path, one row per period. Throws NumericalError if a covariance cannot be
/// factorized even after jitter.
Eigen::MatrixXd SampleRandomWalkStates(const RandomWalkStateModel& model, Rng& rng);

}  // namespace finres::tvpvar
