#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bbssl/dataset.hpp"
#include "bbssl/penalty.hpp"

namespace bbssl {

struct SolverConfig {
    int max_iter = 500;
    double tol = 1e-6;
    int theta_update_every = 10;
    std::vector<double> ladder;  // empty: 50 equispaced values from lambda1 to lambda0
    enum class SweepOrder { ActiveFirst, Natural };
    SweepOrder sweep_order = SweepOrder::ActiveFirst;
};

struct MapResult {
    Eigen::VectorXd beta;
    std::vector<int> active_set;
    double theta_hat = 0.0;
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;
};

// Equispaced ladder lambda1 .. lambda0 (inclusive); {lambda0} if they coincide.
std::vector<double> default_ladder(double lambda1, double lambda0, int length = 50);

// One coordinate: the global maximiser of
//   -(s/(2 sigma2)) (b - z/s)^2 + rho(b | theta)
// which is the thresholded fixed point of the implicit update. z = X_j'(partial residual).
// beta_current is accepted for interface symmetry; the result does not depend on it.
double coordinate_update(double z, double beta_current, double col_norm2, double theta,
                         const SslPrior& prior);

// log-posterior used by the solver: -||y - X b||^2/(2 sigma2) + sum_j log pi(b_j | theta)
double map_objective(const Dataset& data, const SslPrior& prior, const Eigen::VectorXd& beta,
                     double theta);

double theta_update(const Eigen::VectorXd& beta, const SslPrior& prior, double theta_prev);

// The dataset's sigma2 governs the likelihood; prior.sigma2 is overridden by it.
MapResult map_fit(const Dataset& data, const SslPrior& prior, const SolverConfig& config,
                  const Eigen::VectorXd& init, std::optional<double> theta_init = std::nullopt);
MapResult map_fit(const Dataset& data, const SslPrior& prior, const SolverConfig& config);

MapResult anneal_fit(const Dataset& data, const SslPrior& prior, const std::vector<double>& ladder,
                     const SolverConfig& config);

}  // namespace bbssl
