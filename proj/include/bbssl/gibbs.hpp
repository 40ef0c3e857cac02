#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "bbssl/bb_ssl.hpp"

namespace bbssl {

struct GibbsState {
    Eigen::VectorXd beta;
    Eigen::VectorXd tau2;  // prior precisions: beta_j | tau ~ N(0, 1/tau2_j)
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1> gamma;
    double theta = 0.5;
    Eigen::VectorXd residual;  // one-site sampler only
};

struct GibbsConfig {
    int T = 1000;
    int burn_in = 0;
    int thin = 1;
    enum class Backend { Direct, WoodburyDirect, FastLinearSolver, OneSite };
    Backend backend = Backend::FastLinearSolver;
    std::optional<Eigen::VectorXd> init;  // nullopt: start at zero
};

// final_state, when given, receives the sampler state after iteration T.
DrawMatrix ssvs_run(const Dataset& data, const SslPrior& prior, const GibbsConfig& config, std::uint64_t seed,
                    GibbsState* final_state = nullptr);
DrawMatrix gibbs2_run(const Dataset& data, const SslPrior& prior, const GibbsConfig& config, std::uint64_t seed,
                      GibbsState* final_state = nullptr);

// Dispatches on config.backend.
DrawMatrix gibbs_run(const Dataset& data, const SslPrior& prior, const GibbsConfig& config, std::uint64_t seed,
                     GibbsState* final_state = nullptr);

// log Phi(x), accurate far into the lower tail
double log_normal_cdf(double x);

}  // namespace bbssl
