#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "bbssl/dataset.hpp"
#include "bbssl/distributions.hpp"
#include "bbssl/penalty.hpp"
#include "bbssl/ssl_map.hpp"

namespace bbssl {

using IncMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

struct DrawMatrix {
    Eigen::MatrixXd betas;   // T x p
    IncMatrix inclusions;    // T x p
    Eigen::VectorXd thetas;  // T
    std::string method_tag;

    int T() const { return int(betas.rows()); }
    int p() const { return int(betas.cols()); }
    void resize(int T, int p);
};

struct Perturbation {
    Eigen::VectorXd w;
    Eigen::VectorXd mu;
    std::uint64_t stream_index = 0;
};

// Weights first, then jitter, both from the same stream.
Perturbation draw_perturbation(const WeightScheme& scheme, int n, int p, double lambda0, RngStream& rng);

Dataset perturb_dataset(const Dataset& data, const Perturbation& pert);

struct Draw {
    Eigen::VectorXd beta;
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1> inclusion;
    double theta = 0.0;
};

Draw bb_ssl_draw(const Dataset& data, const SslPrior& prior, const SolverConfig& config,
                 const Perturbation& pert, const Eigen::VectorXd& init,
                 std::optional<double> theta_init = std::nullopt);

DrawMatrix bb_ssl_sample(const Dataset& data, const SslPrior& prior, const WeightScheme& scheme, int T,
                         const SolverConfig& config, std::uint64_t seed, int threads = 1);

double recommended_alpha(const SslPrior& prior, double theta_hat);

}  // namespace bbssl
