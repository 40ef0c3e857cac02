#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bbssl/dataset.hpp"
#include "bbssl/distributions.hpp"
#include "bbssl/penalty.hpp"

namespace bbssl {

struct DesignSpec {
    int n = 50;
    int p = 12;
    enum class Structure { Independent, Block, Equicorrelated };
    Structure structure = Structure::Independent;
    int block_size = 1;
    double rho = 0.0;
    bool standardize = true;
};

struct Scenario {
    std::string name;
    DesignSpec design;
    Eigen::VectorXd beta0;
    double sigma = 1.0;
    SslPrior prior;
    double alpha = 2.0;
    bool single_lambda = false;  // fit at the target lambda0 only, no annealing ladder
    bool normal_means = false;   // n replicated observations of one mean (design ignored)
    double nm_y = 1.0;
};

Eigen::MatrixXd gen_design(const DesignSpec& spec, RngStream& rng);
Eigen::VectorXd gen_response(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta0, double sigma, RngStream& rng);

// Centre columns and rescale to ||X_j|| = sqrt(n). Throws on constant columns.
void standardize_columns(Eigen::MatrixXd& X);

Scenario preset(const std::string& name);
std::vector<std::string> preset_names();

// Design from stream (seed, 0), noise from stream (seed, 1).
Dataset simulate(const Scenario& sc, std::uint64_t seed);

}  // namespace bbssl
