#pragma once

#include <array>

#include <Eigen/Dense>

#include "bbssl/dataset.hpp"
#include "bbssl/distributions.hpp"
#include "bbssl/penalty.hpp"

namespace bbssl {

// y = beta + eps / sqrt(n), eps ~ N(0,1). n may be fractional (effective sample size).
struct SequenceModel {
    double n = 1.0;
    double y = 0.0;
    SslPrior prior;  // theta must be Fixed
};

// Posterior of beta: four orthant-truncated Gaussians with common variance 1/n.
// Components 0,1 live on [0,inf) (slab, spike); 2,3 on (-inf,0] (slab, spike).
class OrthantMixture {
public:
    struct Component {
        double log_weight;  // normalised
        double mean;
        bool nonnegative;
    };

    OrthantMixture(const SequenceModel& model);

    double density(double beta) const;
    double log_density(double beta) const;
    double cdf(double beta) const;
    double quantile(double q) const;
    double sample(RngStream& rng) const;

    double variance() const { return var_; }
    double log_normalizer() const { return log_z_; }
    const std::array<Component, 4>& components() const { return comp_; }
    // mass of the slab (gamma = 1) pieces
    double slab_weight() const;

private:
    SequenceModel model_;
    double var_;
    double log_z_;
    std::array<Component, 4> comp_;
};

OrthantMixture exact_posterior(const SequenceModel& model);

double closed_form_wbb(const SequenceModel& model, double w);
double closed_form_bbssl(const SequenceModel& model, double w, double mu);

// 1-row regression equivalent of the sequence model: X = [sqrt(n)], y = [sqrt(n) y], sigma2 = 1.
Dataset sequence_dataset(const SequenceModel& model);

// n observations of a single mean: Y_i = y + e_i, X = 1, sigma2 = 1, with e a fixed
// normal-scores residual (mean 0, ||e||^2 = n). Its posterior is exact_posterior({n, y}).
Dataset replicated_mean_dataset(int n, double y);

}  // namespace bbssl
