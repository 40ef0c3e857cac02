#include "bbssl/bb_ssl.hpp"

#include <cmath>
#include <string>

#include "bbssl/errors.hpp"
#include "bbssl/parallel.hpp"

namespace bbssl {

void DrawMatrix::resize(int T, int p) {
    betas.setZero(T, p);
    inclusions.setZero(T, p);
    thetas.setZero(T);
}

Perturbation draw_perturbation(const WeightScheme& scheme, int n, int p, double lambda0, RngStream& rng) {
    Perturbation pert;
    pert.stream_index = rng.stream_index();
    pert.w = sample_weights(scheme, n, rng);
    pert.mu = sample_laplace_jitter(lambda0, p, rng);
    return pert;
}

Dataset perturb_dataset(const Dataset& data, const Perturbation& pert) {
    if (pert.w.size() != data.n() || pert.mu.size() != data.p())
        throw ParameterError("perturb_dataset: perturbation dimensions do not match the dataset");
    if ((pert.w.array() < 0.0).any()) throw ParameterError("perturb_dataset: negative weight");
    Eigen::ArrayXd sw = pert.w.array().sqrt();
    Dataset out;
    out.X = data.X.array().colwise() * sw;
    out.y = ((data.y - data.X * pert.mu).array() * sw).matrix();
    out.sigma2 = data.sigma2;
    out.col_norms2 = out.X.colwise().squaredNorm().transpose();
    return out;
}

Draw bb_ssl_draw(const Dataset& data, const SslPrior& prior, const SolverConfig& config,
                 const Perturbation& pert, const Eigen::VectorXd& init, std::optional<double> theta_init) {
    Dataset star = perturb_dataset(data, pert);
    MapResult fit;
    try {
        fit = map_fit(star, prior, config, init, theta_init);
    } catch (const ComputationError& e) {
        throw ComputationError(e.what(), std::int64_t(pert.stream_index), e.iteration());
    }
    Draw d;
    d.inclusion.resize(data.p());
    for (int j = 0; j < data.p(); ++j) d.inclusion[j] = fit.beta[j] != 0.0 ? 1 : 0;
    d.beta = fit.beta + pert.mu;
    d.theta = fit.theta_hat;
    return d;
}

DrawMatrix bb_ssl_sample(const Dataset& data, const SslPrior& prior, const WeightScheme& scheme, int T,
                         const SolverConfig& config, std::uint64_t seed, int threads) {
    if (T < 1) throw ParameterError("bb_ssl_sample: T must be >= 1");
    SslPrior pr = prior;
    pr.sigma2 = data.sigma2;
    pr.validate();
    std::vector<double> ladder = config.ladder.empty() ? default_ladder(pr.lambda1, pr.lambda0) : config.ladder;
    MapResult init = anneal_fit(data, pr, ladder, config);

    DrawMatrix out;
    out.method_tag = "bbssl";
    out.resize(T, data.p());
    parallel_for(T, threads, [&](std::int64_t t) {
        RngStream rng(seed, std::uint64_t(t));
        Perturbation pert = draw_perturbation(scheme, data.n(), data.p(), pr.lambda0, rng);
        Draw d = bb_ssl_draw(data, pr, config, pert, init.beta, init.theta_hat);
        out.betas.row(t) = d.beta.transpose();
        out.inclusions.row(t) = d.inclusion.transpose();
        out.thetas[t] = d.theta;
    });
    return out;
}

double recommended_alpha(const SslPrior& prior, double theta_hat) {
    if (!(theta_hat > 0.0 && theta_hat < 1.0)) throw ParameterError("recommended_alpha: theta_hat must lie in (0,1)");
    double v = 2.0 * prior.sigma2 *
               (std::log1p(-theta_hat) + std::log(prior.lambda0) - std::log(theta_hat) - std::log(prior.lambda1));
    return std::max(2.0, v);
}

}  // namespace bbssl
