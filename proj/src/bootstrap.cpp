#include "bbssl/bootstrap.hpp"

#include <cmath>
#include <string>

#include "bbssl/errors.hpp"
#include "bbssl/parallel.hpp"

namespace bbssl {

namespace {

Draw solve_weighted(const Dataset& data, const SslPrior& prior, const SolverConfig& config,
                    const Eigen::VectorXd& w, std::uint64_t stream, const Eigen::VectorXd* init,
                    std::optional<double> theta_init) {
    Perturbation pert;
    pert.w = w;
    pert.mu = Eigen::VectorXd::Zero(data.p());
    pert.stream_index = stream;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(data.p());
    return bb_ssl_draw(data, prior, config, pert, init ? *init : zero, theta_init);
}

MapResult shared_init(const Dataset& data, const SslPrior& prior, const SolverConfig& config) {
    SslPrior pr = prior;
    pr.sigma2 = data.sigma2;
    pr.validate();
    auto ladder = config.ladder.empty() ? default_ladder(pr.lambda1, pr.lambda0) : config.ladder;
    return anneal_fit(data, pr, ladder, config);
}

}  // namespace

Eigen::VectorXd wlb_draw(const Dataset& data, const WeightScheme& scheme, RngStream& rng) {
    if (data.p() > data.n()) throw UnsupportedError("wlb: not applicable when p>n");
    Eigen::VectorXd w = sample_weights(scheme, data.n(), rng);
    Eigen::MatrixXd Xw = data.X.array().colwise() * w.array();
    Eigen::MatrixXd A = data.X.transpose() * Xw;
    Eigen::VectorXd b = Xw.transpose() * data.y;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw ComputationError("wlb: weighted normal equations are singular", std::int64_t(rng.stream_index()));
    return llt.solve(b);
}

Draw wbb_draw(const Dataset& data, const SslPrior& prior, const SolverConfig& config, const WeightScheme& scheme,
              PriorWeight prior_weight, RngStream& rng, const Eigen::VectorXd* init,
              std::optional<double> theta_init) {
    const int n = data.n();
    Eigen::VectorXd w;
    switch (prior_weight) {
    case PriorWeight::FixedOne:
        w = sample_weights(scheme, n, rng);
        break;
    case PriorWeight::Random:
        w = sample_weights(scheme, n, rng);
        w /= rng.exponential();
        break;
    case PriorWeight::RandomShared: {
        Eigen::VectorXd all = sample_weights(scheme, n + 1, rng);
        w = all.head(n) / all[n];
        break;
    }
    }
    return solve_weighted(data, prior, config, w, rng.stream_index(), init, theta_init);
}

Draw npl_draw(const Dataset& data, const SslPrior& prior, const NplConfig& npl, const SolverConfig& config,
              RngStream& rng, const Eigen::VectorXd* init, std::optional<double> theta_init) {
    const int n = data.n(), p = data.p();
    const int m = npl.m > 0 ? npl.m : n;
    if (npl.c < 0.0) throw ParameterError("npl: c must be non-negative");
    if (npl.prior_kind == NplConfig::PriorKind::EmpiricalJitter && m != n)
        throw ParameterError("npl: the empirical-jitter prior requires m = n");

    // (a) pseudo samples
    Eigen::MatrixXd Xs(n + m, p);
    Eigen::VectorXd ys(n + m);
    Xs.topRows(n) = data.X;
    ys.head(n) = data.y;
    if (npl.prior_kind == NplConfig::PriorKind::EmpiricalJitter) {
        Eigen::VectorXd mu = npl.jitter ? sample_laplace_jitter(prior.lambda0, p, rng) : Eigen::VectorXd::Zero(p);
        Xs.bottomRows(n) = data.X;
        ys.tail(n) = data.y + data.X * mu;
    } else {
        const double sd = std::sqrt(data.sigma2);
        for (int k = 0; k < m; ++k) {
            int i = int(rng.next_u64() % std::uint64_t(n));
            Xs.row(n + k) = data.X.row(i);
            ys[n + k] = sd * rng.normal();
        }
    }

    // (b) (w, w_tilde) ~ Dir(1,...,1, c/m,...,c/m), rescaled so the prior term has weight 1
    Eigen::VectorXd w(n + m);
    for (int i = 0; i < n; ++i) w[i] = rng.gamma(1.0);
    for (int k = 0; k < m; ++k) w[n + k] = npl.c > 0.0 ? rng.gamma(npl.c / m) : 0.0;
    w *= double(n) / w.sum();

    Dataset stacked;
    stacked.X = std::move(Xs);
    stacked.y = std::move(ys);
    stacked.sigma2 = data.sigma2;
    stacked.col_norms2 = stacked.X.colwise().squaredNorm().transpose();
    return solve_weighted(stacked, prior, config, w, rng.stream_index(), init, theta_init);
}

DrawMatrix wlb_sample(const Dataset& data, const WeightScheme& scheme, int T, std::uint64_t seed, int threads) {
    if (data.p() > data.n()) throw UnsupportedError("wlb: not applicable when p>n");
    if (T < 1) throw ParameterError("wlb: T must be >= 1");
    DrawMatrix out;
    out.method_tag = "wlb";
    out.resize(T, data.p());
    out.inclusions.setOnes();
    out.thetas.setConstant(std::nan(""));
    parallel_for(T, threads, [&](std::int64_t t) {
        RngStream rng(seed, std::uint64_t(t));
        out.betas.row(t) = wlb_draw(data, scheme, rng).transpose();
    });
    return out;
}

DrawMatrix wbb_sample(const Dataset& data, const SslPrior& prior, const WeightScheme& scheme,
                      PriorWeight prior_weight, int T, const SolverConfig& config, std::uint64_t seed,
                      int threads) {
    if (T < 1) throw ParameterError("wbb: T must be >= 1");
    MapResult init = shared_init(data, prior, config);
    DrawMatrix out;
    out.method_tag = prior_weight == PriorWeight::FixedOne ? "wbb-fixed" : "wbb-random";
    out.resize(T, data.p());
    parallel_for(T, threads, [&](std::int64_t t) {
        RngStream rng(seed, std::uint64_t(t));
        Draw d = wbb_draw(data, prior, config, scheme, prior_weight, rng, &init.beta, init.theta_hat);
        out.betas.row(t) = d.beta.transpose();
        out.inclusions.row(t) = d.inclusion.transpose();
        out.thetas[t] = d.theta;
    });
    return out;
}

DrawMatrix npl_sample(const Dataset& data, const SslPrior& prior, const NplConfig& npl, int T,
                      const SolverConfig& config, std::uint64_t seed, int threads) {
    if (T < 1) throw ParameterError("npl: T must be >= 1");
    MapResult init = shared_init(data, prior, config);
    DrawMatrix out;
    out.method_tag = "npl";
    out.resize(T, data.p());
    parallel_for(T, threads, [&](std::int64_t t) {
        RngStream rng(seed, std::uint64_t(t));
        Draw d = npl_draw(data, prior, npl, config, rng, &init.beta, init.theta_hat);
        out.betas.row(t) = d.beta.transpose();
        out.inclusions.row(t) = d.inclusion.transpose();
        out.thetas[t] = d.theta;
    });
    return out;
}

}  // namespace bbssl
