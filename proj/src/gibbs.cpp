#include "bbssl/gibbs.hpp"

#include <cmath>
#include <string>

#include "bbssl/errors.hpp"

namespace bbssl {

double log_normal_cdf(double x) {
    if (x > -20.0) return std::log(0.5 * std::erfc(-x / std::sqrt(2.0)));
    // Mills ratio series for the far tail
    double x2 = x * x;
    double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2) + 105.0 / (x2 * x2 * x2 * x2);
    return -0.5 * x2 - 0.5 * std::log(2.0 * M_PI) - std::log(-x) + std::log(series);
}

namespace {

void check_config(const Dataset& data, const SslPrior& prior, const GibbsConfig& cfg) {
    prior.validate();
    if (cfg.T < 1) throw ParameterError("gibbs: T must be >= 1");
    if (cfg.burn_in < 0 || cfg.burn_in >= cfg.T) throw ParameterError("gibbs: need 0 <= burn_in < T");
    if (cfg.thin < 1) throw ParameterError("gibbs: thin must be >= 1");
    if (cfg.init && cfg.init->size() != data.p()) throw ParameterError("gibbs: init has the wrong length");
}

int kept_rows(const GibbsConfig& cfg) { return (cfg.T - cfg.burn_in) / cfg.thin; }

// 1-based iteration t is stored at row (t - B)/thin - 1 when (t - B) % thin == 0
int row_for(const GibbsConfig& cfg, int t) {
    if (t <= cfg.burn_in || (t - cfg.burn_in) % cfg.thin != 0) return -1;
    int r = (t - cfg.burn_in) / cfg.thin - 1;
    return r < kept_rows(cfg) ? r : -1;
}

inline double sample_theta(const SslPrior& prior, double n_on, int p, RngStream& rng) {
    return rng.beta(n_on + prior.theta.a, double(p) - n_on + prior.theta.b);
}

double log_add(double a, double b) {
    double m = std::max(a, b);
    if (m == -INFINITY) return m;
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

DrawMatrix ssvs_run(const Dataset& data, const SslPrior& prior_in, const GibbsConfig& cfg, std::uint64_t seed,
                    GibbsState* final_state) {
    SslPrior prior = prior_in;
    prior.sigma2 = data.sigma2;
    check_config(data, prior, cfg);
    const int n = data.n(), p = data.p();
    const double sigma = std::sqrt(data.sigma2);
    RngStream rng(seed, 0);

    const Eigen::MatrixXd Phi = data.X / sigma;
    const Eigen::VectorXd alpha = data.y / sigma;
    Eigen::MatrixXd PtP;
    Eigen::VectorXd Pta = Phi.transpose() * alpha;
    if (cfg.backend == GibbsConfig::Backend::Direct) PtP = Phi.transpose() * Phi;

    GibbsState st;
    st.beta = cfg.init ? *cfg.init : Eigen::VectorXd::Zero(p);
    st.gamma.resize(p);
    st.tau2.resize(p);
    st.theta = prior.initial_theta();
    for (int j = 0; j < p; ++j) {
        st.gamma[j] = st.beta[j] != 0.0 ? 1 : 0;
        double lam = st.gamma[j] ? prior.lambda1 : prior.lambda0;
        st.tau2[j] = 0.5 * lam * lam;
    }

    DrawMatrix out;
    out.method_tag = cfg.backend == GibbsConfig::Backend::FastLinearSolver ? "ssvs-fast" : "ssvs";
    out.resize(kept_rows(cfg), p);

    const double log_l1 = std::log(prior.lambda1), log_l0 = std::log(prior.lambda0);
    Eigen::VectorXd z(p), u(p), d(p), v(n), delta(n), wv(n);
    Eigen::MatrixXd M, PhiD;
    for (int t = 1; t <= cfg.T; ++t) {
        // (a) beta | tau
        switch (cfg.backend) {
        case GibbsConfig::Backend::Direct: {
            Eigen::MatrixXd Q = PtP;
            Q.diagonal() += st.tau2;
            Eigen::LLT<Eigen::MatrixXd> llt(Q);
            if (llt.info() != Eigen::Success) throw ComputationError("ssvs: Cholesky failed", -1, t);
            for (int j = 0; j < p; ++j) z[j] = rng.normal();
            Eigen::VectorXd mean = llt.solve(Pta);
            st.beta = mean + llt.matrixU().solve(z);
            break;
        }
        case GibbsConfig::Backend::WoodburyDirect: {
            d = st.tau2.cwiseInverse();
            PhiD = Phi * d.asDiagonal();
            M = PhiD * Phi.transpose();
            M.diagonal().array() += 1.0;
            Eigen::LLT<Eigen::MatrixXd> small(M);
            if (small.info() != Eigen::Success) throw ComputationError("ssvs: Woodbury inner factor failed", -1, t);
            Eigen::MatrixXd Sigma = -PhiD.transpose() * small.solve(PhiD);
            Sigma.diagonal() += d;
            Eigen::LLT<Eigen::MatrixXd> llt(Sigma);
            if (llt.info() != Eigen::Success) throw ComputationError("ssvs: covariance factor failed", -1, t);
            for (int j = 0; j < p; ++j) z[j] = rng.normal();
            st.beta = Sigma * Pta + llt.matrixL() * z;
            break;
        }
        default: {
            // u ~ N(0,D), v = Phi u + delta, (Phi D Phi' + I) w = alpha - v, beta = u + D Phi' w
            d = st.tau2.cwiseInverse();
            for (int j = 0; j < p; ++j) u[j] = std::sqrt(d[j]) * rng.normal();
            for (int i = 0; i < n; ++i) delta[i] = rng.normal();
            PhiD = Phi * d.asDiagonal();
            M.noalias() = PhiD * Phi.transpose();
            M.diagonal().array() += 1.0;
            v.noalias() = Phi * u;
            v += delta;
            Eigen::LLT<Eigen::MatrixXd> llt(M);
            if (llt.info() != Eigen::Success) throw ComputationError("ssvs: n x n factorisation failed", -1, t);
            wv = llt.solve(alpha - v);
            st.beta = u;
            st.beta.noalias() += PhiD.transpose() * wv;
            break;
        }
        }
        if (!st.beta.allFinite()) throw ComputationError("ssvs: non-finite beta draw", -1, t);

        // (b) tau | beta, gamma from the previous iteration
        for (int j = 0; j < p; ++j) {
            double lam = st.gamma[j] ? prior.lambda1 : prior.lambda0;
            double ab = std::max(std::fabs(st.beta[j]), 1e-10);
            st.tau2[j] = rng.inverse_gaussian(lam / ab, lam * lam);
        }
        // (c) gamma | tau, theta
        const double lt1 = std::log(st.theta), lt0 = std::log1p(-st.theta);
        double on = 0.0;
        for (int j = 0; j < p; ++j) {
            double iv = 1.0 / st.tau2[j];
            double l1 = lt1 + 2.0 * log_l1 - 0.5 * prior.lambda1 * prior.lambda1 * iv;
            double l0 = lt0 + 2.0 * log_l0 - 0.5 * prior.lambda0 * prior.lambda0 * iv;
            double pr1 = 1.0 / (1.0 + std::exp(l0 - l1));
            st.gamma[j] = rng.uniform() < pr1 ? 1 : 0;
            on += st.gamma[j];
        }
        // (d) theta
        if (!prior.theta.is_fixed()) st.theta = sample_theta(prior, on, p, rng);

        int row = row_for(cfg, t);
        if (row >= 0) {
            out.betas.row(row) = st.beta.transpose();
            out.inclusions.row(row) = st.gamma.transpose();
            out.thetas[row] = st.theta;
        }
    }
    if (final_state) *final_state = st;
    return out;
}

DrawMatrix gibbs2_run(const Dataset& data, const SslPrior& prior_in, const GibbsConfig& cfg, std::uint64_t seed,
                      GibbsState* final_state) {
    SslPrior prior = prior_in;
    prior.sigma2 = data.sigma2;
    check_config(data, prior, cfg);
    const int p = data.p();
    const double s2 = data.sigma2;
    RngStream rng(seed, 0);

    GibbsState st;
    st.beta = cfg.init ? *cfg.init : Eigen::VectorXd::Zero(p);
    st.gamma.resize(p);
    for (int j = 0; j < p; ++j) st.gamma[j] = st.beta[j] != 0.0 ? 1 : 0;
    st.theta = prior.initial_theta();
    st.residual = data.y - data.X * st.beta;

    DrawMatrix out;
    out.method_tag = "gibbs2";
    out.resize(kept_rows(cfg), p);

    const double lam[2] = {prior.lambda0, prior.lambda1};
    for (int t = 1; t <= cfg.T; ++t) {
        const double lth[2] = {std::log1p(-st.theta), std::log(st.theta)};
        double on = 0.0;
        for (int j = 0; j < p; ++j) {
            const double s = data.col_norms2[j];
            if (!(s > 0.0)) continue;
            const double old = st.beta[j];
            const double z = data.X.col(j).dot(st.residual) + s * old;
            const double var = s2 / s, sd = std::sqrt(var);
            double mu_pos[2], mu_neg[2], lpos[2], lneg[2], lc[2];
            for (int g = 0; g < 2; ++g) {
                mu_pos[g] = (z - s2 * lam[g]) / s;
                mu_neg[g] = (z + s2 * lam[g]) / s;
                lpos[g] = 0.5 * mu_pos[g] * mu_pos[g] / var + log_normal_cdf(mu_pos[g] / sd);
                lneg[g] = 0.5 * mu_neg[g] * mu_neg[g] / var + log_normal_cdf(-mu_neg[g] / sd);
                lc[g] = lth[g] + std::log(lam[g]) + log_add(lpos[g], lneg[g]);
            }
            int g = rng.uniform() < 1.0 / (1.0 + std::exp(lc[0] - lc[1])) ? 1 : 0;
            double u0 = 1.0 / (1.0 + std::exp(lpos[g] - lneg[g]));  // weight of the negative piece
            double nb = rng.uniform() < u0
                            ? rng.truncated_normal(mu_neg[g], var, RngStream::Side::NonPositive)
                            : rng.truncated_normal(mu_pos[g], var, RngStream::Side::NonNegative);
            if (!std::isfinite(nb)) throw ComputationError("gibbs2: non-finite draw", -1, t);
            st.gamma[j] = std::uint8_t(g);
            on += g;
            if (nb != old) {
                st.residual.noalias() -= (nb - old) * data.X.col(j);
                st.beta[j] = nb;
            }
        }
        if (!prior.theta.is_fixed()) st.theta = sample_theta(prior, on, p, rng);

        int row = row_for(cfg, t);
        if (row >= 0) {
            out.betas.row(row) = st.beta.transpose();
            out.inclusions.row(row) = st.gamma.transpose();
            out.thetas[row] = st.theta;
        }
    }
    if (final_state) *final_state = std::move(st);
    return out;
}

DrawMatrix gibbs_run(const Dataset& data, const SslPrior& prior, const GibbsConfig& config, std::uint64_t seed,
                     GibbsState* final_state) {
    if (config.backend == GibbsConfig::Backend::OneSite) return gibbs2_run(data, prior, config, seed, final_state);
    return ssvs_run(data, prior, config, seed, final_state);
}

}  // namespace bbssl
