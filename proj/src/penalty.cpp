#include "bbssl/penalty.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bbssl/errors.hpp"

namespace bbssl {

void SslPrior::validate() const {
    if (!(lambda1 > 0.0) || !std::isfinite(lambda1))
        throw ParameterError("lambda1 must be positive and finite");
    if (!(lambda0 >= lambda1) || !std::isfinite(lambda0))
        throw ParameterError("lambda0 must be finite and >= lambda1");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw ParameterError("sigma2 must be positive and finite");
    if (theta.is_fixed()) {
        if (!(theta.theta > 0.0 && theta.theta < 1.0))
            throw ParameterError("fixed theta must lie strictly inside (0,1)");
    } else if (!(theta.a > 0.0 && theta.b > 0.0)) {
        throw ParameterError("Beta hyperparameters a, b must be positive");
    }
}

double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

namespace {

// log odds of spike vs slab at |t|: d(t) = log[(1-theta) lambda0 / (theta lambda1)] - (lambda0 - lambda1)|t|
inline double spike_log_odds(double at, double theta, const SslPrior& pr) {
    return std::log1p(-theta) - std::log(theta) + std::log(pr.lambda0) - std::log(pr.lambda1) -
           (pr.lambda0 - pr.lambda1) * at;
}

}  // namespace

double log_p_star(double t, double theta, const SslPrior& prior) {
    return -softplus(spike_log_odds(std::fabs(t), theta, prior));
}

double p_star(double t, double theta, const SslPrior& prior) {
    double d = spike_log_odds(std::fabs(t), theta, prior);
    if (d > 0.0) {
        double e = std::exp(-d);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(d));
}

double lambda_star(double t, double theta, const SslPrior& prior) {
    double p = p_star(t, theta, prior);
    return prior.lambda1 * p + prior.lambda0 * (1.0 - p);
}

double rho(double t, double theta, const SslPrior& prior) {
    double at = std::fabs(t);
    double d0 = spike_log_odds(0.0, theta, prior);
    double c = prior.lambda0 - prior.lambda1;
    double ct = c * at;
    double diff;  // log p*(0) - log p*(t) = softplus(d0 - ct) - softplus(d0)
    if (ct < 1.0) {
        // log(1 - q0 (1 - e^{-ct})) with q0 = 1 - p*(0); accurate as t -> 0
        double q0 = d0 > 0.0 ? 1.0 / (1.0 + std::exp(-d0)) : std::exp(d0) / (1.0 + std::exp(d0));
        diff = std::log1p(q0 * std::expm1(-ct));
    } else {
        diff = softplus(d0 - ct) - softplus(d0);
    }
    return -prior.lambda1 * at + diff;
}

double log_prior_density(double t, double theta, const SslPrior& prior) {
    double at = std::fabs(t);
    double a = std::log(theta) + std::log(0.5 * prior.lambda1) - prior.lambda1 * at;
    double b = std::log1p(-theta) + std::log(0.5 * prior.lambda0) - prior.lambda0 * at;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

double threshold_delta(double s, double theta, const SslPrior& prior) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("threshold_delta: col_norm2 must be positive");
    const double s2 = prior.sigma2;
    auto f = [&](double t) { return 0.5 * s * t - s2 * rho(t, theta, prior) / t; };
    const double f0 = s2 * lambda_star(0.0, theta, prior);  // limit t -> 0+
    if (prior.lambda0 == prior.lambda1) return f0;

    // any minimiser has s t/2 <= f0, so t <= 2 f0 / s
    const double tmax = 2.02 * f0 / s + 1e-300;
    const double tmin = tmax * 1e-12;
    constexpr int kGrid = 121;
    const double step = std::log(tmax / tmin) / (kGrid - 1);
    std::vector<double> ts(kGrid), fs(kGrid);
    int best = 0;
    for (int k = 0; k < kGrid; ++k) {
        ts[k] = tmin * std::exp(step * k);
        fs[k] = f(ts[k]);
        if (!std::isfinite(fs[k]))
            throw ComputationError("threshold_delta: objective not finite at t=" + std::to_string(ts[k]));
        if (fs[k] < fs[best]) best = k;
    }
    double lo = ts[best > 0 ? best - 1 : 0];
    double hi = ts[best + 1 < kGrid ? best + 1 : kGrid - 1];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * 0.5 * (hi + lo); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    double fmin = std::min({fs[best], f1, f2, f0});
    if (!std::isfinite(fmin)) throw ComputationError("threshold_delta: bracketing failed");
    return fmin;
}

double slack_g(double t, double theta, double lambda0, double lambda1) {
    SslPrior pr;
    pr.lambda0 = lambda0;
    pr.lambda1 = lambda1;
    pr.sigma2 = 1.0;
    double ls = lambda_star(t, theta, pr) - lambda1;
    return ls * ls + 2.0 * log_p_star(t, theta, pr);
}

DeltaBounds threshold_delta_bounds(double s, double theta, const SslPrior& prior) {
    const double sigma = std::sqrt(prior.sigma2);
    const double L = -log_p_star(0.0, theta, prior);  // log 1/p*(0), scale free
    DeltaBounds out{};
    out.upper = sigma * std::sqrt(2.0 * s * L) + prior.sigma2 * prior.lambda1;
    // unit-noise scale: lambdas multiplied by sigma / sqrt(s)
    const double k = sigma / std::sqrt(s);
    const double l0 = prior.lambda0 * k, l1 = prior.lambda1 * k;
    out.has_lower = slack_g(0.0, theta, l0, l1) > 0.0 && (l0 - l1) > 2.0 && L > 1.0;
    out.lower = out.has_lower ? sigma * std::sqrt(s) * std::sqrt(2.0 * L - 2.0) + prior.sigma2 * prior.lambda1
                              : -std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace bbssl
