#include "bbssl/normal_means.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "bbssl/errors.hpp"
#include "bbssl/gibbs.hpp"

namespace bbssl {

namespace {

double log_sum_exp(const double* v, int k) {
    double m = -INFINITY;
    for (int i = 0; i < k; ++i) m = std::max(m, v[i]);
    if (m == -INFINITY) return m;
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += std::exp(v[i] - m);
    return m + std::log(s);
}

}  // namespace

OrthantMixture::OrthantMixture(const SequenceModel& model) : model_(model) {
    model.prior.validate();
    if (!model.prior.theta.is_fixed()) throw ParameterError("exact_posterior: needs a fixed theta");
    if (!(model.n > 0.0)) throw ParameterError("exact_posterior: n must be positive");
    const double n = model.n, y = model.y, th = model.prior.theta.theta;
    var_ = 1.0 / n;
    const double sd = std::sqrt(var_);
    const double lam[2] = {model.prior.lambda1, model.prior.lambda0};
    const double lth[2] = {std::log(th), std::log1p(-th)};
    double lw[4];
    for (int g = 0; g < 2; ++g) {
        double base = lth[g] + std::log(0.5 * lam[g]) + 0.5 * lam[g] * lam[g] / n;
        double mp = y - lam[g] / n, mn = y + lam[g] / n;
        comp_[g] = {0.0, mp, true};
        comp_[2 + g] = {0.0, mn, false};
        lw[g] = base - y * lam[g] + log_normal_cdf(mp / sd);
        lw[2 + g] = base + y * lam[g] + log_normal_cdf(-mn / sd);
    }
    double lse = log_sum_exp(lw, 4);
    for (int k = 0; k < 4; ++k) comp_[k].log_weight = lw[k] - lse;
    // integral of exp(-n (y-b)^2 / 2) pi(b) db
    log_z_ = lse + 0.5 * std::log(2.0 * M_PI / n);
}

double OrthantMixture::log_density(double beta) const {
    double d = model_.y - beta;
    return -0.5 * model_.n * d * d + log_prior_density(beta, model_.prior.theta.theta, model_.prior) - log_z_;
}

double OrthantMixture::density(double beta) const { return std::exp(log_density(beta)); }

double OrthantMixture::slab_weight() const {
    return std::exp(comp_[0].log_weight) + std::exp(comp_[2].log_weight);
}

double OrthantMixture::cdf(double beta) const {
    const double sd = std::sqrt(var_);
    double acc = 0.0;
    for (const auto& c : comp_) {
        double w = std::exp(c.log_weight);
        if (!c.nonnegative) {
            // mass on (-inf, min(beta,0)] relative to (-inf, 0]
            double b = std::min(beta, 0.0);
            acc += w * std::exp(log_normal_cdf((b - c.mean) / sd) - log_normal_cdf(-c.mean / sd));
        } else if (beta > 0.0) {
            // 1 - P(X > beta | X >= 0)
            double tail = std::exp(log_normal_cdf(-(beta - c.mean) / sd) - log_normal_cdf(c.mean / sd));
            acc += w * (1.0 - tail);
        }
    }
    return std::min(1.0, std::max(0.0, acc));
}

double OrthantMixture::quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("quantile: q must lie in (0,1)");
    const double sd = std::sqrt(var_);
    double lo = std::min(0.0, model_.y) - model_.prior.lambda0 * var_ - 40.0 * sd;
    double hi = std::max(0.0, model_.y) + model_.prior.lambda0 * var_ + 40.0 * sd;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(lo) + std::fabs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        (cdf(mid) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double OrthantMixture::sample(RngStream& rng) const {
    double u = rng.uniform();
    int k = 0;
    double acc = 0.0;
    for (; k < 3; ++k) {
        acc += std::exp(comp_[k].log_weight);
        if (u < acc) break;
    }
    const auto& c = comp_[k];
    return rng.truncated_normal(c.mean, var_, c.nonnegative ? RngStream::Side::NonNegative : RngStream::Side::NonPositive);
}

OrthantMixture exact_posterior(const SequenceModel& model) { return OrthantMixture(model); }

double closed_form_wbb(const SequenceModel& model, double w) {
    if (!(w > 0.0)) throw ParameterError("closed_form_wbb: w must be positive");
    SslPrior pr = model.prior;
    pr.sigma2 = 1.0;
    const double th = pr.theta.theta;
    const double k = w * model.n;
    const double ay = std::fabs(model.y);
    // threshold on the y scale: inf_t [t/2 - rho(t)/(k t)] = Delta(s = k) / k
    double delta_w = threshold_delta(k, th, pr) / k;
    if (ay <= delta_w) return 0.0;
    auto iterate = [&](double b) {
        for (int it = 0; it < 5000; ++it) {
            double next = std::max(0.0, ay - lambda_star(b, th, pr) / k);
            double diff = std::fabs(next - b);
            b = next;
            if (diff <= 1e-14 * std::max(1.0, b)) break;
        }
        return b;
    };
    // the map can have two stable fixed points; keep the one with the larger objective
    auto obj = [&](double b) { return -0.5 * k * (ay - b) * (ay - b) + rho(b, th, pr); };
    double top = iterate(std::max(0.0, ay - pr.lambda1 / k));
    double bottom = iterate(std::max(0.0, ay - pr.lambda0 / k));
    double b = obj(bottom) > obj(top) ? bottom : top;
    return model.y > 0.0 ? b : -b;
}

double closed_form_bbssl(const SequenceModel& model, double w, double mu) {
    SequenceModel shifted = model;
    shifted.y = model.y - mu;
    return mu + closed_form_wbb(shifted, w);
}

Dataset sequence_dataset(const SequenceModel& model) {
    Eigen::MatrixXd X(1, 1);
    X(0, 0) = std::sqrt(model.n);
    Eigen::VectorXd y(1);
    y[0] = std::sqrt(model.n) * model.y;
    return make_dataset(X, y, 1.0);
}

Dataset replicated_mean_dataset(int n, double y) {
    if (n < 2) throw ParameterError("replicated_mean_dataset: n must be >= 2");
    boost::math::normal_distribution<double> nd;
    Eigen::VectorXd e(n);
    for (int i = 0; i < n; ++i) e[i] = boost::math::quantile(nd, (i + 0.5) / n);
    e.array() -= e.mean();
    e *= std::sqrt(double(n)) / e.norm();
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(n, 1);
    Eigen::VectorXd Y = Eigen::VectorXd::Constant(n, y) + e;
    return make_dataset(X, Y, 1.0);
}

}  // namespace bbssl
