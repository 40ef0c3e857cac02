#include "bbssl/ssl_map.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "bbssl/errors.hpp"

namespace bbssl {

std::vector<double> default_ladder(double lambda1, double lambda0, int length) {
    if (lambda0 <= lambda1 || length <= 1) return {lambda0};
    std::vector<double> out(length);
    for (int k = 0; k < length; ++k)
        out[k] = lambda1 + (lambda0 - lambda1) * double(k) / double(length - 1);
    out.back() = lambda0;
    return out;
}

namespace {

constexpr int kFixedPointRounds = 2000;

// Monotone iteration of b -> (|z| - sigma2 lambda*(b))_+ / s from a start point.
double fixed_point(double az, double s, double start, double theta, const SslPrior& pr) {
    double b = start;
    for (int k = 0; k < kFixedPointRounds; ++k) {
        double next = std::max(0.0, (az - pr.sigma2 * lambda_star(b, theta, pr)) / s);
        double diff = std::fabs(next - b);
        b = next;
        if (diff <= 1e-13 * std::max(1.0, b)) break;
    }
    return b;
}

}  // namespace

double coordinate_update(double z, double /*beta_current*/, double s, double theta,
                         const SslPrior& prior) {
    if (!std::isfinite(z)) throw ComputationError("coordinate_update: non-finite residual correlation");
    if (!(s > 0.0)) return 0.0;
    const double az = std::fabs(z);
    const double s2 = prior.sigma2;
    if (az <= s2 * prior.lambda1) return 0.0;

    // gain over b = 0 on the sign(z) half-line
    auto gain = [&](double b) { return (-0.5 * s * b * b + az * b) / s2 + rho(b, theta, prior); };

    double top = fixed_point(az, s, (az - s2 * prior.lambda1) / s, theta, prior);
    double best = 0.0, best_gain = 0.0;
    if (top > 0.0) {
        double g = gain(top);
        if (g > best_gain) {
            best = top;
            best_gain = g;
        }
    }
    if (prior.lambda0 > prior.lambda1) {
        double bottom = fixed_point(az, s, std::max(0.0, (az - s2 * prior.lambda0) / s), theta, prior);
        if (bottom > 0.0 && bottom != top) {
            double g = gain(bottom);
            if (g > best_gain) {
                best = bottom;
                best_gain = g;
            }
        }
    }
    return z > 0.0 ? best : -best;
}

double map_objective(const Dataset& data, const SslPrior& prior, const Eigen::VectorXd& beta,
                     double theta) {
    double rss = (data.y - data.X * beta).squaredNorm();
    double lp = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) lp += log_prior_density(beta[j], theta, prior);
    return -rss / (2.0 * data.sigma2) + lp;
}

double theta_update(const Eigen::VectorXd& beta, const SslPrior& prior, double theta_prev) {
    if (prior.theta.is_fixed()) return prior.theta.theta;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) acc += p_star(beta[j], theta_prev, prior);
    return (prior.theta.a + acc) / (prior.theta.a + prior.theta.b + double(beta.size()));
}

MapResult map_fit(const Dataset& data, const SslPrior& prior_in, const SolverConfig& config,
                  const Eigen::VectorXd& init, std::optional<double> theta_init) {
    SslPrior prior = prior_in;
    prior.sigma2 = data.sigma2;
    prior.validate();
    const int n = data.n(), p = data.p();
    if (init.size() != p) throw ParameterError("map_fit: init has length " + std::to_string(init.size()) +
                                                ", expected " + std::to_string(p));
    if (data.y.size() != n || data.col_norms2.size() != p) throw ParameterError("map_fit: dataset dimensions inconsistent");
    if (!init.allFinite()) throw ParameterError("map_fit: init must be finite");

    const bool fixed = prior.theta.is_fixed();
    double theta = fixed ? prior.theta.theta : theta_init.value_or(prior.initial_theta());

    Eigen::VectorXd beta = init;
    Eigen::VectorXd r = data.y - data.X * beta;

    std::unordered_map<double, double> delta_cache;
    auto delta_of = [&](int j) {
        double s = data.col_norms2[j];
        auto it = delta_cache.find(s);
        if (it != delta_cache.end()) return it->second;
        double d = threshold_delta(s, theta, prior);
        delta_cache.emplace(s, d);
        return d;
    };

    std::vector<int> order(p);
    std::vector<int> cand, rest;
    Eigen::VectorXd zall(p);

    MapResult res;
    int it = 0;
    for (it = 1; it <= config.max_iter; ++it) {
        if (!fixed && it > 1 && config.theta_update_every > 0 && (it - 1) % config.theta_update_every == 0) {
            double t_new = theta_update(beta, prior, theta);
            if (t_new != theta) delta_cache.clear();
            theta = t_new;
        }

        if (config.sweep_order == SolverConfig::SweepOrder::ActiveFirst) {
            order.clear();
            cand.clear();
            rest.clear();
            zall.noalias() = data.X.transpose() * r;
            for (int j = 0; j < p; ++j) {
                if (beta[j] != 0.0) {
                    order.push_back(j);
                } else if (data.col_norms2[j] > 0.0 && std::fabs(zall[j]) >= 0.9 * delta_of(j)) {
                    cand.push_back(j);
                } else {
                    rest.push_back(j);
                }
            }
            order.insert(order.end(), cand.begin(), cand.end());
            order.insert(order.end(), rest.begin(), rest.end());
        } else {
            for (int j = 0; j < p; ++j) order[j] = j;
        }

        double max_change = 0.0;
        for (int j : order) {
            const double s = data.col_norms2[j];
            const double old = beta[j];
            double z = data.X.col(j).dot(r) + s * old;
            double nb;
            try {
                nb = coordinate_update(z, old, s, theta, prior);
            } catch (const ComputationError& e) {
                throw ComputationError(std::string(e.what()) + " (coordinate " + std::to_string(j) + ")", -1, it);
            }
            if (nb != old) {
                r.noalias() -= (nb - old) * data.X.col(j);
                beta[j] = nb;
                max_change = std::max(max_change, std::fabs(nb - old));
            }
        }
        if (max_change < config.tol) {
            // sweeps often settle before the first scheduled refresh; bring theta in line
            // with the converged beta before stopping
            if (!fixed) {
                double t_new = theta_update(beta, prior, theta);
                if (std::fabs(t_new - theta) > 1e-10) {
                    theta = t_new;
                    delta_cache.clear();
                    continue;
                }
            }
            res.converged = true;
            break;
        }
    }

    res.iterations = std::min(it, config.max_iter);
    res.beta = beta;
    res.theta_hat = theta;
    for (int j = 0; j < p; ++j)
        if (beta[j] != 0.0) res.active_set.push_back(j);
    res.objective = map_objective(data, prior, beta, theta);
    return res;
}

MapResult map_fit(const Dataset& data, const SslPrior& prior, const SolverConfig& config) {
    return map_fit(data, prior, config, Eigen::VectorXd::Zero(data.p()));
}

MapResult anneal_fit(const Dataset& data, const SslPrior& prior, const std::vector<double>& ladder,
                     const SolverConfig& config) {
    if (ladder.empty()) throw ParameterError("anneal_fit: empty ladder");
    for (size_t k = 1; k < ladder.size(); ++k)
        if (!(ladder[k] > ladder[k - 1])) throw ParameterError("anneal_fit: ladder must be strictly increasing");
    if (std::fabs(ladder.back() - prior.lambda0) > 1e-12 * std::max(1.0, prior.lambda0))
        throw ParameterError("anneal_fit: ladder must end at the target lambda0");
    if (ladder.front() < prior.lambda1)
        throw ParameterError("anneal_fit: ladder values must be >= lambda1");

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.p());
    std::optional<double> theta;
    MapResult res;
    for (double l0 : ladder) {
        res = map_fit(data, prior.with_lambda0(l0), config, beta, theta);
        beta = res.beta;
        theta = res.theta_hat;
    }
    return res;
}

}  // namespace bbssl
