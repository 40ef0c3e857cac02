#pragma once

namespace bbssl {

struct ThetaPrior {
    enum class Kind { Fixed, Beta };
    Kind kind = Kind::Beta;
    double theta = 0.5;  // used when Fixed
    double a = 1.0;
    double b = 1.0;

    static ThetaPrior fixed(double theta) { return {Kind::Fixed, theta, 1.0, 1.0}; }
    static ThetaPrior beta(double a, double b) { return {Kind::Beta, a / (a + b), a, b}; }
    bool is_fixed() const { return kind == Kind::Fixed; }
};

struct SslPrior {
    double lambda0 = 1.0;
    double lambda1 = 1.0;
    ThetaPrior theta;
    double sigma2 = 1.0;

    void validate() const;
    // Fixed theta, or the Beta prior mean as a starting value.
    double initial_theta() const { return theta.theta; }
    SslPrior with_lambda0(double l0) const {
        SslPrior p = *this;
        p.lambda0 = l0;
        return p;
    }
};

// log(1 + e^x) without overflow
double softplus(double x);

double p_star(double t, double theta, const SslPrior& prior);
double log_p_star(double t, double theta, const SslPrior& prior);
double lambda_star(double t, double theta, const SslPrior& prior);
double rho(double t, double theta, const SslPrior& prior);
// log pi(t | theta) for the two-Laplace mixture
double log_prior_density(double t, double theta, const SslPrior& prior);

// inf_{t>0} ( s t/2 - sigma2 rho(t)/t ), s = ||X_j||^2
double threshold_delta(double col_norm2, double theta, const SslPrior& prior);

struct DeltaBounds {
    double lower;       // only meaningful when has_lower
    double upper;
    bool has_lower;
};
DeltaBounds threshold_delta_bounds(double col_norm2, double theta, const SslPrior& prior);

// g(t) = (lambda*(t) - lambda1)^2 + 2 log p*(t), on the unit-noise scale
double slack_g(double t, double theta, double lambda0, double lambda1);

}  // namespace bbssl
