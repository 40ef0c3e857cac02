#include "bbssl/distributions.hpp"

#include <cmath>
#include <limits>

#include "bbssl/errors.hpp"

namespace bbssl {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kW0;
            k[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_(stream_index) {}

void RngStream::refill() {
    std::array<std::uint32_t, 4> ctr = {std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                        std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
    buf_ = philox4x32_10(ctr, {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)});
    ++block_;
    pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double RngStream::uniform() {
    // 53 random bits, shifted half an ulp off zero
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

double RngStream::exponential() { return -std::log(uniform()); }

double RngStream::gamma(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw ParameterError("gamma: shape must be positive and finite");
    if (shape < 1.0) {
        // boost: G(a) = G(a+1) * U^(1/a), kept in logs so tiny shapes don't underflow early
        double g = gamma(shape + 1.0);
        return std::exp(std::log(g) + std::log(uniform()) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
}

double RngStream::laplace(double rate) {
    if (!(rate > 0.0)) throw ParameterError("laplace: rate must be positive");
    double e = exponential() / rate;
    return (next_u32() & 1u) ? e : -e;
}

double RngStream::inverse_gaussian(double mean, double shape) {
    if (!std::isfinite(mean) || !std::isfinite(shape) || mean <= 0.0 || shape <= 0.0)
        throw ParameterError("inverse_gaussian: mean and shape must be positive and finite");
    // Michael, Schucany & Haas. x/mean = 1/(1 + r + sqrt(r^2 + 2r)) avoids the
    // cancellation in mean + mean^2 y/(2 shape) - ... when mean*y/shape is large.
    double nu = normal();
    double r = mean * nu * nu / (2.0 * shape);
    double x = mean / (1.0 + r + std::sqrt(r * r + 2.0 * r));
    if (uniform() * (mean + x) <= mean) return x;
    return mean * (mean / x);
}

double standard_normal_tail(double a, RngStream& rng) {
    if (a < 0.45) {
        for (;;) {
            double z = rng.normal();
            if (z >= a) return z;
        }
    }
    // Robert (1995) translated-exponential proposal
    const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
        double z = a + rng.exponential() / alpha;
        double d = z - alpha;
        if (std::log(rng.uniform()) <= -0.5 * d * d) return z;
    }
}

double RngStream::truncated_normal(double mean, double var, Side side) {
    if (!(var > 0.0)) throw ParameterError("truncated_normal: variance must be positive");
    double sd = std::sqrt(var);
    if (side == Side::NonNegative) {
        double z = standard_normal_tail(-mean / sd, *this);
        return std::max(0.0, mean + sd * z);
    }
    double z = standard_normal_tail(mean / sd, *this);
    return std::min(0.0, mean - sd * z);
}

Eigen::VectorXd sample_weights(const WeightScheme& scheme, int n, RngStream& rng) {
    if (n < 1) throw ParameterError("sample_weights: n must be >= 1");
    if (scheme.kind == WeightScheme::Kind::Constant) return Eigen::VectorXd::Ones(n);
    if (!(scheme.alpha > 0.0) || !std::isfinite(scheme.alpha))
        throw ParameterError("sample_weights: alpha must be positive");
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.gamma(scheme.alpha);
    if (scheme.kind == WeightScheme::Kind::GammaScaled) return w / scheme.alpha;
    double s = w.sum();
    if (!(s > 0.0)) throw ComputationError("sample_weights: Gamma draws summed to zero");
    return w * (double(n) / s);
}

Eigen::VectorXd sample_laplace_jitter(double lambda0, int p, RngStream& rng) {
    if (!(lambda0 > 0.0)) throw ParameterError("laplace jitter: lambda0 must be positive");
    Eigen::VectorXd mu(p);
    for (int j = 0; j < p; ++j) mu[j] = rng.laplace(lambda0);
    return mu;
}

double sample_inverse_gaussian(double mean, double shape, RngStream& rng) {
    return rng.inverse_gaussian(mean, shape);
}

double sample_truncated_normal(double mean, double var, RngStream::Side side, RngStream& rng) {
    return rng.truncated_normal(mean, var, side);
}

}  // namespace bbssl
