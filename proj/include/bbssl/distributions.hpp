#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace bbssl {

// Philox4x32-10 block function. Exposed for the known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

// Counter-based stream: the key is the seed, the upper half of the counter is
// the stream index, the lower half counts blocks. Two streams with the same
// (seed, stream_index) produce the same variates no matter which thread runs them.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }
    result_type operator()() { return next_u64(); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    double uniform();       // (0, 1), never 0 or 1
    double normal();
    double exponential();   // rate 1
    double gamma(double shape);  // scale 1
    double beta(double a, double b);
    double laplace(double rate);
    double inverse_gaussian(double mean, double shape);

    enum class Side { NonNegative, NonPositive };
    double truncated_normal(double mean, double var, Side side);

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Draw from N(0,1) restricted to [a, inf).
double standard_normal_tail(double a, RngStream& rng);

struct WeightScheme {
    enum class Kind { DirichletScaled, GammaScaled, Constant };
    Kind kind = Kind::DirichletScaled;
    double alpha = 1.0;
};

Eigen::VectorXd sample_weights(const WeightScheme& scheme, int n, RngStream& rng);
Eigen::VectorXd sample_laplace_jitter(double lambda0, int p, RngStream& rng);
double sample_inverse_gaussian(double mean, double shape, RngStream& rng);
double sample_truncated_normal(double mean, double var, RngStream::Side side, RngStream& rng);

}  // namespace bbssl
