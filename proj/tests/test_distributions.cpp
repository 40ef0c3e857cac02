#include <doctest.h>

#include <cmath>
#include <vector>

#include "bbssl/distributions.hpp"
#include "bbssl/errors.hpp"

using namespace bbssl;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_vs(std::vector<double> v, double (*cdf)(double)) {
    std::sort(v.begin(), v.end());
    double d = 0.0, n = double(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        double f = cdf(v[i]);
        d = std::max({d, std::fabs((i + 1) / n - f), std::fabs(f - i / n)});
    }
    return d;
}

}  // namespace

TEST_CASE("philox known-answer vectors") {
    auto a = philox4x32_10({0, 0, 0, 0}, {0, 0});
    CHECK(a[0] == 0x6627e8d5u);
    CHECK(a[1] == 0xe169c58du);
    CHECK(a[2] == 0xbc57ac4cu);
    CHECK(a[3] == 0x9b00dbd8u);
    auto b = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(b[0] == 0x408f276du);
    CHECK(b[1] == 0x41c83b0eu);
    CHECK(b[2] == 0xa20bc7c6u);
    CHECK(b[3] == 0x6d5451fdu);
    auto c = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(c[0] == 0xd16cfe09u);
    CHECK(c[1] == 0x94fdccebu);
    CHECK(c[2] == 0x5001e420u);
    CHECK(c[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 1000; ++i) {
        double x = a.normal();
        CHECK(x == b.normal());
        differ_c |= x != c.normal();
        differ_d |= x != d.normal();
    }
    CHECK(differ_c);
    CHECK(differ_d);

    // neighbouring streams look uncorrelated
    const int N = 200000;
    double sxy = 0.0;
    RngStream s1(1, 100), s2(1, 101);
    for (int i = 0; i < N; ++i) sxy += s1.normal() * s2.normal();
    CHECK(std::fabs(sxy / N) < 5.0 / std::sqrt(double(N)));
}

TEST_CASE("uniform stays inside the open interval") {
    RngStream r(3, 0);
    for (int i = 0; i < 100000; ++i) {
        double u = r.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("sample_weights schemes") {
    RngStream r(1, 0);
    SUBCASE("constant") {
        auto w = sample_weights({WeightScheme::Kind::Constant, 0.0}, 5, r);
        CHECK(w == Eigen::VectorXd::Ones(5));
    }
    SUBCASE("dirichlet scaled: sums to n, unit mean") {
        const int n = 1000, reps = 10000;
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
        double worst_sum = 0.0;
        for (int t = 0; t < reps; ++t) {
            RngStream s(11, t);
            auto w = sample_weights({WeightScheme::Kind::DirichletScaled, 2.0}, n, s);
            worst_sum = std::max(worst_sum, std::fabs(w.sum() - n));
            acc += w;
        }
        acc /= reps;
        CHECK(worst_sum < 1e-9 * n);
        CHECK(acc.minCoeff() > 0.95);
        CHECK(acc.maxCoeff() < 1.05);
    }
    SUBCASE("gamma scaled variance 1/alpha") {
        const int n = 50, reps = 2000;
        double s = 0.0, s2 = 0.0;
        for (int t = 0; t < reps; ++t) {
            auto w = sample_weights({WeightScheme::Kind::GammaScaled, 14.0}, n, r);
            s += w.sum();
            s2 += w.squaredNorm();
        }
        double N = double(n) * reps, m = s / N;
        double var = s2 / N - m * m;
        CHECK(var == doctest::Approx(1.0 / 14.0).epsilon(0.10));
    }
    SUBCASE("bad alpha") {
        CHECK_THROWS_AS(sample_weights({WeightScheme::Kind::DirichletScaled, 0.0}, 3, r), ParameterError);
        CHECK_THROWS_AS(sample_weights({WeightScheme::Kind::GammaScaled, -1.0}, 3, r), ParameterError);
    }
}

TEST_CASE("P(w_i > threshold) decreases with alpha") {
    const int n = 1000, reps = 200;
    double prev = 1.0;
    for (double alpha : {2.0, 6.0, 14.0}) {
        long over = 0;
        for (int t = 0; t < reps; ++t) {
            RngStream s(5, t);
            auto w = sample_weights({WeightScheme::Kind::DirichletScaled, alpha}, n, s);
            over += (w.array() > 2.0).count();
        }
        double frac = double(over) / (double(n) * reps);
        CHECK(frac < prev);
        prev = frac;
    }
}

TEST_CASE("gamma and beta moments") {
    RngStream r(9, 0);
    for (double a : {0.3, 1.0, 2.5, 30.0}) {
        const int N = 200000;
        double s = 0.0, s2 = 0.0;
        for (int i = 0; i < N; ++i) {
            double g = r.gamma(a);
            s += g;
            s2 += g * g;
        }
        double m = s / N;
        CHECK(m == doctest::Approx(a).epsilon(0.02));
        CHECK(s2 / N - m * m == doctest::Approx(a).epsilon(0.05));
    }
    double s = 0.0;
    for (int i = 0; i < 100000; ++i) s += r.beta(2.0, 6.0);
    CHECK(s / 100000 == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("laplace jitter") {
    SUBCASE("huge rate concentrates at zero") {
        RngStream r(1, 1);
        auto mu = sample_laplace_jitter(1e6, 1000, r);
        CHECK(mu.cwiseAbs().maxCoeff() < 1e-4);
    }
    SUBCASE("variance 2/lambda^2") {
        RngStream r(1, 2);
        auto mu = sample_laplace_jitter(5.0, 100000, r);
        double m = mu.mean();
        double var = (mu.array() - m).square().mean();
        CHECK(var == doctest::Approx(0.08).epsilon(0.05));
    }
    SUBCASE("tail probability") {
        RngStream r(1, 3);
        const double lam = 5.0, thr = 1.0 / lam + 1.0 / std::sqrt(lam);
        auto mu = sample_laplace_jitter(lam, 1000000, r);
        double frac = double((mu.array().abs() > thr).count()) / 1e6;
        CHECK(frac == doctest::Approx(std::exp(-1.0 - std::sqrt(5.0))).epsilon(0.30));
    }
}

TEST_CASE("inverse gaussian") {
    RngStream r(2, 0);
    const int N = 1000000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < N; ++i) {
        double x = sample_inverse_gaussian(2.0, 8.0, r);
        s += x;
        s2 += x * x;
    }
    double m = s / N;
    CHECK(m == doctest::Approx(2.0).epsilon(0.01));
    CHECK(s2 / N - m * m == doctest::Approx(1.0).epsilon(0.03));

    for (int i = 0; i < 10000; ++i) {
        double x = sample_inverse_gaussian(1.0, 1e8, r);
        REQUIRE(std::fabs(x - 1.0) < 1e-3);
    }
    // mean far larger than shape: stays finite and positive
    for (int i = 0; i < 10000; ++i) {
        double x = sample_inverse_gaussian(5e11, 2500.0, r);
        REQUIRE(std::isfinite(x));
        REQUIRE(x > 0.0);
    }
    CHECK_THROWS_AS(sample_inverse_gaussian(-1.0, 1.0, r), ParameterError);
    CHECK_THROWS_AS(sample_inverse_gaussian(1.0, NAN, r), ParameterError);
}

TEST_CASE("truncated normal") {
    RngStream r(4, 0);
    SUBCASE("half normal mean") {
        const int N = 1000000;
        double s = 0.0;
        for (int i = 0; i < N; ++i) s += sample_truncated_normal(0.0, 1.0, RngStream::Side::NonNegative, r);
        CHECK(s / N == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(0.01));
    }
    SUBCASE("negligible truncation") {
        std::vector<double> v(100000);
        for (auto& x : v) x = sample_truncated_normal(5.0, 1.0, RngStream::Side::NonNegative, r) - 5.0;
        CHECK(ks_vs(v, normal_cdf) < 0.01);
    }
    SUBCASE("mean deep inside the excluded side") {
        for (int i = 0; i < 10000; ++i) {
            double x = sample_truncated_normal(-40.0, 1.0, RngStream::Side::NonNegative, r);
            REQUIRE(std::isfinite(x));
            REQUIRE(x >= 0.0);
            double y = sample_truncated_normal(40.0, 1.0, RngStream::Side::NonPositive, r);
            REQUIRE(y <= 0.0);
        }
    }
    SUBCASE("tail sampler matches the exponential-tail law") {
        // Z | Z >= a has P(Z > a + t) = Q(a+t)/Q(a)
        const double a = 3.0;
        std::vector<double> v(100000);
        for (auto& x : v) x = standard_normal_tail(a, r);
        static double qa = 1.0 - normal_cdf(3.0);
        auto cdf = +[](double x) { return 1.0 - (1.0 - normal_cdf(x)) / qa; };
        CHECK(ks_vs(v, cdf) < 0.01);
    }
}
