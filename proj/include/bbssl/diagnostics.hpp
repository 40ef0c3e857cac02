#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bbssl/bb_ssl.hpp"

namespace bbssl {

struct EssResult {
    double value = 0.0;
    bool degenerate = false;  // constant chain
};

// Geyer initial positive (monotone) sequence estimator, clipped to [1, T].
EssResult ess(const Eigen::Ref<const Eigen::VectorXd>& chain);
double lag1_autocorrelation(const Eigen::Ref<const Eigen::VectorXd>& chain);

struct KlResult {
    double value = 0.0;
    long zero_distances = 0;  // neighbour distances floored at 1e-12
};

// Wang-Kulkarni-Verdu k-NN estimate of KL(P || Q) for 1-D samples.
KlResult knn_kl(const std::vector<double>& p_samples, const std::vector<double>& q_samples, int k = 10);
double knn_kl_value(const Eigen::Ref<const Eigen::VectorXd>& p, const Eigen::Ref<const Eigen::VectorXd>& q, int k = 10);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Linear-interpolation (type 7) empirical quantile.
double empirical_quantile(std::vector<double> sorted_or_not, double q, bool already_sorted = false);
Interval credible_interval(const Eigen::Ref<const Eigen::VectorXd>& draws, double level);
double jaccard_interval(const Interval& a, const Interval& b);

Eigen::VectorXd mip(const DrawMatrix& draws);
int median_model_hamming(const Eigen::VectorXd& mip_a, const Eigen::VectorXd& mip_b);

struct BiasPair {
    double active = 0.0;
    double inactive = 0.0;
};
BiasPair l1_bias(const DrawMatrix& a, const DrawMatrix& b, const std::vector<int>& active_set);

// two-sample Kolmogorov-Smirnov statistic
double ks_distance(std::vector<double> a, std::vector<double> b);
// one-sample statistic against a CDF
double ks_distance(std::vector<double> a, const std::function<double(double)>& cdf);

struct DiagnosticsReport {
    double kl_active = 0.0, kl_inactive = 0.0;
    double jaccard_active = 0.0, jaccard_inactive = 0.0;
    double bias_active = 0.0, bias_inactive = 0.0;
    Eigen::VectorXd mip;      // of the approximation
    Eigen::VectorXd mip_ref;  // of the reference
    int hamming = 0;
    Eigen::VectorXd ess;  // per coordinate, of the approximation
    std::vector<int> active_set;
    long kl_zero_distances = 0;
    double level = 0.9;
};

// Compares an approximation `a` against a reference `b`. If active_set is empty
// the reference median model (MIP >= 0.5) defines it.
DiagnosticsReport compare_draws(const DrawMatrix& a, const DrawMatrix& b, std::vector<int> active_set,
                                double level = 0.9, int k = 10);

nlohmann::json to_json(const DiagnosticsReport& r);

}  // namespace bbssl
