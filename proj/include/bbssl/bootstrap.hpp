#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "bbssl/bb_ssl.hpp"

namespace bbssl {

enum class PriorWeight {
    FixedOne,      // prior term weight 1
    Random,        // w_tilde ~ Exp(1) independent of w; data weights become w / w_tilde
    RandomShared,  // (w, w_tilde) jointly ~ (n+1) Dir(alpha); w_tilde is one more data weight
};

struct NplConfig {
    int m = 0;
    double c = 1.0;
    enum class PriorKind { Independent, EmpiricalJitter };
    PriorKind prior_kind = PriorKind::EmpiricalJitter;
    bool jitter = true;  // false forces mu = 0 (ablation)
};

Eigen::VectorXd wlb_draw(const Dataset& data, const WeightScheme& scheme, RngStream& rng);

Draw wbb_draw(const Dataset& data, const SslPrior& prior, const SolverConfig& config, const WeightScheme& scheme,
              PriorWeight prior_weight, RngStream& rng, const Eigen::VectorXd* init = nullptr,
              std::optional<double> theta_init = std::nullopt);

Draw npl_draw(const Dataset& data, const SslPrior& prior, const NplConfig& npl, const SolverConfig& config,
              RngStream& rng, const Eigen::VectorXd* init = nullptr,
              std::optional<double> theta_init = std::nullopt);

DrawMatrix wlb_sample(const Dataset& data, const WeightScheme& scheme, int T, std::uint64_t seed, int threads = 1);
DrawMatrix wbb_sample(const Dataset& data, const SslPrior& prior, const WeightScheme& scheme,
                      PriorWeight prior_weight, int T, const SolverConfig& config, std::uint64_t seed,
                      int threads = 1);
DrawMatrix npl_sample(const Dataset& data, const SslPrior& prior, const NplConfig& npl, int T,
                      const SolverConfig& config, std::uint64_t seed, int threads = 1);

}  // namespace bbssl
