#include "bbssl/simgen.hpp"

#include <cmath>

#include "bbssl/errors.hpp"
#include "bbssl/normal_means.hpp"

namespace bbssl {

Eigen::MatrixXd gen_design(const DesignSpec& spec, RngStream& rng) {
    if (spec.n < 1 || spec.p < 1) throw ParameterError("gen_design: n and p must be positive");
    if (!(spec.rho >= 0.0 && spec.rho < 1.0)) throw ParameterError("gen_design: rho must lie in [0,1)");
    const int n = spec.n, p = spec.p;
    int bs = 1;
    switch (spec.structure) {
    case DesignSpec::Structure::Independent: bs = 1; break;
    case DesignSpec::Structure::Block:
        if (spec.block_size < 1) throw ParameterError("gen_design: block size must be positive");
        bs = spec.block_size;
        break;
    case DesignSpec::Structure::Equicorrelated: bs = p; break;
    }
    const double rho = spec.structure == DesignSpec::Structure::Independent ? 0.0 : spec.rho;
    const double a = std::sqrt(rho), b = std::sqrt(1.0 - rho);
    const int nblocks = (p + bs - 1) / bs;
    Eigen::MatrixXd X(n, p);
    std::vector<double> z(nblocks);
    // row by row so the draw order does not depend on storage order
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < nblocks; ++k) z[k] = rng.normal();
        for (int j = 0; j < p; ++j) X(i, j) = a * z[j / bs] + b * rng.normal();
    }
    if (spec.standardize) standardize_columns(X);
    return X;
}

void standardize_columns(Eigen::MatrixXd& X) {
    const double target = std::sqrt(double(X.rows()));
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        auto col = X.col(j);
        col.array() -= col.mean();
        double nrm = col.norm();
        if (!(nrm > 0.0)) throw ParameterError("standardize: column " + std::to_string(j + 1) + " is constant");
        col *= target / nrm;
    }
}

Eigen::VectorXd gen_response(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta0, double sigma, RngStream& rng) {
    if (X.cols() != beta0.size()) throw ParameterError("gen_response: beta0 length does not match p");
    if (!(sigma >= 0.0)) throw ParameterError("gen_response: sigma must be non-negative");
    Eigen::VectorXd y = X * beta0;
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += sigma * rng.normal();
    return y;
}

namespace {

Scenario lowdim(const std::string& name, double rho, double l0, double l1) {
    Scenario s;
    s.name = name;
    s.design = {50, 12, DesignSpec::Structure::Block, 3, rho, true};
    s.beta0 = Eigen::VectorXd::Zero(12);
    for (int j : {0, 3, 6, 9}) s.beta0[j] = 1.3;
    s.prior.lambda0 = l0;
    s.prior.lambda1 = l1;
    s.prior.theta = ThetaPrior::beta(1.0, 12.0);
    s.alpha = 1.0;
    s.single_lambda = true;
    return s;
}

Scenario highdim(const std::string& name, DesignSpec::Structure st, int bs, double rho, std::vector<double> vals,
                 std::vector<int> pos) {
    Scenario s;
    s.name = name;
    s.design = {100, 1000, st, bs, rho, true};
    s.beta0 = Eigen::VectorXd::Zero(1000);
    for (size_t k = 0; k < vals.size(); ++k) s.beta0[pos[k]] = vals[k];
    s.prior.lambda0 = 50.0;
    s.prior.lambda1 = 0.05;
    s.prior.theta = ThetaPrior::beta(1.0, 1000.0);
    s.alpha = 2.0;
    return s;
}

Scenario single_mean(const std::string& name, double l0) {
    Scenario s;
    s.name = name;
    s.normal_means = true;
    s.design = {10, 1, DesignSpec::Structure::Independent, 1, 0.0, false};
    s.beta0 = Eigen::VectorXd::Constant(1, 1.0);
    s.prior.lambda0 = l0;
    s.prior.lambda1 = 0.1;
    s.prior.theta = ThetaPrior::fixed(0.2);
    s.alpha = 2.5;
    s.nm_y = 1.0;
    s.single_lambda = true;
    return s;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"lowdim-rho0",      "lowdim-rho0.6",     "lowdim-rho0.9",     "highdim-equi-0.6", "highdim-equi-0.9",
            "highdim-block-0.6", "highdim-block-0.9", "single-mean",           "single-mean-l10"};
}

Scenario preset(const std::string& name) {
    using S = DesignSpec::Structure;
    if (name == "lowdim-rho0") return lowdim(name, 0.0, 12.0, 0.05);
    if (name == "lowdim-rho0.6") {
        Scenario s = lowdim(name, 0.6, 7.0, 0.15);
        s.alpha = 2.0;
        return s;
    }
    if (name == "lowdim-rho0.9") return lowdim(name, 0.9, 7.0, 0.15);
    if (name == "highdim-equi-0.6") return highdim(name, S::Equicorrelated, 1000, 0.6, {2, 3, -3, 4}, {0, 1, 2, 3});
    if (name == "highdim-equi-0.9") return highdim(name, S::Equicorrelated, 1000, 0.9, {2, 4, -4, 6}, {0, 1, 2, 3});
    if (name == "highdim-block-0.6") return highdim(name, S::Block, 10, 0.6, {1, 2, -2, 3}, {0, 10, 20, 30});
    if (name == "highdim-block-0.9") return highdim(name, S::Block, 10, 0.9, {1, 2, -2, 3}, {0, 10, 20, 30});
    if (name == "single-mean") return single_mean(name, 5.0);
    if (name == "single-mean-l10") return single_mean(name, 10.0);
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ParameterError("unknown preset '" + name + "' (known: " + known + ")");
}

Dataset simulate(const Scenario& sc, std::uint64_t seed) {
    if (sc.normal_means) return replicated_mean_dataset(sc.design.n, sc.nm_y);
    RngStream design_rng(seed, 0), noise_rng(seed, 1);
    Eigen::MatrixXd X = gen_design(sc.design, design_rng);
    Eigen::VectorXd y = gen_response(X, sc.beta0, sc.sigma, noise_rng);
    return make_dataset(std::move(X), std::move(y), sc.sigma * sc.sigma);
}

}  // namespace bbssl
