#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbssl/bb_ssl.hpp"
#include "bbssl/bootstrap.hpp"
#include "bbssl/diagnostics.hpp"
#include "bbssl/errors.hpp"
#include "bbssl/gibbs.hpp"
#include "bbssl/io.hpp"
#include "bbssl/normal_means.hpp"
#include "bbssl/simgen.hpp"

using namespace bbssl;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kConfigError = 2;
constexpr int kComputationError = 3;

// Everything any subcommand may read. Unset optionals fall back to the preset.
struct Options {
    std::string method = "bbssl";
    std::string preset;
    std::string input;
    std::string response = "y";
    std::optional<double> noise_sd;
    int T = 1000;
    int burn_in = -1;  // -1: method default
    int thin = 1;
    std::string alpha;  // number or "auto"; empty: preset value
    std::string weights = "dirichlet";
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out = "out";
    bool no_timestamp = false;
    std::optional<double> lambda0, lambda1, theta;
    std::optional<double> theta_a, theta_b;
    // compare
    std::string draws_a, draws_b, truth;
    double level = 0.9;
    int knn_k = 10;
    // oracle
    std::optional<double> nm_n, nm_y;
    // bench
    std::string grid = "100x250,100x500,100x1000";
    std::string bench_methods = "bbssl,ssvs";
};

struct Problem {
    Dataset data;
    SslPrior prior;
    Scenario scenario;  // for presets
    bool from_preset = false;
    double alpha_default = 2.0;
    bool single_lambda = false;
    json source;
};

std::string now_iso() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void apply_prior_flags(const Options& o, SslPrior& pr, int p) {
    if (o.lambda0) pr.lambda0 = *o.lambda0;
    if (o.lambda1) pr.lambda1 = *o.lambda1;
    if (o.theta) {
        pr.theta = ThetaPrior::fixed(*o.theta);
    } else if (o.theta_a || o.theta_b) {
        pr.theta = ThetaPrior::beta(o.theta_a.value_or(1.0), o.theta_b.value_or(double(p)));
    }
    pr.validate();
}

Problem load_problem(const Options& o) {
    if (o.preset.empty() == o.input.empty()) throw ParameterError("give exactly one of --preset or --input");
    Problem pb;
    if (!o.preset.empty()) {
        pb.scenario = preset(o.preset);
        pb.from_preset = true;
        pb.data = simulate(pb.scenario, o.seed);
        pb.prior = pb.scenario.prior;
        pb.alpha_default = pb.scenario.alpha;
        pb.single_lambda = pb.scenario.single_lambda;
        pb.source = {{"preset", o.preset}};
    } else {
        double sd = 0.0;
        pb.data = load_csv_dataset(o.input, o.response, o.noise_sd, &sd);
        // defaults for real data; override with --lambda0/--lambda1
        pb.prior.lambda0 = 20.0;
        pb.prior.lambda1 = 0.05;
        pb.prior.theta = ThetaPrior::beta(1.0, double(pb.data.p()));
        pb.source = {{"input", o.input}, {"response", o.response}, {"noise_sd", sd}};
    }
    apply_prior_flags(o, pb.prior, pb.data.p());
    return pb;
}

json prior_json(const SslPrior& p) {
    json j = {{"lambda0", p.lambda0}, {"lambda1", p.lambda1}};
    if (p.theta.is_fixed()) j["theta"] = p.theta.theta;
    else j["theta_beta"] = {p.theta.a, p.theta.b};
    return j;
}

void write_json(const fs::path& path, const json& j) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw ParameterError("cannot write " + path.string());
    f << j.dump(2) << '\n';
}

SolverConfig solver_for(const Problem& pb) {
    SolverConfig cfg;
    if (pb.single_lambda) cfg.ladder = {pb.prior.lambda0};
    return cfg;
}

WeightScheme scheme_for(const Options& o, double alpha) {
    WeightScheme s;
    s.alpha = alpha;
    if (o.weights == "dirichlet") s.kind = WeightScheme::Kind::DirichletScaled;
    else if (o.weights == "gamma") s.kind = WeightScheme::Kind::GammaScaled;
    else throw ParameterError("--weights must be dirichlet or gamma");
    return s;
}

double resolve_alpha(const Options& o, const Problem& pb, double* theta_hat) {
    if (o.alpha.empty()) return pb.alpha_default;
    if (o.alpha != "auto") {
        try {
            size_t used = 0;
            double a = std::stod(o.alpha, &used);
            if (used != o.alpha.size() || !(a > 0.0)) throw std::invalid_argument("");
            return a;
        } catch (const std::logic_error&) {
            throw ParameterError("--alpha must be a positive number or 'auto'");
        }
    }
    double th = pb.prior.theta.theta;
    if (!pb.prior.theta.is_fixed()) {
        SolverConfig cfg = solver_for(pb);
        std::vector<double> ladder = cfg.ladder.empty() ? default_ladder(pb.prior.lambda1, pb.prior.lambda0) : cfg.ladder;
        th = anneal_fit(pb.data, pb.prior, ladder, cfg).theta_hat;
    }
    if (theta_hat) *theta_hat = th;
    return recommended_alpha(pb.prior, th);
}

bool is_mcmc(const std::string& m) { return m == "ssvs" || m == "ssvs-fast" || m == "gibbs2"; }

DrawMatrix run_method(const std::string& method, const Problem& pb, const WeightScheme& sch, int T, int burn_in,
                      int thin, std::uint64_t seed, int threads) {
    SolverConfig cfg = solver_for(pb);
    if (method == "bbssl") return bb_ssl_sample(pb.data, pb.prior, sch, T, cfg, seed, threads);
    if (method == "wbb-fixed")
        return wbb_sample(pb.data, pb.prior, sch, PriorWeight::FixedOne, T, cfg, seed, threads);
    if (method == "wbb-random")
        return wbb_sample(pb.data, pb.prior, sch, PriorWeight::Random, T, cfg, seed, threads);
    if (method == "wlb") return wlb_sample(pb.data, sch, T, seed, threads);
    if (method == "npl") return npl_sample(pb.data, pb.prior, NplConfig{}, T, cfg, seed, threads);
    if (is_mcmc(method)) {
        GibbsConfig gc;
        gc.burn_in = burn_in < 0 ? T / 4 : burn_in;
        gc.T = gc.burn_in + T * thin;  // T kept draws after burn-in and thinning
        gc.thin = thin;
        gc.backend = method == "ssvs" ? GibbsConfig::Backend::Direct
                     : method == "ssvs-fast" ? GibbsConfig::Backend::FastLinearSolver
                                             : GibbsConfig::Backend::OneSite;
        return gibbs_run(pb.data, pb.prior, gc, seed);
    }
    throw ParameterError("unknown method '" + method +
                         "' (known: bbssl, wbb-fixed, wbb-random, wlb, npl, ssvs, ssvs-fast, gibbs2)");
}

// ---------------------------------------------------------------------------

void cmd_sample(const Options& o) {
    Problem pb = load_problem(o);
    if (o.T < 1) throw ParameterError("--T must be >= 1");
    if (o.thin < 1) throw ParameterError("--thin must be >= 1");
    double theta_hat = std::nan("");
    double alpha = resolve_alpha(o, pb, &theta_hat);
    WeightScheme sch = scheme_for(o, o.method == "wlb" || o.method == "npl" ? (o.alpha.empty() ? 1.0 : alpha) : alpha);

    auto t0 = std::chrono::steady_clock::now();
    DrawMatrix d = run_method(o.method, pb, sch, o.T, o.burn_in, o.thin, o.seed, o.threads);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_draws(d, o.out);

    json meta = {{"command", "sample"},
                 {"method", o.method},
                 {"seed", o.seed},
                 {"T", d.T()},
                 {"n", pb.data.n()},
                 {"p", pb.data.p()},
                 {"weights", o.weights},
                 {"alpha", sch.alpha},
                 {"prior", prior_json(pb.prior)},
                 {"source", pb.source}};
    if (is_mcmc(o.method)) {
        meta["burn_in"] = o.burn_in < 0 ? o.T / 4 : o.burn_in;
        meta["thin"] = o.thin;
    }
    if (std::isfinite(theta_hat)) meta["theta_hat"] = theta_hat;
    // thread count and timings describe the run, not the draws
    if (!o.no_timestamp) {
        meta["timestamp"] = now_iso();
        meta["threads"] = o.threads;
        meta["wall_seconds"] = secs;
        meta["seconds_per_draw"] = secs / d.T();
    }
    write_json(fs::path(o.out) / "meta.json", meta);
    std::printf("%s: %d draws x %d coefficients -> %s\n", o.method.c_str(), d.T(), d.p(), o.out.c_str());
}

void cmd_simulate(const Options& o) {
    if (o.preset.empty()) throw ParameterError("simulate needs --preset");
    Problem pb = load_problem(o);
    fs::create_directories(o.out);
    write_dataset_csv(pb.data, (fs::path(o.out) / "dataset.csv").string());
    Eigen::VectorXd truth = pb.scenario.normal_means ? Eigen::VectorXd::Constant(1, pb.scenario.nm_y) : pb.scenario.beta0;
    write_matrix_csv((fs::path(o.out) / "truth.csv").string(), truth, "index", "beta0_");
    json meta = {{"command", "simulate"}, {"preset", o.preset}, {"seed", o.seed}, {"n", pb.data.n()},
                 {"p", pb.data.p()},      {"sigma", pb.scenario.sigma},        {"prior", prior_json(pb.prior)}};
    if (!o.no_timestamp) meta["timestamp"] = now_iso();
    write_json(fs::path(o.out) / "meta.json", meta);
    std::printf("simulated %s: n=%d p=%d -> %s\n", o.preset.c_str(), pb.data.n(), pb.data.p(), o.out.c_str());
}

void cmd_map(const Options& o) {
    Problem pb = load_problem(o);
    SolverConfig cfg = solver_for(pb);
    std::vector<double> ladder = cfg.ladder.empty() ? default_ladder(pb.prior.lambda1, pb.prior.lambda0) : cfg.ladder;
    auto t0 = std::chrono::steady_clock::now();
    MapResult fit = anneal_fit(pb.data, pb.prior, ladder, cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fs::create_directories(o.out);
    write_matrix_csv((fs::path(o.out) / "map.csv").string(), fit.beta, "index", "beta_");
    json meta = {{"command", "map"},          {"seed", o.seed},
                 {"n", pb.data.n()},          {"p", pb.data.p()},
                 {"theta_hat", fit.theta_hat}, {"iterations", fit.iterations},
                 {"converged", fit.converged}, {"objective", fit.objective},
                 {"active_set", fit.active_set}, {"ladder_length", ladder.size()},
                 {"prior", prior_json(pb.prior)}, {"source", pb.source}};
    if (!o.no_timestamp) {
        meta["timestamp"] = now_iso();
        meta["wall_seconds"] = secs;
    }
    write_json(fs::path(o.out) / "meta.json", meta);
    std::printf("MAP: %zu active, theta_hat=%.4g -> %s\n", fit.active_set.size(), fit.theta_hat, o.out.c_str());
}

void cmd_oracle(const Options& o) {
    SequenceModel m;
    std::string pre = o.preset.empty() ? "single-mean" : o.preset;
    Scenario sc = preset(pre);
    if (!sc.normal_means) throw ParameterError("oracle needs a normal-means preset (single-mean, single-mean-l10)");
    m.n = o.nm_n.value_or(double(sc.design.n));
    m.y = o.nm_y.value_or(sc.nm_y);
    m.prior = sc.prior;
    apply_prior_flags(o, m.prior, 1);
    if (!m.prior.theta.is_fixed()) throw ParameterError("oracle needs a fixed theta");
    if (!(m.n > 0.0)) throw ParameterError("--n must be positive");
    OrthantMixture post = exact_posterior(m);

    fs::create_directories(o.out);
    const int G = 2001;
    double lo = post.quantile(1e-4), hi = post.quantile(1.0 - 1e-4);
    Eigen::MatrixXd grid(G, 3);
    for (int i = 0; i < G; ++i) {
        double b = lo + (hi - lo) * i / (G - 1);
        grid.row(i) << b, post.density(b), post.cdf(b);
    }
    {
        std::ofstream f(fs::path(o.out) / "density.csv");
        f << "beta,density,cdf\n";
        for (int i = 0; i < G; ++i)
            f << format_double(grid(i, 0)) << ',' << format_double(grid(i, 1)) << ',' << format_double(grid(i, 2)) << '\n';
    }
    DrawMatrix d;
    d.resize(o.T, 1);
    d.method_tag = "exact";
    RngStream rng(o.seed, 0);
    for (int t = 0; t < o.T; ++t) {
        d.betas(t, 0) = post.sample(rng);
        d.inclusions(t, 0) = d.betas(t, 0) != 0.0 ? 1 : 0;
        d.thetas[t] = m.prior.theta.theta;
    }
    write_draws(d, o.out);
    json meta = {{"command", "oracle"},
                 {"preset", pre},
                 {"n", m.n},
                 {"y", m.y},
                 {"seed", o.seed},
                 {"T", o.T},
                 {"prior", prior_json(m.prior)},
                 {"slab_weight", post.slab_weight()},
                 {"log_normalizer", post.log_normalizer()},
                 {"wbb_estimate_w1", closed_form_wbb(m, 1.0)}};
    if (!o.no_timestamp) meta["timestamp"] = now_iso();
    write_json(fs::path(o.out) / "meta.json", meta);
    std::printf("exact posterior: slab weight %.4g, %d draws -> %s\n", post.slab_weight(), o.T, o.out.c_str());
}

void cmd_compare(const Options& o) {
    if (o.draws_a.empty() || o.draws_b.empty()) throw ParameterError("compare needs --a and --b");
    DrawMatrix a = read_draws(o.draws_a), b = read_draws(o.draws_b);
    if (a.p() != b.p())
        throw ParameterError("compare: draws have " + std::to_string(a.p()) + " and " + std::to_string(b.p()) +
                             " coefficients");
    std::vector<int> active;
    if (!o.truth.empty()) {
        Eigen::MatrixXd t = read_matrix_csv(o.truth);
        if (t.size() != a.p()) throw ParameterError("compare: truth length does not match the draws");
        for (int j = 0; j < a.p(); ++j)
            if (t(j) != 0.0) active.push_back(j);
    }
    DiagnosticsReport r = compare_draws(a, b, active, o.level, o.knn_k);
    json j = to_json(r);
    j["a"] = o.draws_a;
    j["b"] = o.draws_b;
    j["T_a"] = a.T();
    j["T_b"] = b.T();
    fs::path out = o.out;
    if (fs::is_directory(out) || out.extension() != ".json") out /= "report.json";
    write_json(out, j);
    std::printf("KL active %.4g, bias active %.4g, hamming %d -> %s\n", r.kl_active, r.bias_active, r.hamming,
                out.string().c_str());
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);)
        if (!part.empty()) out.push_back(part);
    return out;
}

void cmd_bench(const Options& o) {
    struct Cell {
        int n, p;
    };
    std::vector<Cell> grid;
    for (const auto& g : split(o.grid, ',')) {
        auto np = split(g, 'x');
        if (np.size() != 2) throw ParameterError("--grid entries look like 100x500");
        grid.push_back({std::stoi(np[0]), std::stoi(np[1])});
    }
    std::vector<std::string> methods = split(o.bench_methods, ',');
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / "timings.csv");
    f << "method,n,p,draws,seconds,seconds_per_100\n";
    std::map<std::string, std::vector<std::pair<double, double>>> logs;
    for (const Cell& c : grid) {
        Problem pb;
        pb.scenario = preset("highdim-equi-0.6");
        pb.scenario.design.n = c.n;
        pb.scenario.design.p = c.p;
        pb.scenario.beta0 = Eigen::VectorXd::Zero(c.p);
        Eigen::Vector4d act(2, 3, -3, 4);
        for (int j = 0; j < std::min(4, c.p); ++j) pb.scenario.beta0[j] = act[j];
        pb.scenario.prior.theta = ThetaPrior::beta(1.0, double(c.p));
        pb.data = simulate(pb.scenario, o.seed);
        pb.prior = pb.scenario.prior;
        apply_prior_flags(o, pb.prior, c.p);
        WeightScheme sch = scheme_for(o, 2.0);
        for (const auto& m : methods) {
            if (m == "wlb" && c.p >= c.n) continue;
            auto t0 = std::chrono::steady_clock::now();
            DrawMatrix d = run_method(m, pb, m == "wlb" ? scheme_for(o, 1.0) : sch, o.T, 0, 1, o.seed, o.threads);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            f << m << ',' << c.n << ',' << c.p << ',' << d.T() << ',' << format_double(secs) << ','
              << format_double(100.0 * secs / d.T()) << '\n';
            logs[m].push_back({std::log(double(c.p)), std::log(secs / d.T())});
        }
    }
    json meta = {{"command", "bench"}, {"grid", o.grid}, {"methods", methods}, {"T", o.T}, {"seed", o.seed}};
    if (!o.no_timestamp) {
        // least-squares slope of log time against log p
        json slopes;
        for (const auto& [m, pts] : logs) {
            if (pts.size() < 2) continue;
            double mx = 0, my = 0;
            for (auto [x, y] : pts) { mx += x / pts.size(); my += y / pts.size(); }
            double sxy = 0, sxx = 0;
            for (auto [x, y] : pts) { sxy += (x - mx) * (y - my); sxx += (x - mx) * (x - mx); }
            if (sxx > 0) slopes[m] = sxy / sxx;
        }
        meta["loglog_slope_in_p"] = slopes;
        meta["timestamp"] = now_iso();
        std::cout << "log-log slopes in p: " << slopes.dump() << '\n';
    }
    write_json(fs::path(o.out) / "meta.json", meta);
}

// --config values go in front of the real arguments; with TakeLast the flags win
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) cfg = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) cfg = args[i].substr(9);
    }
    if (cfg.empty() || args.empty()) return args;
    std::vector<std::string> out = {args[0]};
    for (const auto& [k, v] : read_key_value_file(cfg)) {
        if (k == "no-timestamp") {
            if (v == "true" || v == "1") out.push_back("--no-timestamp");
            continue;
        }
        out.push_back("--" + k);
        out.push_back(v);
    }
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Bayesian bootstrap spike-and-slab LASSO sampler and comparison harness"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    std::string config_path;

    auto common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "key=value file; flags override it");
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--out", o.out, "output directory");
        s->add_flag("--no-timestamp", o.no_timestamp, "omit timestamps and wall times from meta.json");
    };
    auto data_opts = [&](CLI::App* s) {
        s->add_option("--preset", o.preset, "simulation preset (see `simulate --help`)");
        s->add_option("--input", o.input, "CSV file with a header row");
        s->add_option("--response", o.response, "response column of --input");
        s->add_option("--noise-sd", o.noise_sd, "noise sd for --input (default: OLS estimate)");
        s->add_option("--lambda0", o.lambda0, "spike rate");
        s->add_option("--lambda1", o.lambda1, "slab rate");
        s->add_option("--theta", o.theta, "fix theta at this value");
        s->add_option("--theta-a", o.theta_a, "Beta prior on theta, first shape");
        s->add_option("--theta-b", o.theta_b, "Beta prior on theta, second shape (default p)");
    };

    std::string preset_help;
    for (const auto& n : preset_names()) preset_help += (preset_help.empty() ? "" : ", ") + n;

    auto* sample = app.add_subcommand("sample", "draw from a posterior or one of its approximations");
    common(sample);
    data_opts(sample);
    sample->add_option("--method", o.method, "bbssl | wbb-fixed | wbb-random | wlb | npl | ssvs | ssvs-fast | gibbs2");
    sample->add_option("--T", o.T, "number of kept draws");
    sample->add_option("--burn-in", o.burn_in, "MCMC burn-in iterations (default T/4)");
    sample->add_option("--thin", o.thin, "MCMC thinning");
    sample->add_option("--alpha", o.alpha, "weight concentration, or 'auto'");
    sample->add_option("--weights", o.weights, "dirichlet | gamma");
    sample->add_option("--threads", o.threads, "worker threads for bootstrap samplers");

    auto* simulate_cmd = app.add_subcommand("simulate", "write a simulated dataset and its truth");
    common(simulate_cmd);
    data_opts(simulate_cmd);
    simulate_cmd->footer("presets: " + preset_help);

    auto* map = app.add_subcommand("map", "annealed MAP fit only");
    common(map);
    data_opts(map);

    auto* oracle = app.add_subcommand("oracle", "exact normal-means posterior: density grid and draws");
    common(oracle);
    oracle->add_option("--preset", o.preset, "single-mean (default) or single-mean-l10");
    oracle->add_option("--n", o.nm_n, "effective sample size");
    oracle->add_option("--y", o.nm_y, "observation");
    oracle->add_option("--lambda0", o.lambda0, "spike rate");
    oracle->add_option("--lambda1", o.lambda1, "slab rate");
    oracle->add_option("--theta", o.theta, "fixed theta");
    oracle->add_option("--T", o.T, "number of exact draws");

    auto* compare = app.add_subcommand("compare", "diagnostics of draws A against reference draws B");
    common(compare);
    compare->add_option("--a", o.draws_a, "approximation: directory or draws.csv")->required();
    compare->add_option("--b", o.draws_b, "reference: directory or draws.csv")->required();
    compare->add_option("--truth", o.truth, "truth.csv; its nonzeros define the active set");
    compare->add_option("--level", o.level, "credible level for the interval distances");
    compare->add_option("--k", o.knn_k, "neighbours for the KL estimate");

    auto* bench = app.add_subcommand("bench", "per-method timings over an (n, p) grid");
    common(bench);
    bench->add_option("--grid", o.grid, "comma list of NxP");
    bench->add_option("--methods", o.bench_methods, "comma list of methods");
    bench->add_option("--T", o.T, "draws (or MCMC iterations) per cell");
    bench->add_option("--threads", o.threads, "worker threads");
    bench->add_option("--lambda0", o.lambda0, "spike rate");
    bench->add_option("--lambda1", o.lambda1, "slab rate");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    std::reverse(args.begin(), args.end());  // CLI11 takes the vector reversed
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        if (*sample) cmd_sample(o);
        else if (*simulate_cmd) cmd_simulate(o);
        else if (*map) cmd_map(o);
        else if (*oracle) cmd_oracle(o);
        else if (*compare) cmd_compare(o);
        else if (*bench) cmd_bench(o);
    } catch (const ComputationError& e) {
        std::cerr << "computation error: " << e.what();
        if (e.stream_index() >= 0) std::cerr << " (stream " << e.stream_index() << ")";
        if (e.iteration() >= 0) std::cerr << " (iteration " << e.iteration() << ")";
        std::cerr << '\n';
        return kComputationError;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kComputationError;
    }
    return 0;
}
