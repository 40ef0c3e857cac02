#include "bbssl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bbssl/errors.hpp"

namespace bbssl {

namespace {

// autocovariances up to max_lag, normalised by T
struct AutoCov {
    Eigen::VectorXd x;
    double c0 = 0.0;
    explicit AutoCov(const Eigen::Ref<const Eigen::VectorXd>& chain) {
        x = chain.array() - chain.mean();
        c0 = x.squaredNorm() / double(x.size());
    }
    double rho(Eigen::Index lag) const {
        const Eigen::Index T = x.size();
        if (lag >= T) return 0.0;
        double s = x.head(T - lag).dot(x.tail(T - lag));
        return s / double(T) / c0;
    }
};

// k-th nearest distance from v in a sorted array; `self` is the index of v itself
// in that array (skipped) or -1.
double kth_distance(const std::vector<double>& a, double v, int k, long self) {
    long n = long(a.size());
    long r = long(std::lower_bound(a.begin(), a.end(), v) - a.begin());
    long l = r - 1;
    if (self >= 0) {
        l = self - 1;
        r = self + 1;
    }
    double d = 0.0;
    for (int c = 0; c < k; ++c) {
        double dl = l >= 0 ? v - a[l] : INFINITY;
        double dr = r < n ? a[r] - v : INFINITY;
        if (dl <= dr) {
            d = dl;
            --l;
        } else {
            d = dr;
            ++r;
        }
    }
    return d;
}

}  // namespace

EssResult ess(const Eigen::Ref<const Eigen::VectorXd>& chain) {
    const Eigen::Index T = chain.size();
    if (T < 10) throw ParameterError("ess: need at least 10 draws");
    EssResult out;
    AutoCov ac(chain);
    if (!(ac.c0 > 0.0)) {
        out.value = double(T);
        out.degenerate = true;
        return out;
    }
    // tau = -1 + 2 sum_m Gamma_m, Gamma_m = rho(2m) + rho(2m+1), truncated at the
    // first non-positive pair and forced monotone
    double sum = 0.0;
    double prev = INFINITY;
    for (Eigen::Index m = 0; 2 * m + 1 < T; ++m) {
        double g = (m == 0 ? 1.0 : ac.rho(2 * m)) + ac.rho(2 * m + 1);
        if (g <= 0.0) break;
        g = std::min(g, prev);
        prev = g;
        sum += g;
    }
    double tau = -1.0 + 2.0 * sum;
    double v = tau > 0.0 ? double(T) / tau : double(T);
    out.value = std::clamp(v, 1.0, double(T));
    return out;
}

double lag1_autocorrelation(const Eigen::Ref<const Eigen::VectorXd>& chain) {
    if (chain.size() < 3) return 0.0;
    AutoCov ac(chain);
    if (!(ac.c0 > 0.0)) return 0.0;
    return ac.rho(1);
}

KlResult knn_kl(const std::vector<double>& p, const std::vector<double>& q, int k) {
    if (k < 1) throw ParameterError("knn_kl: k must be >= 1");
    if (long(p.size()) < k + 1 || long(q.size()) < k + 1)
        throw ParameterError("knn_kl: both sample sets need at least k+1 points");
    std::vector<double> ps = p, qs = q;
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());
    const double n = double(ps.size()), m = double(qs.size());
    KlResult out;
    double acc = 0.0;
    for (size_t i = 0; i < ps.size(); ++i) {
        double rho = kth_distance(ps, ps[i], k, long(i));
        double nu = kth_distance(qs, ps[i], k, -1);
        if (rho < 1e-12) {
            rho = 1e-12;
            ++out.zero_distances;
        }
        if (nu < 1e-12) {
            nu = 1e-12;
            ++out.zero_distances;
        }
        acc += std::log(nu / rho);
    }
    out.value = acc / n + std::log(m / (n - 1.0));
    return out;
}

double knn_kl_value(const Eigen::Ref<const Eigen::VectorXd>& p, const Eigen::Ref<const Eigen::VectorXd>& q, int k) {
    std::vector<double> a(p.data(), p.data() + p.size()), b(q.data(), q.data() + q.size());
    return knn_kl(a, b, k).value;
}

double empirical_quantile(std::vector<double> v, double q, bool already_sorted) {
    if (v.empty()) throw ParameterError("empirical_quantile: empty sample");
    if (!already_sorted) std::sort(v.begin(), v.end());
    double h = (double(v.size()) - 1.0) * q;
    size_t lo = size_t(std::floor(h));
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (h - double(lo)) * (v[lo + 1] - v[lo]);
}

Interval credible_interval(const Eigen::Ref<const Eigen::VectorXd>& draws, double level) {
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("credible_interval: level must lie in (0,1)");
    std::vector<double> v(draws.data(), draws.data() + draws.size());
    std::sort(v.begin(), v.end());
    double a = 0.5 * (1.0 - level);
    return {empirical_quantile(v, a, true), empirical_quantile(v, 1.0 - a, true)};
}

double jaccard_interval(const Interval& a, const Interval& b) {
    if (a.lo > a.hi || b.lo > b.hi) throw ParameterError("jaccard_interval: lo > hi");
    double overlap = std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
    double uni = (a.hi - a.lo) + (b.hi - b.lo) - overlap;
    if (uni <= 0.0) return (a.lo == b.lo && a.hi == b.hi) ? 0.0 : 1.0;
    return 1.0 - overlap / uni;
}

Eigen::VectorXd mip(const DrawMatrix& draws) {
    if (draws.T() == 0) throw ParameterError("mip: no draws");
    return draws.inclusions.cast<double>().colwise().mean().transpose();
}

int median_model_hamming(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw ParameterError("median_model_hamming: length mismatch");
    int h = 0;
    for (Eigen::Index j = 0; j < a.size(); ++j) h += (a[j] >= 0.5) != (b[j] >= 0.5);
    return h;
}

BiasPair l1_bias(const DrawMatrix& a, const DrawMatrix& b, const std::vector<int>& active_set) {
    if (a.p() != b.p()) throw ParameterError("l1_bias: p mismatch");
    Eigen::VectorXd gap = (a.betas.colwise().mean() - b.betas.colwise().mean()).cwiseAbs().transpose();
    std::vector<char> on(a.p(), 0);
    for (int j : active_set) on.at(j) = 1;
    BiasPair out;
    int na = 0, ni = 0;
    for (int j = 0; j < a.p(); ++j) {
        if (on[j]) {
            out.active += gap[j];
            ++na;
        } else {
            out.inactive += gap[j];
            ++ni;
        }
    }
    if (na) out.active /= na;
    if (ni) out.inactive /= ni;
    return out;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ParameterError("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    const double na = double(a.size()), nb = double(b.size());
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::fabs(double(i) / na - double(j) / nb));
    }
    return d;
}

double ks_distance(std::vector<double> a, const std::function<double(double)>& cdf) {
    if (a.empty()) throw ParameterError("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    const double n = double(a.size());
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double f = cdf(a[i]);
        d = std::max({d, std::fabs(double(i + 1) / n - f), std::fabs(f - double(i) / n)});
    }
    return d;
}

DiagnosticsReport compare_draws(const DrawMatrix& a, const DrawMatrix& b, std::vector<int> active_set,
                                double level, int k) {
    if (a.p() != b.p()) throw ParameterError("compare: draw matrices have different p");
    const int p = a.p();
    DiagnosticsReport r;
    r.level = level;
    r.mip = mip(a);
    r.mip_ref = mip(b);
    r.hamming = median_model_hamming(r.mip, r.mip_ref);
    if (active_set.empty())
        for (int j = 0; j < p; ++j)
            if (r.mip_ref[j] >= 0.5) active_set.push_back(j);
    r.active_set = active_set;
    std::vector<char> on(p, 0);
    for (int j : active_set) on.at(j) = 1;

    int na = 0, ni = 0;
    r.ess.resize(p);
    for (int j = 0; j < p; ++j) {
        Eigen::VectorXd ca = a.betas.col(j), cb = b.betas.col(j);
        KlResult kl = knn_kl(std::vector<double>(ca.data(), ca.data() + ca.size()),
                             std::vector<double>(cb.data(), cb.data() + cb.size()), k);
        r.kl_zero_distances += kl.zero_distances;
        double jd = jaccard_interval(credible_interval(ca, level), credible_interval(cb, level));
        r.ess[j] = a.T() >= 10 ? ess(ca).value : double(a.T());
        if (on[j]) {
            r.kl_active += kl.value;
            r.jaccard_active += jd;
            ++na;
        } else {
            r.kl_inactive += kl.value;
            r.jaccard_inactive += jd;
            ++ni;
        }
    }
    if (na) {
        r.kl_active /= na;
        r.jaccard_active /= na;
    }
    if (ni) {
        r.kl_inactive /= ni;
        r.jaccard_inactive /= ni;
    }
    BiasPair bias = l1_bias(a, b, active_set);
    r.bias_active = bias.active;
    r.bias_inactive = bias.inactive;
    return r;
}

nlohmann::json to_json(const DiagnosticsReport& r) {
    auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    nlohmann::json j;
    j["kl_active"] = r.kl_active;
    j["kl_inactive"] = r.kl_inactive;
    j["jaccard_active"] = r.jaccard_active;
    j["jaccard_inactive"] = r.jaccard_inactive;
    j["bias_active"] = r.bias_active;
    j["bias_inactive"] = r.bias_inactive;
    j["hamming"] = r.hamming;
    j["level"] = r.level;
    j["active_set"] = r.active_set;
    j["mip"] = vec(r.mip);
    j["mip_reference"] = vec(r.mip_ref);
    j["ess"] = vec(r.ess);
    j["kl_zero_distances"] = r.kl_zero_distances;
    return j;
}

}  // namespace bbssl
