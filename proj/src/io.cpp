#include "bbssl/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbssl/errors.hpp"
#include "bbssl/simgen.hpp"

namespace bbssl {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
        s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    }
    return out;
}

double parse_number(const std::string& s, const std::string& where) {
    if (s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan" || s == "null")
        throw ParameterError("missing value at " + where);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ParameterError("not a number '" + s + "' at " + where);
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParameterError("cannot write " + path);
    return f;
}

}  // namespace

CsvTable read_csv_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(f, line)) throw ParameterError(path + ": empty file");
    t.header = split_csv_line(line);
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.header.size())
            throw ParameterError(path + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(t.header.size()) + " fields");
        std::vector<double> r(cells.size());
        for (size_t c = 0; c < cells.size(); ++c)
            r[c] = parse_number(cells[c], path + ":" + std::to_string(lineno) + " column '" + t.header[c] + "'");
        rows.push_back(std::move(r));
    }
    t.values.resize(Eigen::Index(rows.size()), Eigen::Index(t.header.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t c = 0; c < rows[i].size(); ++c) t.values(Eigen::Index(i), Eigen::Index(c)) = rows[i][c];
    return t;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m, const std::string& index_name,
                      const std::string& col_prefix) {
    auto f = open_out(path);
    f << index_name;
    for (Eigen::Index j = 0; j < m.cols(); ++j) f << ',' << col_prefix << (j + 1);
    f << '\n';
    std::string row;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        row = std::to_string(i + 1);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row += ',';
            row += format_double(m(i, j));
        }
        row += '\n';
        f << row;
    }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    CsvTable t = read_csv_table(path);
    if (t.values.cols() < 2) throw ParameterError(path + ": expected an index column and at least one value column");
    return t.values.rightCols(t.values.cols() - 1);
}

void write_draws(const DrawMatrix& d, const std::string& dir) {
    fs::create_directories(dir);
    write_matrix_csv((fs::path(dir) / "draws.csv").string(), d.betas, "draw_index", "beta_");
    write_matrix_csv((fs::path(dir) / "inclusions.csv").string(), d.inclusions.cast<double>(), "draw_index", "gamma_");
    write_matrix_csv((fs::path(dir) / "thetas.csv").string(), d.thetas, "draw_index", "theta_");
}

DrawMatrix read_draws(const std::string& dir) {
    DrawMatrix d;
    fs::path base = fs::is_directory(dir) ? fs::path(dir) : fs::path(dir).parent_path();
    fs::path draws = fs::is_directory(dir) ? base / "draws.csv" : fs::path(dir);
    d.betas = read_matrix_csv(draws.string());
    fs::path inc = base / "inclusions.csv";
    if (fs::exists(inc)) {
        Eigen::MatrixXd m = read_matrix_csv(inc.string());
        if (m.rows() != d.betas.rows() || m.cols() != d.betas.cols())
            throw ParameterError(inc.string() + ": shape differs from draws.csv");
        d.inclusions = (m.array() != 0.0).cast<std::uint8_t>();
    } else {
        d.inclusions = (d.betas.array() != 0.0).cast<std::uint8_t>();
    }
    fs::path th = base / "thetas.csv";
    if (fs::exists(th)) {
        d.thetas = read_matrix_csv(th.string()).col(0);
    } else {
        d.thetas = Eigen::VectorXd::Constant(d.betas.rows(), std::nan(""));
    }
    return d;
}

Dataset load_csv_dataset(const std::string& path, const std::string& response, std::optional<double> noise_sd,
                         double* noise_sd_used) {
    CsvTable t = read_csv_table(path);
    int yc = -1;
    for (size_t c = 0; c < t.header.size(); ++c)
        if (t.header[c] == response) yc = int(c);
    if (yc < 0) throw ParameterError(path + ": no response column '" + response + "'");
    const Eigen::Index n = t.values.rows(), p = t.values.cols() - 1;
    if (n < 2 || p < 1) throw ParameterError(path + ": need at least 2 rows and 1 predictor");
    Eigen::MatrixXd X(n, p);
    for (Eigen::Index c = 0, k = 0; c < t.values.cols(); ++c)
        if (c != yc) X.col(k++) = t.values.col(c);
    Eigen::VectorXd y = t.values.col(yc);
    standardize_columns(X);
    y.array() -= y.mean();

    double sd;
    if (noise_sd) {
        if (!(*noise_sd > 0.0)) throw ParameterError("noise sd must be positive");
        sd = *noise_sd;
    } else {
        if (n <= p + 1) throw ParameterError("cannot estimate the noise sd by OLS when n <= p + 1; supply it");
        Eigen::VectorXd b = X.colPivHouseholderQr().solve(y);
        double rss = (y - X * b).squaredNorm();
        sd = std::sqrt(rss / double(n - p - 1));
        if (!(sd > 0.0)) throw ComputationError("OLS residual variance is zero");
    }
    if (noise_sd_used) *noise_sd_used = sd;
    y /= sd;
    return make_dataset(std::move(X), std::move(y), 1.0);
}

void write_dataset_csv(const Dataset& d, const std::string& path) {
    auto f = open_out(path);
    f << 'y';
    for (int j = 0; j < d.p(); ++j) f << ",x" << (j + 1);
    f << '\n';
    for (int i = 0; i < d.n(); ++i) {
        f << format_double(d.y[i]);
        for (int j = 0; j < d.p(); ++j) f << ',' << format_double(d.X(i, j));
        f << '\n';
    }
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot open config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError(path + ":" + std::to_string(lineno) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

}  // namespace bbssl
