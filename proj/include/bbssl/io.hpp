#pragma once

#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "bbssl/bb_ssl.hpp"
#include "bbssl/dataset.hpp"

namespace bbssl {

// %.17g, so doubles round-trip exactly
std::string format_double(double v);

void write_draws(const DrawMatrix& d, const std::string& dir);
DrawMatrix read_draws(const std::string& dir);

// draws.csv only (inclusions.csv / thetas.csv optional alongside it)
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m, const std::string& index_name,
                      const std::string& col_prefix);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

struct CsvTable {
    std::vector<std::string> header;
    Eigen::MatrixXd values;
};
CsvTable read_csv_table(const std::string& path);

// Predictors centred and scaled to ||X_j|| = sqrt(n); y centred and divided by the
// noise sd (given, or estimated from OLS residuals when n > p + 1). sigma2 is then 1.
Dataset load_csv_dataset(const std::string& path, const std::string& response, std::optional<double> noise_sd,
                         double* noise_sd_used = nullptr);

void write_dataset_csv(const Dataset& d, const std::string& path);

// key=value lines, '#' comments, blank lines ignored
std::map<std::string, std::string> read_key_value_file(const std::string& path);

}  // namespace bbssl
