#pragma once

#include <Eigen/Dense>

namespace bbssl {

struct Dataset {
    Eigen::MatrixXd X;  // n x p, column major
    Eigen::VectorXd y;
    double sigma2 = 1.0;
    Eigen::VectorXd col_norms2;

    int n() const { return int(X.rows()); }
    int p() const { return int(X.cols()); }
};

// Validates shapes/finiteness and fills col_norms2.
Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXd y, double sigma2 = 1.0);

}  // namespace bbssl
