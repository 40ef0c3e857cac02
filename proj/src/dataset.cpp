#include "bbssl/dataset.hpp"

#include "bbssl/errors.hpp"

namespace bbssl {

Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXd y, double sigma2) {
    if (X.rows() < 1 || X.cols() < 1) throw ParameterError("dataset: need n >= 1 and p >= 1");
    if (X.rows() != y.size()) throw ParameterError("dataset: X rows and y length differ");
    if (!X.allFinite() || !y.allFinite()) throw ParameterError("dataset: non-finite entries");
    if (!(sigma2 > 0.0)) throw ParameterError("dataset: sigma2 must be positive");
    Dataset d;
    d.X = std::move(X);
    d.y = std::move(y);
    d.sigma2 = sigma2;
    d.col_norms2 = d.X.colwise().squaredNorm().transpose();
    return d;
}

}  // namespace bbssl
