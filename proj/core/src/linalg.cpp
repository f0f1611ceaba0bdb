#include "viscobeam/linalg.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

namespace viscobeam::linalg {

Eigen::VectorXd lu_solve(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("lu_solve: matrix must be square");
    if (m.rows() != rhs.size())
        throw std::invalid_argument("lu_solve: size mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0 || diag.minCoeff() <= scale * 1e-300)
        throw NumericalError("lu_solve: singular matrix");
    return lu.solve(rhs);
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rtol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = (sv.size() > 0 ? sv(0) : 0.0) * rtol;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

namespace {

class DenseFactor final : public Factorization {
public:
    explicit DenseFactor(const Eigen::MatrixXd& m) : lu_(m) {
        const double scale = m.cwiseAbs().maxCoeff();
        const double pivot = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
        if (scale == 0.0 || pivot <= scale * 1e-300)
            throw NumericalError("factorize: singular matrix");
    }
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override { return lu_.solve(rhs); }

private:
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

class SparseFactor final : public Factorization {
public:
    explicit SparseFactor(const Eigen::SparseMatrix<double>& m) {
        lu_.compute(m);
        if (lu_.info() != Eigen::Success)
            throw NumericalError("factorize: sparse factorization failed");
    }
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override { return lu_.solve(rhs); }

private:
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

} // namespace

std::unique_ptr<Factorization> factorize(const Eigen::SparseMatrix<double>& m, int dense_limit) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("factorize: matrix must be square");
    if (m.rows() <= dense_limit)
        return std::make_unique<DenseFactor>(Eigen::MatrixXd(m));
    return std::make_unique<SparseFactor>(m);
}

} // namespace viscobeam::linalg
