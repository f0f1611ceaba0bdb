#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <memory>
#include <stdexcept>
#include <vector>

namespace viscobeam {

/// Thrown when a linear solve or a time step breaks down numerically.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace linalg {

/// Direct solve with partial pivoting; throws NumericalError on an exactly
/// singular matrix.
Eigen::VectorXd lu_solve(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs);

/// Singular values in nonincreasing order.
std::vector<double> singular_values(const Eigen::MatrixXd& m);

/// Orthonormal basis of the right null space of m (columns); empty when m
/// has full column rank. Rank is cut at sigma_max * rtol.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rtol = 1e-10);

/// Reusable factorization of a step matrix. The dense path is the semantic
/// reference; systems above `dense_limit` unknowns go through a sparse
/// direct factorization instead.
class Factorization {
public:
    virtual ~Factorization() = default;
    virtual Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const = 0;
};

std::unique_ptr<Factorization> factorize(const Eigen::SparseMatrix<double>& m,
                                         int dense_limit = 2000);

} // namespace linalg
} // namespace viscobeam
