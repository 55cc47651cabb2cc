#include "sgspec/types.hpp"

#include <cmath>

namespace sgspec {

GeneratorMatrix::GeneratorMatrix(Matrix m, std::string lbl)
    : entries(std::move(m)), label(std::move(lbl)) {
    if (entries.rows() < 1 || entries.rows() != entries.cols()) {
        throw DomainError("generator matrix must be square with dim >= 1, got " +
                          std::to_string(entries.rows()) + "x" +
                          std::to_string(entries.cols()));
    }
    if (!entries.allFinite()) {
        throw DomainError("generator matrix has non-finite entries");
    }
}

double inf_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double inf_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double log_norm_inf(const Matrix& m) {
    const auto d = m.rows();
    double mu = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d; ++i) {
        double row = m(i, i);
        for (Eigen::Index j = 0; j < d; ++j) {
            if (j != i) row += std::abs(m(i, j));
        }
        mu = std::max(mu, row);
    }
    return mu;
}

bool is_metzler(const Matrix& m, double tol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && m(i, j) < -tol) return false;
        }
    }
    return true;
}

}  // namespace sgspec
