#include <algorithm>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "voltlab/numerics.hpp"

namespace voltlab {

GenEigen gen_eigen_sym(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error("gen_eigen_sym: a and b must be square and of equal size");
    }
    const Matrix as = 0.5 * (a + a.transpose());
    const Matrix bs = 0.5 * (b + b.transpose());
    Eigen::LLT<Matrix> llt(bs);
    if (llt.info() != Eigen::Success) throw Error("gen_eigen_sym: b is not positive definite");
    const Matrix lower = llt.matrixL();
    if ((lower.diagonal().array() <= 0.0).any()) {
        throw Error("gen_eigen_sym: b is not positive definite");
    }

    // Reduce to the standard problem C w = lambda w with C = L^-1 A L^-T.
    const Matrix linv_a = lower.triangularView<Eigen::Lower>().solve(as);
    const Matrix c = lower.triangularView<Eigen::Lower>().solve(linv_a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.transpose()));
    if (es.info() != Eigen::Success) throw Error("gen_eigen_sym: eigen solver failed");

    const Matrix v = lower.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());
    const auto k = a.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return es.eigenvalues()(i) > es.eigenvalues()(j);
    });
    GenEigen out;
    out.vectors.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        out.values.push_back(es.eigenvalues()(order[static_cast<std::size_t>(i)]));
        out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace voltlab
