// Operator norms in the standard (orthonormal-monomial) metric. Numeric
// only: exact coefficients are lowered to complex doubles and the largest
// singular value is computed with Eigen.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <complex>
#include <vector>

#include "linalg.hpp"
#include "total_weil.hpp"
#include "weil_element.hpp"

namespace weilforge {

using CMatrix = Eigen::MatrixXcd;

template <class K>
CMatrix to_complex_matrix(const DenseMatrix<K>& A) {
    CMatrix M(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) M(i, j) = A.at(i, j).to_complex();
    return M;
}

inline double operator_norm(const CMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(M);
    return svd.singularValues()(0);
}

// Largest singular value of a linear operator on an enumerated source
// piece; the image basis is collected from the images themselves.
template <class K, class Op>
double standard_norm(const std::vector<Monomial>& source, Op&& op, int dim) {
    if (source.empty()) return 0.0;
    std::map<Monomial, int> idx;
    std::vector<std::vector<std::pair<int, std::complex<double>>>> cols;
    for (const auto& m : source) {
        WeilElement<K> img = op(WeilElement<K>::monomial(m, K::one()));
        std::vector<std::pair<int, std::complex<double>>> col;
        for (const auto& [tm, tc] : img.terms()) {
            auto it = idx.find(tm);
            int id;
            if (it == idx.end()) {
                id = static_cast<int>(idx.size());
                idx.emplace(tm, id);
            } else {
                id = it->second;
            }
            col.push_back({id, tc.to_complex()});
        }
        cols.push_back(std::move(col));
    }
    CMatrix M = CMatrix::Zero(std::max<size_t>(idx.size(), 1), source.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto& [i, v] : cols[j]) M(i, static_cast<int>(j)) = v;
    return operator_norm(M);
}

// Eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& M) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(M);
    std::vector<double> out(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

}  // namespace weilforge
