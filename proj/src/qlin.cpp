// Copyright 2026 The hidecap developers.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hidecap/qlin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hidecap::qlin {

namespace {

void require_square(const Matrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
}

void require_hermitian(const Matrix& m, const char* what) {
    if (max_abs(m - m.adjoint()) > kHermitianTol)
        throw ValidationError(std::string(what) + ": not Hermitian within 1e-10");
}

} // namespace

double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double entropy_bits(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double v = p[i];
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

// ---- DensityMatrix ----

DensityMatrix::DensityMatrix(Matrix data) : data_(std::move(data)) {
    require_square(data_, "DensityMatrix");
    require_hermitian(data_, "DensityMatrix");
    const double tr = data_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw ValidationError("DensityMatrix: trace " + std::to_string(tr) +
                              " not within 1e-10 of 1");
    if (dim() <= kPositivityCheckMaxDim) {
        const Eigen::VectorXd evals = hermitian_eigenvalues(data_);
        if (evals.minCoeff() < kStateEigenFloor)
            throw ValidationError("DensityMatrix: eigenvalue " +
                                  std::to_string(evals.minCoeff()) + " below -1e-10");
    }
}

DensityMatrix DensityMatrix::pure(const Vector& unit_vector) {
    const double n = unit_vector.norm();
    if (std::abs(n - 1.0) > 1e-9)
        throw ValidationError("DensityMatrix::pure: vector norm not 1");
    return DensityMatrix(unit_vector * unit_vector.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim < 1) throw ValidationError("maximally_mixed: dim must be >= 1");
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& probs) {
    Matrix m = Matrix::Zero(probs.size(), probs.size());
    for (Eigen::Index i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
    return DensityMatrix(std::move(m));
}

// ---- UnitaryMatrix ----

UnitaryMatrix::UnitaryMatrix(Matrix data) : data_(std::move(data)) {
    require_square(data_, "UnitaryMatrix");
    const Matrix defect = data_.adjoint() * data_ - Matrix::Identity(dim(), dim());
    if (max_abs(defect) > kHermitianTol)
        throw ValidationError("UnitaryMatrix: U^dag U deviates from I by more than 1e-10");
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
    if (dim < 1) throw ValidationError("UnitaryMatrix::identity: dim must be >= 1");
    return UnitaryMatrix(Matrix::Identity(dim, dim));
}

// ---- HermitianOperator ----

HermitianOperator::HermitianOperator(Matrix data) : data_(std::move(data)) {
    require_square(data_, "HermitianOperator");
    require_hermitian(data_, "HermitianOperator");
}

// ---- Pmf ----

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("Pmf: empty");
    double sum = 0.0;
    for (double& v : probs_) {
        if (v < -kPmfEntryTol || v > 1.0 + kPmfEntryTol)
            throw ValidationError("Pmf: entry " + std::to_string(v) + " outside [0,1]");
        v = std::clamp(v, 0.0, 1.0);
        sum += v;
    }
    if (std::abs(sum - 1.0) > kPmfSumTol)
        throw ValidationError("Pmf: sum " + std::to_string(sum) + " not within 1e-10 of 1");
}

double Pmf::entropy() const {
    double h = 0.0;
    for (double v : probs_)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

Pmf Pmf::uniform(std::size_t n) {
    return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// ---- operations ----

UnitaryMatrix haar_unitary(int dim, Rng& rng) {
    if (dim < 1) throw ValidationError("haar_unitary: dim must be >= 1");
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    // Fold the phases of the R diagonal into Q; without this QR is not
    // Haar-distributed.
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return UnitaryMatrix(std::move(q));
}

Vector random_unit_vector(int dim, Rng& rng) {
    if (dim < 1) throw ValidationError("random_unit_vector: dim must be >= 1");
    Vector v(dim);
    double norm2 = 0.0;
    do {
        for (int i = 0; i < dim; ++i) v[i] = rng.complex_gaussian();
        norm2 = v.squaredNorm();
    } while (norm2 <= 0.0);
    return v / std::sqrt(norm2);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::VectorXd evals = hermitian_eigenvalues(rho.data());
    if (evals.minCoeff() < kEntropyEigenFloor)
        throw ValidationError("von_neumann_entropy: eigenvalue below -1e-8, not a state");
    double h = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        const double v = evals[i];
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw ValidationError("trace_distance: dimension mismatch");
    const Eigen::VectorXd evals = hermitian_eigenvalues(rho.data() - sigma.data());
    return evals.cwiseAbs().sum();
}

HermitianOperator symmetric_projector(int dim) {
    if (dim < 1) throw ValidationError("symmetric_projector: dim must be >= 1");
    const int d2 = dim * dim;
    Matrix swap = Matrix::Zero(d2, d2);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) swap(i * dim + j, j * dim + i) = 1.0;
    return HermitianOperator((Matrix::Identity(d2, d2) + swap) / 2.0);
}

double operator_inf_norm(const HermitianOperator& a) {
    const Eigen::VectorXd evals = hermitian_eigenvalues(a.data());
    return evals.cwiseAbs().maxCoeff();
}

// ---- plumbing ----

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector tensor(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

Matrix tensor_power(const Matrix& a, int n) {
    if (n < 1) throw ValidationError("tensor_power: n must be >= 1");
    Matrix out = a;
    for (int i = 1; i < n; ++i) out = tensor(out, a);
    return out;
}

Vector tensor_power(const Vector& a, int n) {
    if (n < 1) throw ValidationError("tensor_power: n must be >= 1");
    Vector out = a;
    for (int i = 1; i < n; ++i) out = tensor(out, a);
    return out;
}

Matrix partial_trace_first(const Matrix& m, int dim_first, int dim_second) {
    if (m.rows() != static_cast<Eigen::Index>(dim_first) * dim_second || m.rows() != m.cols())
        throw ValidationError("partial_trace_first: dimension mismatch");
    Matrix out = Matrix::Zero(dim_second, dim_second);
    for (int a = 0; a < dim_first; ++a)
        out += m.block(a * dim_second, a * dim_second, dim_second, dim_second);
    return out;
}

Matrix partial_trace_second(const Matrix& m, int dim_first, int dim_second) {
    if (m.rows() != static_cast<Eigen::Index>(dim_first) * dim_second || m.rows() != m.cols())
        throw ValidationError("partial_trace_second: dimension mismatch");
    Matrix out = Matrix::Zero(dim_first, dim_first);
    for (int a = 0; a < dim_first; ++a)
        for (int b = 0; b < dim_first; ++b)
            out(a, b) = m.block(a * dim_second, b * dim_second, dim_second, dim_second)
                            .trace();
    return out;
}

Matrix rank_one_projector(const Vector& unit_vector) {
    return unit_vector * unit_vector.adjoint();
}

Matrix permute_factors(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm) {
    const int k = static_cast<int>(dims.size());
    if (perm.size() != dims.size())
        throw ValidationError("permute_factors: perm/dims size mismatch");
    Eigen::Index total = 1;
    for (int d : dims) total *= d;
    if (m.rows() != total || m.cols() != total)
        throw ValidationError("permute_factors: matrix does not match dims");

    // strides of the input factors (row-major multi-index)
    std::vector<Eigen::Index> stride(k, 1);
    for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    std::vector<int> out_dims(k);
    for (int i = 0; i < k; ++i) out_dims[i] = dims[perm[i]];

    Matrix out(total, total);
    std::vector<int> idx_row(k, 0), idx_col(k, 0);
    for (Eigen::Index r = 0; r < total; ++r) {
        // decode output row multi-index, map to input row index
        Eigen::Index rr = r;
        for (int i = k - 1; i >= 0; --i) {
            idx_row[i] = static_cast<int>(rr % out_dims[i]);
            rr /= out_dims[i];
        }
        Eigen::Index src_r = 0;
        for (int i = 0; i < k; ++i) src_r += idx_row[i] * stride[perm[i]];
        for (Eigen::Index c = 0; c < total; ++c) {
            Eigen::Index cc = c;
            for (int i = k - 1; i >= 0; --i) {
                idx_col[i] = static_cast<int>(cc % out_dims[i]);
                cc /= out_dims[i];
            }
            Eigen::Index src_c = 0;
            for (int i = 0; i < k; ++i) src_c += idx_col[i] * stride[perm[i]];
            out(r, c) = m(src_r, src_c);
        }
    }
    return out;
}

} // namespace hidecap::qlin
