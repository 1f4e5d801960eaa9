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

#include "hidecap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hidecap::channels {

using qlin::Complex;

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<Matrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    if (dim_in_ < 1 || dim_out_ < 1)
        throw ValidationError("KrausChannel: dimensions must be >= 1");
    if (kraus_.empty()) throw ValidationError("KrausChannel: empty Kraus set");
    for (const Matrix& k : kraus_)
        if (k.rows() != dim_out_ || k.cols() != dim_in_)
            throw ValidationError("KrausChannel: Kraus operator shape mismatch");
    Matrix completeness = Matrix::Zero(dim_in_, dim_in_);
    for (const Matrix& k : kraus_) completeness += k.adjoint() * k;
    completeness -= Matrix::Identity(dim_in_, dim_in_);
    if (qlin::max_abs(completeness) > kCompletenessTol)
        throw ValidationError("KrausChannel: completeness sum K^dag K deviates from I by " +
                              std::to_string(qlin::max_abs(completeness)));
}

KrausChannel KrausChannel::identity(int dim) {
    return KrausChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
    if (rho.dim() != dim_in_)
        throw ValidationError("KrausChannel::apply: input dimension mismatch");
    return DensityMatrix(apply_operator(rho.data()));
}

Matrix KrausChannel::apply_operator(const Matrix& x) const {
    if (x.rows() != dim_in_ || x.cols() != dim_in_)
        throw ValidationError("KrausChannel::apply_operator: input dimension mismatch");
    Matrix out = Matrix::Zero(dim_out_, dim_out_);
    for (const Matrix& k : kraus_) out += k * x * k.adjoint();
    return out;
}

Matrix KrausChannel::apply_to_pure(const qlin::Vector& v) const {
    if (v.size() != dim_in_)
        throw ValidationError("KrausChannel::apply_to_pure: input dimension mismatch");
    Matrix out = Matrix::Zero(dim_out_, dim_out_);
    for (const Matrix& k : kraus_) {
        const qlin::Vector w = k * v;
        out.noalias() += w * w.adjoint();
    }
    return out;
}

KrausChannel KrausChannel::two_fold() const {
    std::vector<Matrix> pairs;
    pairs.reserve(kraus_.size() * kraus_.size());
    for (const Matrix& a : kraus_)
        for (const Matrix& b : kraus_) pairs.push_back(qlin::tensor(a, b));
    return KrausChannel(dim_in_ * dim_in_, dim_out_ * dim_out_, std::move(pairs));
}

Matrix KrausChannel::two_fold_apply(const Matrix& x) const {
    const Eigen::Index da = dim_in_, db = dim_out_;
    if (x.rows() != da * da || x.cols() != da * da)
        throw ValidationError("two_fold_apply: input must act on dim_in^2");

    // second factor: N acts blockwise over first-factor indices
    Matrix y(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            y.block(i * db, j * db, db, db) =
                apply_operator(x.block(i * da, j * da, da, da));

    // first factor: swap to the back, apply blockwise, swap again
    const Matrix y_swapped = qlin::permute_factors(
        y, {static_cast<int>(da), static_cast<int>(db)}, {1, 0});
    Matrix z(db * db, db * db);
    for (Eigen::Index i = 0; i < db; ++i)
        for (Eigen::Index j = 0; j < db; ++j)
            z.block(i * db, j * db, db, db) =
                apply_operator(y_swapped.block(i * da, j * da, da, da));
    return qlin::permute_factors(z, {static_cast<int>(db), static_cast<int>(db)},
                                 {1, 0});
}

KrausChannel KrausChannel::tensor_power(int n) const {
    if (n < 1) throw ValidationError("KrausChannel::tensor_power: n must be >= 1");
    if (n == 1) return *this;
    KrausChannel prev = tensor_power(n - 1);
    std::vector<Matrix> ops;
    ops.reserve(prev.kraus_.size() * kraus_.size());
    for (const Matrix& a : prev.kraus_)
        for (const Matrix& b : kraus_) ops.push_back(qlin::tensor(a, b));
    int din = 1, dout = 1;
    for (int i = 0; i < n; ++i) {
        din *= dim_in_;
        dout *= dim_out_;
    }
    return KrausChannel(din, dout, std::move(ops));
}

bool KrausChannel::is_unital(double tol) const {
    if (dim_in_ != dim_out_) return false;
    Matrix sum = Matrix::Zero(dim_out_, dim_out_);
    for (const Matrix& k : kraus_) sum += k * k.adjoint();
    sum -= Matrix::Identity(dim_out_, dim_out_);
    return qlin::max_abs(sum) <= tol;
}

BroadcastChannel::BroadcastChannel(KrausChannel base, int d_B, int d_C)
    : base_(std::move(base)), d_B_(d_B), d_C_(d_C) {
    if (d_B_ < 1 || d_C_ < 1)
        throw ValidationError("BroadcastChannel: receiver dimensions must be >= 1");
    if (d_B_ * d_C_ != base_.dim_out())
        throw ValidationError("BroadcastChannel: d_B * d_C != dim_out");
}

BroadcastChannel::BroadcastChannel(KrausChannel base, std::vector<int> d_list)
    : base_(std::move(base)), d_B_(0), d_C_(0), d_list_(std::move(d_list)) {
    if (d_list_->size() < 2)
        throw ValidationError("BroadcastChannel: d_list needs at least two receivers");
    long long prod = 1;
    for (int d : *d_list_) {
        if (d < 1) throw ValidationError("BroadcastChannel: receiver dimension < 1");
        prod *= d;
    }
    if (prod != base_.dim_out())
        throw ValidationError("BroadcastChannel: product of d_list != dim_out");
    // Bipartite view: first receiver vs the rest.
    d_B_ = (*d_list_)[0];
    d_C_ = base_.dim_out() / d_B_;
}

int BroadcastChannel::d_plus() const {
    if (d_list_) {
        int m = 1;
        for (int d : *d_list_) m = std::max(m, d);
        return m;
    }
    return std::max(d_B_, d_C_);
}

bool is_mictodiactic(const BroadcastChannel& channel, double tol) {
    const DensityMatrix pi_in = DensityMatrix::maximally_mixed(channel.d_A());
    const DensityMatrix out = channel.base().apply(pi_in);
    const DensityMatrix pi_out = DensityMatrix::maximally_mixed(channel.d_out());
    return qlin::trace_distance(out, pi_out) <= tol;
}

Matrix weyl_shift(int d) {
    Matrix x = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
    return x;
}

Matrix weyl_clock(int d) {
    Matrix z = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi * j / d;
        z(j, j) = Complex(std::cos(phase), std::sin(phase));
    }
    return z;
}

BroadcastChannel depolarizing(int d, double p, int d_B, int d_C) {
    if (d < 1) throw ValidationError("depolarizing: d must be >= 1");
    if (p < 0.0 || p > 1.0) throw ValidationError("depolarizing: p must be in [0,1]");
    if (d_B * d_C != d) throw ValidationError("depolarizing: split does not factor d");

    const double w0 = p + (1.0 - p) / (d * d);
    const double w1 = (1.0 - p) / (d * d);
    std::vector<Matrix> kraus;
    kraus.reserve(static_cast<std::size_t>(d) * d);
    kraus.push_back(std::sqrt(w0) * Matrix::Identity(d, d));
    if (w1 > 0.0) {
        const Matrix x = weyl_shift(d);
        const Matrix z = weyl_clock(d);
        Matrix xa = Matrix::Identity(d, d);
        for (int a = 0; a < d; ++a) {
            Matrix xazb = xa;
            for (int b = 0; b < d; ++b) {
                if (a != 0 || b != 0) kraus.push_back(std::sqrt(w1) * xazb);
                xazb = xazb * z;
            }
            xa = x * xa;
        }
    }
    return BroadcastChannel(KrausChannel(d, d, std::move(kraus)), d_B, d_C);
}

BroadcastChannel identity_broadcast(int d_B, int d_C) {
    return BroadcastChannel(KrausChannel::identity(d_B * d_C), d_B, d_C);
}

} // namespace hidecap::channels
