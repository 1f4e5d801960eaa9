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

#pragma once

#include <optional>
#include <vector>

#include "hidecap/qlin.hpp"

namespace hidecap::channels {

using qlin::DensityMatrix;
using qlin::Matrix;

inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kMictodiacticDefaultTol = 1e-9;

/// Completely positive trace-preserving map in Kraus form. Completeness
/// (sum K^dag K = I) is validated at construction to 1e-9.
class KrausChannel {
  public:
    KrausChannel(int dim_in, int dim_out, std::vector<Matrix> kraus);

    static KrausChannel identity(int dim);

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }

    DensityMatrix apply(const DensityMatrix& rho) const;
    /// Linear action on an arbitrary operator (no state validation). Needed for
    /// things like (N (x) N)(P_sym) whose inputs are not states.
    Matrix apply_operator(const Matrix& x) const;
    /// N(|v><v|) without forming the input projector.
    Matrix apply_to_pure(const qlin::Vector& v) const;

    /// Kraus set of N (x) N (pairwise tensor products).
    KrausChannel two_fold() const;
    /// (N (x) N)(X) applied one factor at a time; same map as
    /// two_fold().apply_operator but without materializing the pairwise Kraus
    /// set (which is quadratic in the Kraus count).
    Matrix two_fold_apply(const Matrix& x) const;
    /// N^(x)n.
    KrausChannel tensor_power(int n) const;

    /// sum K K^dag = I; meaningful only when dim_in == dim_out.
    bool is_unital(double tol = kCompletenessTol) const;

  private:
    int dim_in_;
    int dim_out_;
    std::vector<Matrix> kraus_;
};

/// A channel from one sender to a split output B (x) C (or B_1 (x) ... (x) B_l
/// when d_list is set). The output factorization is declared by the caller;
/// d = d_B * d_C admits several splits and the channel never infers one.
class BroadcastChannel {
  public:
    BroadcastChannel(KrausChannel base, int d_B, int d_C);
    BroadcastChannel(KrausChannel base, std::vector<int> d_list);

    const KrausChannel& base() const { return base_; }
    int d_A() const { return base_.dim_in(); }
    int d_B() const { return d_B_; }
    int d_C() const { return d_C_; }
    int d_out() const { return base_.dim_out(); }
    /// max over receiver dimensions.
    int d_plus() const;
    const std::optional<std::vector<int>>& d_list() const { return d_list_; }

  private:
    KrausChannel base_;
    int d_B_;
    int d_C_;
    std::optional<std::vector<int>> d_list_;
};

/// True iff N(I/d_A) is within tol (trace distance) of I/(d_B d_C).
bool is_mictodiactic(const BroadcastChannel& channel,
                     double tol = kMictodiacticDefaultTol);

/// d-dimensional depolarizing channel X -> p X + (1-p) Tr(X) I/d with the
/// declared output split. Kraus set: sqrt(p + (1-p)/d^2) I together with
/// sqrt((1-p)/d^2) X^a Z^b over (a,b) != (0,0) (Heisenberg-Weyl pairs).
BroadcastChannel depolarizing(int d, double p, int d_B, int d_C);

/// Identity map viewed as a broadcast channel with the declared split.
BroadcastChannel identity_broadcast(int d_B, int d_C);

/// Heisenberg-Weyl shift and clock matrices (X|j> = |j+1 mod d>,
/// Z|j> = w^j |j>, w = exp(2 pi i/d)).
Matrix weyl_shift(int d);
Matrix weyl_clock(int d);

} // namespace hidecap::channels
