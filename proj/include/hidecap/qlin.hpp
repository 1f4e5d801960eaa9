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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hidecap/errors.hpp"
#include "hidecap/rng.hpp"

namespace hidecap::qlin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerances used by all state/operator validation. Sized for double-precision
/// eigensolvers at the dimensions this library targets (<= 64, occasionally a
/// few hundred in the coding module).
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kStateEigenFloor = -1e-10;
inline constexpr double kEntropyEigenFloor = -1e-8;
inline constexpr double kPmfEntryTol = 1e-12;
inline constexpr double kPmfSumTol = 1e-10;

/// Positivity validation eigendecomposes the matrix, which is O(dim^3); above
/// this dimension construction checks Hermiticity and trace only.
inline constexpr int kPositivityCheckMaxDim = 256;

double max_abs(const Matrix& m);

/// Density operator: Hermitian, PSD, unit trace (all within the tolerances
/// above). Immutable after construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix data);

    static DensityMatrix pure(const Vector& unit_vector);
    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix diagonal(const Eigen::VectorXd& probs);

    int dim() const { return static_cast<int>(data_.rows()); }
    const Matrix& data() const { return data_; }

  private:
    Matrix data_;
};

/// Unitary matrix, |U^dag U - I| <= 1e-10 entrywise.
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(Matrix data);

    static UnitaryMatrix identity(int dim);

    int dim() const { return static_cast<int>(data_.rows()); }
    const Matrix& data() const { return data_; }

  private:
    Matrix data_;
};

/// Hermitian operator; no trace or positivity constraint.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix data);

    int dim() const { return static_cast<int>(data_.rows()); }
    const Matrix& data() const { return data_; }

  private:
    Matrix data_;
};

/// Probability mass function. Entries may carry rounding noise within
/// [-1e-12, 1+1e-12] at construction and are clamped to [0, 1]; the sum must be
/// within 1e-10 of one.
class Pmf {
  public:
    explicit Pmf(std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    /// Shannon entropy in bits.
    double entropy() const;

    static Pmf uniform(std::size_t n);

  private:
    std::vector<double> probs_;
};

/// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
/// R diagonal phases folded into Q.
UnitaryMatrix haar_unitary(int dim, Rng& rng);

/// Uniform random unit vector (equal in distribution to haar_unitary * e_0).
Vector random_unit_vector(int dim, Rng& rng);

/// Von Neumann entropy in bits. Throws ValidationError if an eigenvalue is
/// below -1e-8.
double von_neumann_entropy(const DensityMatrix& rho);

/// Unnormalized trace distance ||rho - sigma||_1, in [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Projector (I + SWAP)/2 onto the symmetric subspace of two dim-dimensional
/// factors. Trace is dim (dim + 1) / 2.
HermitianOperator symmetric_projector(int dim);

/// Largest absolute eigenvalue.
double operator_inf_norm(const HermitianOperator& a);

// ---- plumbing ----

Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);
Matrix tensor_power(const Matrix& a, int n);
Vector tensor_power(const Vector& a, int n);

/// Trace out the first (dim_first-dimensional) factor of an operator on
/// H_first (x) H_second.
Matrix partial_trace_first(const Matrix& m, int dim_first, int dim_second);
/// Trace out the second factor.
Matrix partial_trace_second(const Matrix& m, int dim_first, int dim_second);

Matrix rank_one_projector(const Vector& unit_vector);

/// Reorders tensor factors: factor j of the result is factor perm[j] of the
/// input. dims lists the input factor dimensions in order.
Matrix permute_factors(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm);

/// Eigenvalues of a Hermitian matrix, ascending. The single spectral primitive:
/// entropies, norms, and positivity checks all route through it.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Shannon entropy in bits of an arbitrary nonnegative vector summing to ~1.
double entropy_bits(const Eigen::VectorXd& p);

} // namespace hidecap::qlin
