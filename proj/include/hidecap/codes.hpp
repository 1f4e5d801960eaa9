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

#include <cstdint>
#include <vector>

#include "hidecap/channels.hpp"
#include "hidecap/qlin.hpp"

namespace hidecap::codes {

using channels::BroadcastChannel;
using qlin::DensityMatrix;
using qlin::HermitianOperator;
using qlin::Matrix;
using qlin::Pmf;
using qlin::UnitaryMatrix;
using qlin::Vector;

/// Dense workspaces are capped at this dimension (d_A^n on the input side,
/// (d_B d_C)^n on the output side).
inline constexpr int kWorkspaceMaxDim = 4096;
/// typical_projector enumerates eigenvalue strings; cap on their count.
inline constexpr long long kMaxTypicalStrings = 1'000'000;
/// Relative eigenvalue cutoff under which T^{-1/2} treats directions as
/// outside the support.
inline constexpr double kPgmSupportCutoff = 1e-12;

/// The (n, M, K) random-coding artifact: per-use message unitaries V_xj and
/// scrambling unitaries U_kj, all i.i.d. Haar. Message x encodes to the pure
/// state (x)_j V_xj |0>, scrambled by U_k = (x)_j U_kj. Indices are 0-based.
struct CodeBook {
    int n = 1;
    int M = 1;
    int K = 1;
    int d_A = 2;
    std::uint64_t seed = 0;
    std::vector<std::vector<UnitaryMatrix>> v; // [M][n]
    std::vector<std::vector<UnitaryMatrix>> u; // [K][n]

    /// Test hook: build from explicit (possibly non-Haar) unitaries.
    static CodeBook from_unitaries(int n, int d_A,
                                   std::vector<std::vector<UnitaryMatrix>> v,
                                   std::vector<std::vector<UnitaryMatrix>> u,
                                   std::uint64_t seed = 0);

    /// V_x |0...0> on dimension d_A^n.
    Vector message_vector(int x) const;
    /// U_k V_x |0...0>.
    Vector scrambled_vector(int k, int x) const;
};

CodeBook generate_codebook(int n, int M, int K, int d_A, Rng& rng);

/// rho(x) = (1/K) sum_k U_k psi(x) U_k^dag. Rank <= K.
DensityMatrix codeword(const CodeBook& cb, int x);

/// Square-root (pretty good) measurement built from the operators themselves:
/// Lambda_i = T^{-1/2} Gamma_i T^{-1/2}, T = sum Gamma, pseudo-inverse on the
/// joint support.
struct PgmResult {
    std::vector<HermitianOperator> elements;
    double completeness_defect; // ||sum Lambda - P_support||_inf
};

PgmResult pgm_decoder(const std::vector<DensityMatrix>& output_states);
PgmResult pgm_from_operators(const std::vector<Matrix>& gammas);

/// Full decode statistics for one codebook through n uses of the channel.
struct DecodeResult {
    double avg_error = 0.0;
    /// confusion(a, b) = probability of decoding pair b when pair a = (x,k) was
    /// sent; pairs are flattened as x*K + k. Success probabilities sit on the
    /// diagonal.
    Eigen::MatrixXd confusion;
    double povm_completeness_defect = 0.0;
    int M = 0;
    int K = 0;

    double success(int x, int k) const { return confusion(x * K + k, x * K + k); }
};

/// Exact average error of the PGM decoder over all (x, k) hypotheses. When
/// use_typicality is set, each Gamma is sandwiched between the unconditional
/// typical projector of N(pi)^(x)n (width delta0) and the conditional typical
/// projector of the pair's output (width delta1, centered on the codebook's
/// mean output entropy) before the square root.
DecodeResult decode_error(const CodeBook& cb, const BroadcastChannel& channel,
                          bool use_typicality = false, double delta0 = 0.0,
                          double delta1 = 0.0);

/// Membership of each eigenvalue string of spectrum^(x)n in the delta-weakly
/// typical set: | -(1/n) log2 p(y^n) - H | <= delta. Strings with a zero factor
/// are never typical.
std::vector<char> typical_membership(const Pmf& spectrum, int n, double delta);

/// Dense diagonal projector onto the typical strings, in the tensor-power
/// ordering of the spectrum's index set.
HermitianOperator typical_projector(const Pmf& spectrum, int n, double delta);

/// Rate bookkeeping: the scrambling rate needed for security and the message
/// rate left over from the correctness budget.
struct RatePlan {
    int n, d_A, d_B, d_C;
    double s_max_mixed, s_out_avg;
    double delta0, delta1, delta2, lambda;
    double log_M_rate; // bits per channel use
    double log_K_rate;
    bool message_rate_positive;
};

RatePlan rate_plan(int n, int d_A, int d_B, int d_C, double s_max_mixed,
                   double s_out_avg, double delta0, double delta1, double delta2,
                   double lambda, double gamma);

/// K(n, d_B, d_C, delta2) = 8 d_+^n gamma^n delta2^-2 log2(10 d^n / delta2).
/// Base-2 logarithm throughout.
double k_threshold(int n, int d_B, int d_C, double delta2, double gamma);

} // namespace hidecap::codes
