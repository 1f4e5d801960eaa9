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
#include <utility>
#include <vector>

#include "hidecap/channels.hpp"
#include "hidecap/codes.hpp"
#include "hidecap/qlin.hpp"

namespace hidecap::security {

using channels::BroadcastChannel;
using codes::CodeBook;
using qlin::Matrix;
using qlin::Pmf;
using qlin::Vector;

/// A separable measurement with rank-one product outcomes across the B/C cut.
///
/// Projective kind: outcomes are all pairs from two orthonormal bases, weight 1,
/// and the elements sum to the identity.
///
/// Quasi kind: s sampled outcomes with weight (D_B D_C)^2 / s each; f records
/// the smallest constant with sum <= f I. Outcome statistics of this kind are
/// not normalized; the deficit 1 - sum is carried by the caller.
struct ProductMeasurement {
    enum class Kind { ProjectiveSeparable, Quasi };

    struct Outcome {
        Vector b;      // unit vector on the D_B-dimensional B side
        Vector c;      // unit vector on the D_C side
        double weight; // scalar multiplying the rank-one product element
    };

    Kind kind = Kind::ProjectiveSeparable;
    int d_B = 1; // total B-side dimension (d_B^n)
    int d_C = 1;
    std::vector<Outcome> outcomes;
    double f = 1.0; // quasi only: sum of elements <= f I

    static ProductMeasurement projective_from_bases(const Matrix& b_basis,
                                                    const Matrix& c_basis);
    static ProductMeasurement computational(int d_B, int d_C);
    static ProductMeasurement random_projective(int d_B, int d_C, Rng& rng);
};

/// (s, f)-separable quasi-measurement with Haar-sampled product directions;
/// f is measured from the sampled set.
ProductMeasurement quasi_measurement_sample(int d_B, int d_C, int s, Rng& rng);

/// One evaluated security probe: which codeword, which measurement, and the
/// resulting conditional outcome distribution.
struct SecuritySample {
    int x = 0;
    std::uint64_t scramble_seed = 0;
    std::vector<double> outcome_weights; // sums to 1 for projective kind
    double deficit = 0.0;                // 1 - sum (nonzero for quasi kind)
};

/// Measures N^(x)n(rho(x)) for the codebook's own scrambling tuple and records
/// the outcome statistics (normalization deficit included for quasi kinds).
SecuritySample make_security_sample(const CodeBook& cb, const BroadcastChannel& channel,
                                    int x, const ProductMeasurement& m);

/// Vector on (d_B d_C)^n whose tensor factors interleave as B1 C1 B2 C2 ...,
/// matching the channel-output ordering.
Vector interleave_product(const Vector& b, const Vector& c, int d_B, int d_C, int n);

/// Raw outcome weights Tr[w phi_B (x) phi_C rho] for a state on (d_B d_C)^n.
std::vector<double> measurement_statistics(const Matrix& state,
                                           const ProductMeasurement& m, int n);

/// Exact conditional outcome distribution p_{Y|U}(y) of measuring
/// N^(x)n(rho(x)) for the codebook's own scrambling tuple. Projective
/// measurements only (the result is a normalized Pmf).
Pmf conditional_pmf(const CodeBook& cb, const BroadcastChannel& channel, int x,
                    const ProductMeasurement& m);

/// Plug-in estimate of I(Y;U) = H(Y) - H(Y|U) over fresh Haar scrambling
/// tuples, with jackknife standard error. bias_note records the usual plug-in
/// bias scale (|Y|-1)/(2 u_samples ln 2); the estimate is reported uncorrected.
struct MiEstimate {
    double mi = 0.0;
    double stderr_jackknife = 0.0;
    double bias_note = 0.0;
    int u_samples = 0;
};

MiEstimate mutual_info_y_u(const BroadcastChannel& channel, int n, int M, int K,
                           int x, const ProductMeasurement& m, int u_samples,
                           Rng& rng);

/// Monte-Carlo average over scrambling tuples of the l1 distance between
/// p_{Y|U} and the reference distribution (uniform for mictodiactic channels,
/// the measured distribution of N^(x)n(pi) otherwise).
struct SecurityDistance {
    double value = 0.0;
    double stderr_mc = 0.0;
    bool uniform_reference = true;
};

SecurityDistance security_trace_distance(const CodeBook& cb,
                                         const BroadcastChannel& channel,
                                         const ProductMeasurement& m, int u_samples,
                                         Rng& rng);

/// Maurer lower-tail bound exp(-K tau^2 / (2 E[X^2])).
double maurer_bound(double expectation, double second_moment, double k, double tau);

/// Chernoff upper-tail bound exp(-K tau^2 mu / (4 ln 2)); requires
/// (1 + tau) mu <= 1.
double chernoff_bound(double mu, double k, double tau);

/// Empirical moments of X = Tr[(phi_B (x) phi_C) N^(x)n(U psi U^dag)] over
/// Haar-random inputs, with consistency flags against the first-moment value
/// 1/(d_B d_C)^n and (optionally) a reference gamma.
struct XkMoments {
    double mean = 0.0;
    double mean_stderr = 0.0;
    double second_moment = 0.0;
    double second_moment_stderr = 0.0;
    double gamma_empirical = 0.0;
    double gamma_stderr = 0.0;
    int samples = 0;
    bool mean_consistent = false;
    bool gamma_consistent = false; // only meaningful when gamma_reference > 0
};

XkMoments xk_moments(const BroadcastChannel& channel, int n, const Vector& b_vec,
                     const Vector& c_vec, int mc_samples, Rng& rng,
                     double gamma_reference = 0.0);

/// Greedy-random epsilon-net of unit vectors under the trace distance of the
/// corresponding rank-one projectors. For dim <= 4 the constructor keeps
/// inserting until 1e5 consecutive probes land within epsilon of a member (the
/// Monte-Carlo covering certificate); larger dimensions stop early and are
/// flagged unverified.
struct EpsilonNet {
    std::vector<Vector> members;
    bool verified = false;
    long long certificate_probes = 0;
};

EpsilonNet epsilon_net(int dim, double epsilon, Rng& rng, long long max_size);

inline constexpr int kNetVerifiedMaxDim = 4;
inline constexpr long long kNetCertificateProbes = 100'000;

/// Trace distance of two rank-one projectors, 2 sqrt(1 - |<a|b>|^2).
double pure_state_trace_distance(const Vector& a, const Vector& b);

/// Penalty for passing from quasi- to generic separable measurements:
/// 4 (D_B D_C)^2 exp(-s (f - 1)^2 / (D_B D_C * 2 ln 2)).
double quasi_penalty(int d_B_total, int d_C_total, long long s, double f);

/// Identity between the decoding error probability and the trace distance
/// of the joint distributions: returns (Pr{M' != M},
/// (1/2)||p_MM' - q_MM'||_1). q_channel columns are the conditional
/// distributions q(m'|m).
std::pair<double, double> trace_dist_equals_error_prob(const Pmf& p_m,
                                                       const Eigen::MatrixXd& q_channel);

// ---- sweep driver shared by the CLI and the acceptance suite ----

struct SweepParams {
    int n = 1;
    int K = 16;
    int u_samples = 32;
    int n_measurements = 200;
    int threads = 1;
};

struct MeasurementReport {
    double mi = 0.0;
    double mi_stderr = 0.0;
    double bias_note = 0.0;
    double sec_dist = 0.0;
    double sec_dist_stderr = 0.0;
    double pinsker_rhs = 0.0; // sqrt(2 ln2 mi) + 4 stderr
    bool pinsker_ok = false;
};

struct SweepResult {
    std::vector<MeasurementReport> measurements;
    double worst_mi = 0.0;
    int worst_index = -1;
    bool all_pinsker_ok = true;
    bool uniform_reference = true;
};

/// Samples n_measurements product projective measurements and evaluates them
/// against u_samples fresh scrambling tuples of size K (states sampled directly
/// as Haar product vectors, which is exact in distribution).
SweepResult security_sweep(const BroadcastChannel& channel, const SweepParams& params,
                           Rng& rng);

/// True when means[i+1] <= means[i] + sigmas * combined stderr for every step.
bool non_increasing_within(const std::vector<double>& means,
                           const std::vector<double>& stderrs, double sigmas);

} // namespace hidecap::security
