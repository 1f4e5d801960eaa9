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
#include <string>
#include <utility>
#include <vector>

#include "hidecap/channels.hpp"
#include "hidecap/qlin.hpp"
#include "hidecap/rng.hpp"

namespace hidecap::bounds {

using channels::BroadcastChannel;
using qlin::DensityMatrix;

/// Workspace guard for the two-copy gamma computation (operates on d_A^2).
inline constexpr int kGammaMaxInputDim = 12;

/// All derived quantities for one channel: Holevo information of the uniform
/// ensemble, output entropies, the second-moment amplification factor gamma,
/// and the hiding-rate lower bound assembled from them. Entropies in bits.
struct BoundReport {
    double chi = 0.0;
    double chi_stderr = 0.0;
    double s_out_avg = 0.0;        // mean of S(N(psi)) over Haar inputs
    double s_out_avg_stderr = 0.0;
    double s_max_mixed = 0.0;      // S(N(pi))
    double gamma = 0.0;
    double log2_d_plus = 0.0;
    double kappa_lower = 0.0;          // chi - log2 d_+ - log2 gamma, unclamped
    double kappa_lower_clamped = 0.0;  // max(0, kappa_lower); 0 is always achievable
    int chi_samples = 0;
    std::uint64_t seed = 0;
    bool mictodiactic = false;
    bool unital = false;
    bool gamma_outside_paper_scope = false;  // set when the channel is not mictodiactic
    std::string chi_method;    // "exact-first-term+mc" or "mc-both-terms"
    std::string gamma_method;  // "two-copy-eigenvalue"
};

/// Mean photon number and beamsplitter transmissivity for the coherent-state
/// bound. The bound itself does not depend on eta; eta only enters the
/// heterodyne covariance matrix whose determinant cancels it.
struct CoherentBoundInput {
    double n_s;
    double eta;

    CoherentBoundInput(double n_s_, double eta_);
};

/// Holevo information of the channel for the uniform input ensemble,
/// chi = S(int dpsi N(psi)) - int dpsi S(N(psi)), estimated with `samples`
/// Haar-random pure inputs. For mictodiactic channels the first term is the
/// exact log2(d_B d_C); otherwise it is the entropy of the empirical average
/// output. Returns (chi, stderr of the second-term mean).
std::pair<double, double> holevo_uniform(const BroadcastChannel& channel, int samples,
                                         Rng& rng);

/// Closed form for the depolarizing channel:
/// log2 d + (p + (1-p)/d) log2(p + (1-p)/d) + (d-1)((1-p)/d) log2((1-p)/d).
double depolarizing_chi_closed_form(int d, double p);

/// gamma = (2 d_B^2 d_C^2 / (d_A (d_A + 1))) ||(N (x) N)(P_sym)||_inf.
/// Warns (does not fail) when the channel is not mictodiactic; the value is
/// then outside the scope of the defining formula.
double gamma_mictodiactic(const BroadcastChannel& channel);

/// Multipartite version, (2 prod_j d_j^2 / (d_A (d_A + 1))) ||N^(x)2(P_sym)||_inf.
/// Falls back to the bipartite split when no d_list is present.
double gamma_multipartite(const BroadcastChannel& channel);

/// gamma = 2^(2S - S_2 + 3 delta) with S = S(N(pi_A)) and
/// S_2 = S(N^(x)2(P_sym / Tr P_sym)), both in bits.
double gamma_entropy_variant(const BroadcastChannel& channel, double delta);

/// Assembles the full BoundReport: kappa_lower = chi - log2 d_+ - log2 gamma.
/// The unclamped value may be negative and is reported as-is.
BoundReport kappa_lower(const BroadcastChannel& channel, int chi_samples, Rng& rng);

/// Thermal-entropy function g(x) = (x+1) log2(x+1) - x log2 x, g(0) = 0.
double g_function(double x);

/// Coherent-state data-hiding upper bound g(N_S) - log2(1 + N_S).
double coherent_state_upper_bound(const CoherentBoundInput& input);

/// log2(1 + N_S) computed through the 2x2 heterodyne covariance matrix
/// determinant ratio; agrees with the closed form to 1e-12 for all eta.
double heterodyne_mutual_info(const CoherentBoundInput& input);

/// One-shot estimate of the upper-bound objective
/// I(X;BC) - I_acc over product projective measurements. The subtrahend is the
/// best mutual information found over `measurement_trials` Haar-sampled product
/// rank-one bases followed by coordinate-descent refinement, so the returned
/// value is a HEURISTIC that can only over-estimate the true objective.
struct KappaUpperEstimate {
    double value = 0.0;           // I(X;BC) - best found accessible info, floored at 0
    double mi_output = 0.0;       // I(X;BC), exact
    double best_accessible = 0.0; // best I over sampled measurements
    int trials = 0;
    bool heuristic = true;        // always true; the search is not exhaustive
};

KappaUpperEstimate kappa_upper_estimate(
    const BroadcastChannel& channel,
    const std::vector<std::pair<double, DensityMatrix>>& ensemble,
    int measurement_trials, Rng& rng);

/// Number of coordinate-descent refinement passes used by kappa_upper_estimate.
inline constexpr int kMeasurementRefineSteps = 50;

} // namespace hidecap::bounds
