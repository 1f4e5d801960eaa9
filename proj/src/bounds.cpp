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

#include "hidecap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hidecap::bounds {

using channels::KrausChannel;
using qlin::Complex;
using qlin::Matrix;
using qlin::Vector;

namespace {

constexpr double kLn2 = std::numbers::ln2;

double log2_stable(double x) { return std::log2(x); }

/// Mutual information in bits of a joint distribution given as a matrix
/// (rows = first variable). Zero cells contribute nothing.
double classical_mutual_info(const Eigen::MatrixXd& joint) {
    const Eigen::VectorXd px = joint.rowwise().sum();
    const Eigen::VectorXd py = joint.colwise().sum();
    double mi = 0.0;
    for (Eigen::Index i = 0; i < joint.rows(); ++i)
        for (Eigen::Index j = 0; j < joint.cols(); ++j) {
            const double v = joint(i, j);
            if (v > 0.0) mi += v * std::log2(v / (px[i] * py[j]));
        }
    return std::max(mi, 0.0);
}

struct HolevoPieces {
    double s_first;        // S of the averaged output (exact for mictodiactic)
    double s_out_avg;      // mean of S(N(psi))
    double s_out_stderr;
    bool mictodiactic;
};

HolevoPieces holevo_pieces(const BroadcastChannel& channel, int samples, Rng& rng) {
    if (samples < 100) throw ValidationError("holevo_uniform: samples must be >= 100");
    const int d_in = channel.d_A();
    const int d_out = channel.d_out();

    const bool micto = channels::is_mictodiactic(channel);
    Matrix sum_out = Matrix::Zero(d_out, d_out);
    double sum_s = 0.0, sum_s2 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Vector psi = qlin::random_unit_vector(d_in, rng);
        const Matrix out = channel.base().apply_operator(qlin::rank_one_projector(psi));
        const double s = qlin::von_neumann_entropy(DensityMatrix(out));
        sum_s += s;
        sum_s2 += s * s;
        if (!micto) sum_out += out;
    }
    const double mean = sum_s / samples;
    const double var = std::max(0.0, sum_s2 / samples - mean * mean);
    const double stderr_mean = std::sqrt(var / samples);

    double s_first;
    if (micto) {
        // int dpsi N(psi) = N(pi) = pi exactly, so the first term carries no
        // Monte-Carlo error.
        s_first = std::log2(static_cast<double>(d_out));
    } else {
        s_first = qlin::von_neumann_entropy(DensityMatrix(sum_out / samples));
    }
    return {s_first, mean, stderr_mean, micto};
}

} // namespace

CoherentBoundInput::CoherentBoundInput(double n_s_, double eta_) : n_s(n_s_), eta(eta_) {
    if (!(n_s > 0.0)) throw ValidationError("CoherentBoundInput: N_S must be > 0");
    if (!(eta > 0.0 && eta < 1.0))
        throw ValidationError("CoherentBoundInput: eta must be in (0,1)");
}

std::pair<double, double> holevo_uniform(const BroadcastChannel& channel, int samples,
                                         Rng& rng) {
    const HolevoPieces p = holevo_pieces(channel, samples, rng);
    return {p.s_first - p.s_out_avg, p.s_out_stderr};
}

double depolarizing_chi_closed_form(int d, double p) {
    if (d < 2) throw ValidationError("depolarizing_chi_closed_form: d must be >= 2");
    if (p < 0.0 || p > 1.0)
        throw ValidationError("depolarizing_chi_closed_form: p must be in [0,1]");
    const double big = p + (1.0 - p) / d;
    const double small = (1.0 - p) / d;
    double chi = log2_stable(static_cast<double>(d));
    if (big > 0.0) chi += big * std::log2(big);
    if (small > 0.0) chi += (d - 1) * small * std::log2(small);
    return chi;
}

namespace {

double gamma_from_prefactor(const BroadcastChannel& channel, double dims_sq_product) {
    const int d_A = channel.d_A();
    if (d_A > kGammaMaxInputDim)
        throw ResourceError("gamma: d_A = " + std::to_string(d_A) +
                            " exceeds the two-copy workspace guard (12)");
    const qlin::HermitianOperator p_sym = qlin::symmetric_projector(d_A);
    const Matrix image = channel.base().two_fold_apply(p_sym.data());
    const double norm = qlin::operator_inf_norm(qlin::HermitianOperator(image));
    return 2.0 * dims_sq_product / (static_cast<double>(d_A) * (d_A + 1.0)) * norm;
}

} // namespace

double gamma_mictodiactic(const BroadcastChannel& channel) {
    const double db = channel.d_B();
    const double dc = channel.d_C();
    return gamma_from_prefactor(channel, db * db * dc * dc);
}

double gamma_multipartite(const BroadcastChannel& channel) {
    if (!channel.d_list()) return gamma_mictodiactic(channel);
    double prod = 1.0;
    for (int d : *channel.d_list()) prod *= static_cast<double>(d) * d;
    return gamma_from_prefactor(channel, prod);
}

double gamma_entropy_variant(const BroadcastChannel& channel, double delta) {
    if (delta < 0.0) throw ValidationError("gamma_entropy_variant: delta must be >= 0");
    const int d_A = channel.d_A();
    if (d_A > kGammaMaxInputDim)
        throw ResourceError("gamma_entropy_variant: d_A exceeds the workspace guard");
    const DensityMatrix out_pi =
        channel.base().apply(DensityMatrix::maximally_mixed(d_A));
    const double s = qlin::von_neumann_entropy(out_pi);

    const qlin::HermitianOperator p_sym = qlin::symmetric_projector(d_A);
    const double tr = static_cast<double>(d_A) * (d_A + 1.0) / 2.0;
    const DensityMatrix out2(channel.base().two_fold_apply(p_sym.data() / tr));
    const double s2 = qlin::von_neumann_entropy(out2);

    return std::exp2(2.0 * s - s2 + 3.0 * delta);
}

BoundReport kappa_lower(const BroadcastChannel& channel, int chi_samples, Rng& rng) {
    BoundReport r;
    r.seed = rng.seed();
    r.chi_samples = chi_samples;

    const HolevoPieces p = holevo_pieces(channel, chi_samples, rng);
    r.s_max_mixed = qlin::von_neumann_entropy(
        channel.base().apply(DensityMatrix::maximally_mixed(channel.d_A())));
    r.s_out_avg = p.s_out_avg;
    r.s_out_avg_stderr = p.s_out_stderr;
    r.chi = p.s_first - p.s_out_avg;
    r.chi_stderr = p.s_out_stderr;
    r.mictodiactic = p.mictodiactic;
    r.chi_method = p.mictodiactic ? "exact-first-term+mc" : "mc-both-terms";

    r.unital = channel.d_A() == channel.d_out() && channel.base().is_unital();
    r.gamma = gamma_multipartite(channel);
    r.gamma_method = "two-copy-eigenvalue";
    r.gamma_outside_paper_scope = !p.mictodiactic;

    r.log2_d_plus = std::log2(static_cast<double>(channel.d_plus()));
    r.kappa_lower = r.chi - r.log2_d_plus - std::log2(r.gamma);
    r.kappa_lower_clamped = std::max(0.0, r.kappa_lower);
    return r;
}

double g_function(double x) {
    if (x < 0.0) throw ValidationError("g_function: x must be >= 0");
    if (x == 0.0) return 0.0;
    // (x+1) log2(x+1) - x log2 x = x log2(1 + 1/x) + log2(1 + x), stable for
    // large x.
    return x * std::log1p(1.0 / x) / kLn2 + std::log1p(x) / kLn2;
}

double coherent_state_upper_bound(const CoherentBoundInput& input) {
    return g_function(input.n_s) - std::log1p(input.n_s) / kLn2;
}

double heterodyne_mutual_info(const CoherentBoundInput& input) {
    const double ns = input.n_s;
    const double eta = input.eta;
    // Real-quadrature covariance [[a + 1/2, sqrt(a d)], [sqrt(a d), d + 1/2]]
    // with a = eta N_S/2, d = (1-eta) N_S/2. Its determinant expands to
    // (a + 1/2)(d + 1/2) - a d = (a + d)/2 + 1/4; cancelling the O(N_S^2)
    // terms algebraically keeps the route accurate at large N_S.
    const double a = eta * ns / 2.0;
    const double d = (1.0 - eta) * ns / 2.0;
    const double det_signal = 0.5 * (a + d) + 0.25;
    const double det_noise = 0.25; // covariance of the vacuum quadratures
    return std::log2(det_signal / det_noise);
}

namespace {

struct ProductBasis {
    Matrix b; // columns are Bob's basis
    Matrix c; // columns are Charlie's basis
};

/// Accessible information of the ensemble under the product basis measurement,
/// together with the argmax-relabeled variant; returns the larger (the raw
/// outcome variable dominates by data processing, the relabeled one breaks
/// ties the same way a decoder would).
double accessible_info(const std::vector<std::pair<double, Matrix>>& outputs,
                       const ProductBasis& basis) {
    const int nb = static_cast<int>(basis.b.cols());
    const int nc = static_cast<int>(basis.c.cols());
    const int nx = static_cast<int>(outputs.size());
    Eigen::MatrixXd joint(nx, nb * nc);
    for (int x = 0; x < nx; ++x) {
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nc; ++j) {
                const Vector v = qlin::tensor(Vector(basis.b.col(i)), Vector(basis.c.col(j)));
                const double prob = std::max(0.0, (v.adjoint() * outputs[x].second * v)(0).real());
                joint(x, i * nc + j) = outputs[x].first * prob;
            }
    }
    const double raw = classical_mutual_info(joint);

    // argmax relabeling y -> xhat
    Eigen::MatrixXd relabeled = Eigen::MatrixXd::Zero(nx, nx);
    for (int y = 0; y < nb * nc; ++y) {
        int best = 0;
        for (int x = 1; x < nx; ++x)
            if (joint(x, y) > joint(best, y)) best = x;
        for (int x = 0; x < nx; ++x) relabeled(x, best) += joint(x, y);
    }
    return std::max(raw, classical_mutual_info(relabeled));
}

Matrix givens_rotate(const Matrix& basis, int i, int j, double theta, double phi) {
    Matrix out = basis;
    const Complex e(std::cos(phi), std::sin(phi));
    out.col(i) = std::cos(theta) * basis.col(i) + e * std::sin(theta) * basis.col(j);
    out.col(j) = -std::conj(e) * std::sin(theta) * basis.col(i) + std::cos(theta) * basis.col(j);
    return out;
}

} // namespace

KappaUpperEstimate kappa_upper_estimate(
    const BroadcastChannel& channel,
    const std::vector<std::pair<double, DensityMatrix>>& ensemble,
    int measurement_trials, Rng& rng) {
    if (ensemble.empty()) throw ValidationError("kappa_upper_estimate: empty ensemble");
    std::vector<double> probs;
    probs.reserve(ensemble.size());
    for (const auto& [p, rho] : ensemble) probs.push_back(p);
    (void)qlin::Pmf(probs); // validates the ensemble distribution

    // Exact I(X;BC): Holevo quantity of the output ensemble.
    std::vector<std::pair<double, Matrix>> outputs;
    outputs.reserve(ensemble.size());
    const int d_out = channel.d_out();
    Matrix avg = Matrix::Zero(d_out, d_out);
    double mean_entropy = 0.0;
    for (const auto& [p, rho] : ensemble) {
        Matrix out = channel.base().apply_operator(rho.data());
        avg += p * out;
        if (p > 0.0) mean_entropy += p * qlin::von_neumann_entropy(DensityMatrix(out));
        outputs.emplace_back(p, std::move(out));
    }
    const double mi_output =
        qlin::von_neumann_entropy(DensityMatrix(avg)) - mean_entropy;

    KappaUpperEstimate est;
    est.mi_output = mi_output;
    est.trials = measurement_trials;

    if (ensemble.size() == 1) {
        est.value = 0.0;
        est.best_accessible = 0.0;
        return est;
    }

    const int d_B = channel.d_B();
    const int d_C = channel.d_C();
    double best = 0.0;
    ProductBasis best_basis{Matrix::Identity(d_B, d_B), Matrix::Identity(d_C, d_C)};
    for (int t = 0; t < measurement_trials; ++t) {
        ProductBasis basis{qlin::haar_unitary(d_B, rng).data(),
                           qlin::haar_unitary(d_C, rng).data()};
        const double acc = accessible_info(outputs, basis);
        if (acc > best) {
            best = acc;
            best_basis = basis;
        }
    }

    // Coordinate descent over Givens rotations of the best basis found.
    static constexpr double kThetas[] = {-0.5, -0.25, -0.1, 0.1, 0.25, 0.5};
    static constexpr double kPhis[] = {0.0, std::numbers::pi / 2.0};
    for (int step = 0; step < kMeasurementRefineSteps; ++step) {
        bool improved = false;
        for (int side = 0; side < 2; ++side) {
            Matrix& m = side == 0 ? best_basis.b : best_basis.c;
            const int dim = static_cast<int>(m.cols());
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j)
                    for (double theta : kThetas)
                        for (double phi : kPhis) {
                            ProductBasis trial = best_basis;
                            (side == 0 ? trial.b : trial.c) =
                                givens_rotate(m, i, j, theta, phi);
                            const double acc = accessible_info(outputs, trial);
                            if (acc > best + 1e-12) {
                                best = acc;
                                best_basis = trial;
                                improved = true;
                            }
                        }
        }
        if (!improved) break;
    }

    est.best_accessible = best;
    est.value = std::max(0.0, mi_output - best);
    return est;
}

} // namespace hidecap::bounds
