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

#include "hidecap/security.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hidecap/parallel.hpp"

namespace hidecap::security {

namespace {

constexpr double kLn2 = std::numbers::ln2;

long long ipow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

double shannon_bits(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs) {
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const auto n = static_cast<double>(xs.size());
    return n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
}

/// Outcome vectors interleaved into the channel-output factor order, computed
/// once per measurement.
struct PreparedMeasurement {
    std::vector<Vector> vectors;
    std::vector<double> weights;
};

PreparedMeasurement prepare(const ProductMeasurement& m, int n) {
    if (m.outcomes.empty())
        throw ValidationError("measurement: no outcomes");
    PreparedMeasurement pm;
    pm.vectors.reserve(m.outcomes.size());
    pm.weights.reserve(m.outcomes.size());
    // d_B here is already the total per-side dimension; recover the per-use
    // dimension for the interleaving.
    int per_use_b = m.d_B, per_use_c = m.d_C;
    if (n > 1) {
        per_use_b = static_cast<int>(std::llround(std::pow(m.d_B, 1.0 / n)));
        per_use_c = static_cast<int>(std::llround(std::pow(m.d_C, 1.0 / n)));
        if (ipow(per_use_b, n) != m.d_B || ipow(per_use_c, n) != m.d_C)
            throw ValidationError("measurement: side dimension is not a perfect n-th power");
    }
    for (const auto& o : m.outcomes) {
        pm.vectors.push_back(interleave_product(o.b, o.c, per_use_b, per_use_c, n));
        pm.weights.push_back(o.weight);
    }
    return pm;
}

std::vector<double> stats_prepared(const Matrix& state, const PreparedMeasurement& pm) {
    std::vector<double> out(pm.vectors.size());
    for (std::size_t y = 0; y < pm.vectors.size(); ++y) {
        const Vector& w = pm.vectors[y];
        out[y] = pm.weights[y] * std::max(0.0, (w.adjoint() * state * w)(0).real());
    }
    return out;
}

/// Output of one fresh scrambling tuple: (1/K) sum_k (x)_j N(|g_kj><g_kj|)
/// with g_kj i.i.d. Haar unit vectors (equal in law to U_kj psi_j U_kj^dag).
Matrix sample_scrambled_output(const BroadcastChannel& channel, int n, int K,
                               Rng& rng) {
    const long long dim = ipow(channel.d_out(), n);
    Matrix sigma = Matrix::Zero(dim, dim);
    for (int k = 0; k < K; ++k) {
        Matrix term =
            channel.base().apply_to_pure(qlin::random_unit_vector(channel.d_A(), rng));
        for (int j = 1; j < n; ++j)
            term = qlin::tensor(term, channel.base().apply_to_pure(qlin::random_unit_vector(
                                          channel.d_A(), rng)));
        sigma += term;
    }
    return sigma / static_cast<double>(K);
}

struct TupleEvaluation {
    // pmfs[m][t] = outcome weights of measurement m on tuple t
    std::vector<std::vector<std::vector<double>>> pmfs;
};

TupleEvaluation evaluate_tuples(const BroadcastChannel& channel, int n, int K,
                                const std::vector<PreparedMeasurement>& measurements,
                                int u_samples, Rng& rng, int threads) {
    std::vector<Rng> tuple_rngs;
    tuple_rngs.reserve(u_samples);
    for (int t = 0; t < u_samples; ++t) tuple_rngs.push_back(rng.spawn());

    TupleEvaluation ev;
    ev.pmfs.assign(measurements.size(), {});
    for (auto& per_meas : ev.pmfs) per_meas.assign(u_samples, {});

    parallel_for(u_samples, threads, [&](int t) {
        Rng local = tuple_rngs[t];
        const Matrix sigma = sample_scrambled_output(channel, n, K, local);
        for (std::size_t m = 0; m < measurements.size(); ++m)
            ev.pmfs[m][t] = stats_prepared(sigma, measurements[m]);
    });
    return ev;
}

MiEstimate mi_from_pmfs(const std::vector<std::vector<double>>& pmfs) {
    const int n_tuples = static_cast<int>(pmfs.size());
    const std::size_t n_outcomes = pmfs.front().size();

    std::vector<double> mean_pmf(n_outcomes, 0.0);
    std::vector<double> entropies(n_tuples);
    double sum_h = 0.0;
    for (int t = 0; t < n_tuples; ++t) {
        for (std::size_t y = 0; y < n_outcomes; ++y) mean_pmf[y] += pmfs[t][y];
        entropies[t] = shannon_bits(pmfs[t]);
        sum_h += entropies[t];
    }
    for (double& v : mean_pmf) v /= n_tuples;

    MiEstimate est;
    est.u_samples = n_tuples;
    est.mi = shannon_bits(mean_pmf) - sum_h / n_tuples;
    est.bias_note =
        (static_cast<double>(n_outcomes) - 1.0) / (2.0 * n_tuples * kLn2);

    // Jackknife over tuples.
    if (n_tuples > 1) {
        std::vector<double> loo(n_tuples);
        std::vector<double> scratch(n_outcomes);
        for (int t = 0; t < n_tuples; ++t) {
            for (std::size_t y = 0; y < n_outcomes; ++y)
                scratch[y] = (mean_pmf[y] * n_tuples - pmfs[t][y]) / (n_tuples - 1);
            const double h_cond = (sum_h - entropies[t]) / (n_tuples - 1);
            loo[t] = shannon_bits(scratch) - h_cond;
        }
        const double loo_mean = mean_of(loo);
        double ss = 0.0;
        for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
        est.stderr_jackknife =
            std::sqrt(ss * (n_tuples - 1) / static_cast<double>(n_tuples));
    }
    return est;
}

} // namespace

// ---- ProductMeasurement ----

ProductMeasurement ProductMeasurement::projective_from_bases(const Matrix& b_basis,
                                                             const Matrix& c_basis) {
    const auto check_basis = [](const Matrix& basis, const char* side) {
        if (basis.rows() != basis.cols() || basis.rows() < 1)
            throw ValidationError(std::string("projective_from_bases: ") + side +
                                  " basis must be square");
        const Matrix defect = basis.adjoint() * basis -
                              Matrix::Identity(basis.rows(), basis.cols());
        if (qlin::max_abs(defect) > 1e-9)
            throw ValidationError(std::string("projective_from_bases: ") + side +
                                  " basis is not orthonormal within 1e-9");
    };
    check_basis(b_basis, "B");
    check_basis(c_basis, "C");

    ProductMeasurement m;
    m.kind = Kind::ProjectiveSeparable;
    m.d_B = static_cast<int>(b_basis.cols());
    m.d_C = static_cast<int>(c_basis.cols());
    m.outcomes.reserve(static_cast<std::size_t>(m.d_B) * m.d_C);
    for (int i = 0; i < m.d_B; ++i)
        for (int j = 0; j < m.d_C; ++j)
            m.outcomes.push_back({b_basis.col(i), c_basis.col(j), 1.0});
    return m;
}

ProductMeasurement ProductMeasurement::computational(int d_B, int d_C) {
    return projective_from_bases(Matrix::Identity(d_B, d_B),
                                 Matrix::Identity(d_C, d_C));
}

ProductMeasurement ProductMeasurement::random_projective(int d_B, int d_C, Rng& rng) {
    return projective_from_bases(qlin::haar_unitary(d_B, rng).data(),
                                 qlin::haar_unitary(d_C, rng).data());
}

ProductMeasurement quasi_measurement_sample(int d_B, int d_C, int s, Rng& rng) {
    if (s < 1) throw ValidationError("quasi_measurement_sample: s must be >= 1");
    const long long d = static_cast<long long>(d_B) * d_C;
    if (d > 256)
        throw ResourceError("quasi_measurement_sample: f estimation needs dim <= 256");
    ProductMeasurement m;
    m.kind = ProductMeasurement::Kind::Quasi;
    m.d_B = d_B;
    m.d_C = d_C;
    const double weight = static_cast<double>(d) * d / s;
    Matrix sum = Matrix::Zero(d, d);
    m.outcomes.reserve(s);
    for (int y = 0; y < s; ++y) {
        ProductMeasurement::Outcome o;
        o.b = qlin::random_unit_vector(d_B, rng);
        o.c = qlin::random_unit_vector(d_C, rng);
        o.weight = weight;
        const Vector w = qlin::tensor(o.b, o.c);
        sum += weight * qlin::rank_one_projector(w);
        m.outcomes.push_back(std::move(o));
    }
    m.f = qlin::hermitian_eigenvalues(sum).maxCoeff();
    return m;
}

// ---- basic helpers ----

Vector interleave_product(const Vector& b, const Vector& c, int d_B, int d_C, int n) {
    if (b.size() != ipow(d_B, n) || c.size() != ipow(d_C, n))
        throw ValidationError("interleave_product: vector sizes do not match dims");
    if (n == 1) return qlin::tensor(b, c);
    const long long total = ipow(d_B * d_C, n);
    Vector out(total);
    for (long long i = 0; i < total; ++i) {
        long long rem = i;
        long long b_idx = 0, c_idx = 0;
        // factors run B1 C1 B2 C2 ... ; decode from the last factor backwards
        long long b_place = 1, c_place = 1;
        for (int j = n - 1; j >= 0; --j) {
            const long long cj = rem % d_C;
            rem /= d_C;
            const long long bj = rem % d_B;
            rem /= d_B;
            c_idx += cj * c_place;
            b_idx += bj * b_place;
            c_place *= d_C;
            b_place *= d_B;
        }
        out[i] = b[b_idx] * c[c_idx];
    }
    return out;
}

std::vector<double> measurement_statistics(const Matrix& state,
                                           const ProductMeasurement& m, int n) {
    const PreparedMeasurement pm = prepare(m, n);
    if (state.rows() != pm.vectors.front().size())
        throw ValidationError("measurement_statistics: state dimension mismatch");
    return stats_prepared(state, pm);
}

namespace {

/// N^(x)n(rho(x)) through the per-use factors of the codebook's own tuple.
Matrix codeword_output(const CodeBook& cb, const BroadcastChannel& channel, int x) {
    if (channel.d_A() != cb.d_A)
        throw ValidationError("security: channel/codebook dimension mismatch");
    if (x < 0 || x >= cb.M) throw ValidationError("security: x out of range");
    const long long dim = ipow(channel.d_out(), cb.n);
    Matrix sigma = Matrix::Zero(dim, dim);
    for (int k = 0; k < cb.K; ++k) {
        Matrix term = channel.base().apply_to_pure(
            Vector(cb.u[k][0].data() * cb.v[x][0].data().col(0)));
        for (int j = 1; j < cb.n; ++j)
            term = qlin::tensor(
                term, channel.base().apply_to_pure(
                          Vector(cb.u[k][j].data() * cb.v[x][j].data().col(0))));
        sigma += term;
    }
    return sigma / static_cast<double>(cb.K);
}

} // namespace

Pmf conditional_pmf(const CodeBook& cb, const BroadcastChannel& channel, int x,
                    const ProductMeasurement& m) {
    if (m.kind != ProductMeasurement::Kind::ProjectiveSeparable)
        throw ValidationError("conditional_pmf: projective measurements only");
    return Pmf(measurement_statistics(codeword_output(cb, channel, x), m, cb.n));
}

SecuritySample make_security_sample(const CodeBook& cb, const BroadcastChannel& channel,
                                    int x, const ProductMeasurement& m) {
    SecuritySample sample;
    sample.x = x;
    sample.scramble_seed = cb.seed;
    sample.outcome_weights =
        measurement_statistics(codeword_output(cb, channel, x), m, cb.n);
    double sum = 0.0;
    for (double v : sample.outcome_weights) sum += v;
    sample.deficit = 1.0 - sum;
    return sample;
}

MiEstimate mutual_info_y_u(const BroadcastChannel& channel, int n, int M, int K,
                           int x, const ProductMeasurement& m, int u_samples,
                           Rng& rng) {
    if (u_samples < 30) throw ValidationError("mutual_info_y_u: u_samples must be >= 30");
    if (x < 0 || x >= M) throw ValidationError("mutual_info_y_u: x out of range");
    if (K < 1) throw ValidationError("mutual_info_y_u: K must be >= 1");
    std::vector<PreparedMeasurement> pms{prepare(m, n)};
    const TupleEvaluation ev = evaluate_tuples(channel, n, K, pms, u_samples, rng, 1);

    std::vector<std::vector<double>> pmfs = ev.pmfs[0];
    if (m.kind == ProductMeasurement::Kind::Quasi) {
        // Quasi outcome weights are not normalized; condition on an outcome
        // being produced to get a distribution.
        for (auto& p : pmfs) {
            double s = 0.0;
            for (double v : p) s += v;
            if (s > 0.0)
                for (double& v : p) v /= s;
        }
    }
    return mi_from_pmfs(pmfs);
}

SecurityDistance security_trace_distance(const CodeBook& cb,
                                         const BroadcastChannel& channel,
                                         const ProductMeasurement& m, int u_samples,
                                         Rng& rng) {
    if (u_samples < 1)
        throw ValidationError("security_trace_distance: u_samples must be >= 1");
    std::vector<PreparedMeasurement> pms{prepare(m, cb.n)};

    SecurityDistance result;
    result.uniform_reference = channels::is_mictodiactic(channel);
    std::vector<double> ref;
    if (result.uniform_reference) {
        ref.assign(m.outcomes.size(), 1.0 / static_cast<double>(m.outcomes.size()));
    } else {
        const Matrix out_pi = channel.base().apply_operator(
            Matrix::Identity(channel.d_A(), channel.d_A()) /
            static_cast<double>(channel.d_A()));
        ref = stats_prepared(qlin::tensor_power(out_pi, cb.n), pms[0]);
    }

    const TupleEvaluation ev =
        evaluate_tuples(channel, cb.n, cb.K, pms, u_samples, rng, 1);
    std::vector<double> l1(u_samples);
    for (int t = 0; t < u_samples; ++t) {
        double d = 0.0;
        for (std::size_t y = 0; y < ref.size(); ++y)
            d += std::abs(ev.pmfs[0][t][y] - ref[y]);
        l1[t] = d;
    }
    result.value = mean_of(l1);
    result.stderr_mc = stderr_of(l1);
    return result;
}

double maurer_bound(double expectation, double second_moment, double k, double tau) {
    if (!(expectation > 0.0) || second_moment < expectation * expectation)
        throw ValidationError("maurer_bound: need E[X^2] >= E[X]^2 > 0");
    if (!(tau > 0.0)) throw ValidationError("maurer_bound: tau must be > 0");
    if (k < 1.0) throw ValidationError("maurer_bound: K must be >= 1");
    return std::exp(-k * tau * tau / (2.0 * second_moment));
}

double chernoff_bound(double mu, double k, double tau) {
    if (mu < 0.0 || tau < 0.0) throw ValidationError("chernoff_bound: negative input");
    if ((1.0 + tau) * mu > 1.0 + 1e-15)
        throw ValidationError("chernoff_bound: (1 + tau) mu must be <= 1");
    if (k < 1.0) throw ValidationError("chernoff_bound: K must be >= 1");
    return std::exp(-k * tau * tau * mu / (4.0 * kLn2));
}

XkMoments xk_moments(const BroadcastChannel& channel, int n, const Vector& b_vec,
                     const Vector& c_vec, int mc_samples, Rng& rng,
                     double gamma_reference) {
    if (mc_samples < 2) throw ValidationError("xk_moments: mc_samples must be >= 2");
    int per_use_b = channel.d_B(), per_use_c = channel.d_C();
    const Vector w = interleave_product(b_vec, c_vec, per_use_b, per_use_c, n);

    std::vector<double> xs(mc_samples);
    for (int s = 0; s < mc_samples; ++s) {
        Matrix sigma =
            channel.base().apply_to_pure(qlin::random_unit_vector(channel.d_A(), rng));
        for (int j = 1; j < n; ++j)
            sigma = qlin::tensor(sigma, channel.base().apply_to_pure(qlin::random_unit_vector(
                                            channel.d_A(), rng)));
        xs[s] = std::max(0.0, (w.adjoint() * sigma * w)(0).real());
    }

    XkMoments out;
    out.samples = mc_samples;
    double s1 = 0.0, s2 = 0.0;
    for (double x : xs) {
        s1 += x;
        s2 += x * x;
    }
    out.mean = s1 / mc_samples;
    out.second_moment = s2 / mc_samples;
    out.mean_stderr = stderr_of(xs);
    {
        std::vector<double> sq(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = xs[i] * xs[i];
        out.second_moment_stderr = stderr_of(sq);
    }
    out.gamma_empirical =
        std::pow(out.second_moment / (out.mean * out.mean), 1.0 / n);

    // Jackknife for the derived ratio statistic.
    std::vector<double> loo(mc_samples);
    for (int i = 0; i < mc_samples; ++i) {
        const double m1 = (s1 - xs[i]) / (mc_samples - 1);
        const double m2 = (s2 - xs[i] * xs[i]) / (mc_samples - 1);
        loo[i] = std::pow(m2 / (m1 * m1), 1.0 / n);
    }
    const double loo_mean = mean_of(loo);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    out.gamma_stderr = std::sqrt(ss * (mc_samples - 1) / static_cast<double>(mc_samples));

    // 1e-12 floors keep zero-variance cases (e.g. fully depolarizing, where X
    // is constant) from tripping on rounding noise.
    const double expected_mean =
        1.0 / std::pow(static_cast<double>(channel.d_B()) * channel.d_C(), n);
    out.mean_consistent =
        std::abs(out.mean - expected_mean) <= 4.0 * out.mean_stderr + 1e-12;
    out.gamma_consistent =
        gamma_reference > 0.0 &&
        out.gamma_empirical <= gamma_reference + 4.0 * out.gamma_stderr + 1e-12;
    return out;
}

double pure_state_trace_distance(const Vector& a, const Vector& b) {
    const double overlap = std::norm((a.adjoint() * b)(0));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap));
}

EpsilonNet epsilon_net(int dim, double epsilon, Rng& rng, long long max_size) {
    if (dim < 1) throw ValidationError("epsilon_net: dim must be >= 1");
    if (!(epsilon > 0.0)) throw ValidationError("epsilon_net: epsilon must be > 0");
    if (max_size < 1) throw ValidationError("epsilon_net: max_size must be >= 1");

    EpsilonNet net;
    net.verified = dim <= kNetVerifiedMaxDim;
    const long long needed_streak = net.verified ? kNetCertificateProbes : 2000;
    long long streak = 0;
    while (streak < needed_streak) {
        const Vector probe = qlin::random_unit_vector(dim, rng);
        bool covered = false;
        for (const Vector& member : net.members)
            if (pure_state_trace_distance(probe, member) <= epsilon) {
                covered = true;
                break;
            }
        if (covered) {
            ++streak;
        } else {
            if (static_cast<long long>(net.members.size()) >= max_size)
                throw ResourceError("epsilon_net: max_size exceeded");
            net.members.push_back(probe);
            streak = 0;
        }
    }
    net.certificate_probes = streak;
    return net;
}

double quasi_penalty(int d_B_total, int d_C_total, long long s, double f) {
    if (s < 1) throw ValidationError("quasi_penalty: s must be >= 1");
    if (!(f > 1.0)) throw ValidationError("quasi_penalty: f must be > 1");
    const double d = static_cast<double>(d_B_total) * d_C_total;
    return 4.0 * d * d * std::exp(-static_cast<double>(s) * (f - 1.0) * (f - 1.0) /
                                  (d * 2.0 * kLn2));
}

std::pair<double, double> trace_dist_equals_error_prob(const Pmf& p_m,
                                                       const Eigen::MatrixXd& q_channel) {
    const auto n = static_cast<Eigen::Index>(p_m.size());
    if (q_channel.rows() != n || q_channel.cols() != n)
        throw ValidationError("trace_dist_equals_error_prob: shape mismatch");
    for (Eigen::Index m = 0; m < n; ++m) {
        double col = 0.0;
        for (Eigen::Index mp = 0; mp < n; ++mp) {
            if (q_channel(mp, m) < -1e-12)
                throw ValidationError("trace_dist_equals_error_prob: negative entry");
            col += q_channel(mp, m);
        }
        if (std::abs(col - 1.0) > 1e-10)
            throw ValidationError("trace_dist_equals_error_prob: column " +
                                  std::to_string(m) + " does not sum to 1");
    }

    double lhs = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) lhs += p_m[m] * (1.0 - q_channel(m, m));

    double l1 = 0.0;
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index mp = 0; mp < n; ++mp) {
            const double p_joint = (m == mp) ? p_m[m] : 0.0;
            l1 += std::abs(p_joint - p_m[m] * q_channel(mp, m));
        }
    return {lhs, l1 / 2.0};
}

SweepResult security_sweep(const BroadcastChannel& channel, const SweepParams& params,
                           Rng& rng) {
    if (params.n_measurements < 1)
        throw ValidationError("security_sweep: need at least one measurement");
    const long long d_b_total = ipow(channel.d_B(), params.n);
    const long long d_c_total = ipow(channel.d_C(), params.n);

    std::vector<ProductMeasurement> measurements;
    measurements.reserve(params.n_measurements);
    for (int i = 0; i < params.n_measurements; ++i)
        measurements.push_back(ProductMeasurement::random_projective(
            static_cast<int>(d_b_total), static_cast<int>(d_c_total), rng));
    std::vector<PreparedMeasurement> prepared;
    prepared.reserve(measurements.size());
    for (const auto& m : measurements) prepared.push_back(prepare(m, params.n));

    SweepResult result;
    result.uniform_reference = channels::is_mictodiactic(channel);
    std::vector<std::vector<double>> refs(measurements.size());
    if (result.uniform_reference) {
        const double u = 1.0 / static_cast<double>(d_b_total * d_c_total);
        for (auto& r : refs) r.assign(d_b_total * d_c_total, u);
    } else {
        const Matrix out_pi = channel.base().apply_operator(
            Matrix::Identity(channel.d_A(), channel.d_A()) /
            static_cast<double>(channel.d_A()));
        const Matrix ref_state = qlin::tensor_power(out_pi, params.n);
        for (std::size_t m = 0; m < prepared.size(); ++m)
            refs[m] = stats_prepared(ref_state, prepared[m]);
    }

    const TupleEvaluation ev = evaluate_tuples(channel, params.n, params.K, prepared,
                                               params.u_samples, rng, params.threads);

    result.measurements.resize(measurements.size());
    for (std::size_t m = 0; m < measurements.size(); ++m) {
        const MiEstimate mi = mi_from_pmfs(ev.pmfs[m]);
        MeasurementReport& rep = result.measurements[m];
        rep.mi = mi.mi;
        rep.mi_stderr = mi.stderr_jackknife;
        rep.bias_note = mi.bias_note;

        std::vector<double> l1(params.u_samples);
        for (int t = 0; t < params.u_samples; ++t) {
            double d = 0.0;
            for (std::size_t y = 0; y < refs[m].size(); ++y)
                d += std::abs(ev.pmfs[m][t][y] - refs[m][y]);
            l1[t] = d;
        }
        rep.sec_dist = mean_of(l1);
        rep.sec_dist_stderr = stderr_of(l1);
        rep.pinsker_rhs =
            std::sqrt(2.0 * kLn2 * std::max(rep.mi, 0.0)) + 4.0 * rep.sec_dist_stderr;
        rep.pinsker_ok = rep.sec_dist <= rep.pinsker_rhs;
        if (!rep.pinsker_ok) result.all_pinsker_ok = false;
        if (rep.mi > result.worst_mi) {
            result.worst_mi = rep.mi;
            result.worst_index = static_cast<int>(m);
        }
    }
    return result;
}

bool non_increasing_within(const std::vector<double>& means,
                           const std::vector<double>& stderrs, double sigmas) {
    if (means.size() != stderrs.size())
        throw ValidationError("non_increasing_within: size mismatch");
    for (std::size_t i = 0; i + 1 < means.size(); ++i) {
        const double slack =
            sigmas * std::sqrt(stderrs[i] * stderrs[i] + stderrs[i + 1] * stderrs[i + 1]);
        if (means[i + 1] > means[i] + slack) return false;
    }
    return true;
}

} // namespace hidecap::security
