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

#include "hidecap/codes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hidecap::codes {

namespace {

long long ipow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_workspace(int base, int n, const char* where) {
    long long dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= base;
        if (dim > kWorkspaceMaxDim)
            throw ResourceError(std::string(where) + ": dimension " +
                                std::to_string(base) + "^" + std::to_string(n) +
                                " exceeds the workspace guard " +
                                std::to_string(kWorkspaceMaxDim));
    }
}

} // namespace

CodeBook CodeBook::from_unitaries(int n, int d_A,
                                  std::vector<std::vector<UnitaryMatrix>> v,
                                  std::vector<std::vector<UnitaryMatrix>> u,
                                  std::uint64_t seed) {
    if (v.empty() || u.empty())
        throw ValidationError("CodeBook: M and K must be >= 1");
    CodeBook cb;
    cb.n = n;
    cb.d_A = d_A;
    cb.M = static_cast<int>(v.size());
    cb.K = static_cast<int>(u.size());
    cb.seed = seed;
    for (const auto& row : v)
        if (static_cast<int>(row.size()) != n)
            throw ValidationError("CodeBook: message row length != n");
    for (const auto& row : u)
        if (static_cast<int>(row.size()) != n)
            throw ValidationError("CodeBook: scramble row length != n");
    for (const auto& row : v)
        for (const auto& unitary : row)
            if (unitary.dim() != d_A)
                throw ValidationError("CodeBook: unitary dimension != d_A");
    for (const auto& row : u)
        for (const auto& unitary : row)
            if (unitary.dim() != d_A)
                throw ValidationError("CodeBook: unitary dimension != d_A");
    cb.v = std::move(v);
    cb.u = std::move(u);
    return cb;
}

Vector CodeBook::message_vector(int x) const {
    if (x < 0 || x >= M) throw ValidationError("CodeBook: message index out of range");
    Vector out = v[x][0].data().col(0);
    for (int j = 1; j < n; ++j) out = qlin::tensor(out, Vector(v[x][j].data().col(0)));
    return out;
}

Vector CodeBook::scrambled_vector(int k, int x) const {
    if (x < 0 || x >= M) throw ValidationError("CodeBook: message index out of range");
    if (k < 0 || k >= K) throw ValidationError("CodeBook: scramble index out of range");
    Vector out = u[k][0].data() * v[x][0].data().col(0);
    for (int j = 1; j < n; ++j)
        out = qlin::tensor(out, Vector(u[k][j].data() * v[x][j].data().col(0)));
    return out;
}

CodeBook generate_codebook(int n, int M, int K, int d_A, Rng& rng) {
    if (n < 1 || M < 1 || K < 1 || d_A < 1)
        throw ValidationError("generate_codebook: all parameters must be >= 1");
    check_workspace(d_A, n, "generate_codebook");
    CodeBook cb;
    cb.n = n;
    cb.M = M;
    cb.K = K;
    cb.d_A = d_A;
    cb.seed = rng.seed();
    cb.v.reserve(M);
    for (int x = 0; x < M; ++x) {
        std::vector<UnitaryMatrix> row;
        row.reserve(n);
        for (int j = 0; j < n; ++j) row.push_back(qlin::haar_unitary(d_A, rng));
        cb.v.push_back(std::move(row));
    }
    cb.u.reserve(K);
    for (int k = 0; k < K; ++k) {
        std::vector<UnitaryMatrix> row;
        row.reserve(n);
        for (int j = 0; j < n; ++j) row.push_back(qlin::haar_unitary(d_A, rng));
        cb.u.push_back(std::move(row));
    }
    return cb;
}

DensityMatrix codeword(const CodeBook& cb, int x) {
    const long long dim = ipow(cb.d_A, cb.n);
    Matrix sum = Matrix::Zero(dim, dim);
    for (int k = 0; k < cb.K; ++k) {
        const Vector w = cb.scrambled_vector(k, x);
        sum += qlin::rank_one_projector(w);
    }
    return DensityMatrix(sum / static_cast<double>(cb.K));
}

PgmResult pgm_from_operators(const std::vector<Matrix>& gammas) {
    if (gammas.empty()) throw ValidationError("pgm: empty operator list");
    const Eigen::Index dim = gammas.front().rows();
    Matrix t = Matrix::Zero(dim, dim);
    for (const Matrix& g : gammas) {
        if (g.rows() != dim || g.cols() != dim)
            throw ValidationError("pgm: operator dimension mismatch");
        t += g;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver((t + t.adjoint()) / 2.0);
    const Eigen::VectorXd evals = solver.eigenvalues();
    const double lambda_max = evals.maxCoeff();
    if (lambda_max <= 0.0)
        throw ValidationError("pgm: all operators vanish (zero support)");
    const double cutoff = kPgmSupportCutoff * lambda_max;

    Matrix t_inv_sqrt = Matrix::Zero(dim, dim);
    Matrix support = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals[i] > cutoff) {
            const Vector vec = solver.eigenvectors().col(i);
            t_inv_sqrt += (1.0 / std::sqrt(evals[i])) * qlin::rank_one_projector(vec);
            support += qlin::rank_one_projector(vec);
        }
    }

    PgmResult result;
    result.elements.reserve(gammas.size());
    Matrix sum_lambda = Matrix::Zero(dim, dim);
    for (const Matrix& g : gammas) {
        Matrix lambda = t_inv_sqrt * g * t_inv_sqrt;
        lambda = (lambda + lambda.adjoint()) / 2.0;
        sum_lambda += lambda;
        result.elements.emplace_back(std::move(lambda));
    }
    result.completeness_defect =
        qlin::operator_inf_norm(qlin::HermitianOperator(sum_lambda - support));
    return result;
}

PgmResult pgm_decoder(const std::vector<DensityMatrix>& output_states) {
    std::vector<Matrix> gammas;
    gammas.reserve(output_states.size());
    for (const DensityMatrix& s : output_states) gammas.push_back(s.data());
    return pgm_from_operators(gammas);
}

namespace {

/// Conditional typical projector for a product state given per-use factors:
/// spans eigenvector strings whose string log-likelihood is within delta of
/// s_star (per use).
Matrix conditional_typical_projector(const std::vector<Matrix>& factors, double s_star,
                                     double delta) {
    const int n = static_cast<int>(factors.size());
    const int d = static_cast<int>(factors.front().rows());
    std::vector<Eigen::VectorXd> spectra;
    std::vector<Matrix> bases;
    spectra.reserve(n);
    bases.reserve(n);
    for (const Matrix& f : factors) {
        Eigen::SelfAdjointEigenSolver<Matrix> es((f + f.adjoint()) / 2.0);
        spectra.push_back(es.eigenvalues());
        bases.push_back(es.eigenvectors());
    }
    Matrix basis = bases[0];
    for (int j = 1; j < n; ++j) basis = qlin::tensor(basis, bases[j]);

    const long long total = ipow(d, n);
    Matrix proj = Matrix::Zero(total, total);
    std::vector<int> idx(n, 0);
    for (long long s = 0; s < total; ++s) {
        long long rem = s;
        for (int j = n - 1; j >= 0; --j) {
            idx[j] = static_cast<int>(rem % d);
            rem /= d;
        }
        double log_p = 0.0;
        bool zero = false;
        for (int j = 0; j < n; ++j) {
            const double p = spectra[j][idx[j]];
            if (p <= 0.0) {
                zero = true;
                break;
            }
            log_p += std::log2(p);
        }
        if (zero) continue;
        if (std::abs(-log_p / n - s_star) <= delta)
            proj += qlin::rank_one_projector(Vector(basis.col(s)));
    }
    return proj;
}

} // namespace

DecodeResult decode_error(const CodeBook& cb, const BroadcastChannel& channel,
                          bool use_typicality, double delta0, double delta1) {
    if (channel.d_A() != cb.d_A)
        throw ValidationError("decode_error: channel input dimension != codebook d_A");
    check_workspace(channel.d_out(), cb.n, "decode_error");
    const int n = cb.n;
    const int pairs = cb.M * cb.K;

    // Per-use output factors for every (x, k): N(U_kj psi_j(x) U_kj^dag).
    std::vector<std::vector<Matrix>> factors(pairs);
    for (int x = 0; x < cb.M; ++x)
        for (int k = 0; k < cb.K; ++k) {
            std::vector<Matrix> fs;
            fs.reserve(n);
            for (int j = 0; j < n; ++j) {
                const Vector w = cb.u[k][j].data() * cb.v[x][j].data().col(0);
                fs.push_back(channel.base().apply_operator(qlin::rank_one_projector(w)));
            }
            factors[x * cb.K + k] = std::move(fs);
        }

    std::vector<Matrix> outputs(pairs);
    for (int a = 0; a < pairs; ++a) {
        Matrix out = factors[a][0];
        for (int j = 1; j < n; ++j) out = qlin::tensor(out, factors[a][j]);
        outputs[a] = std::move(out);
    }

    std::vector<Matrix> gammas = outputs;
    if (use_typicality) {
        // Unconditional projector from the spectrum of N(pi).
        const Matrix out_pi = channel.base().apply_operator(
            Matrix::Identity(cb.d_A, cb.d_A) / static_cast<double>(cb.d_A));
        Eigen::SelfAdjointEigenSolver<Matrix> es((out_pi + out_pi.adjoint()) / 2.0);
        std::vector<double> spec(es.eigenvalues().data(),
                                 es.eigenvalues().data() + es.eigenvalues().size());
        for (double& v : spec) v = std::max(v, 0.0);
        const std::vector<char> member = typical_membership(Pmf(spec), n, delta0);
        Matrix basis = es.eigenvectors();
        Matrix basis_n = basis;
        for (int j = 1; j < n; ++j) basis_n = qlin::tensor(basis_n, basis);
        Matrix pi0 = Matrix::Zero(basis_n.rows(), basis_n.cols());
        for (std::size_t s = 0; s < member.size(); ++s)
            if (member[s]) pi0 += qlin::rank_one_projector(Vector(basis_n.col(s)));

        // Conditional projectors are centered on the codebook's mean per-use
        // output entropy, the finite stand-in for the ensemble average.
        double s_star = 0.0;
        for (int a = 0; a < pairs; ++a)
            for (int j = 0; j < n; ++j)
                s_star += qlin::von_neumann_entropy(DensityMatrix(factors[a][j]));
        s_star /= static_cast<double>(pairs) * n;

        for (int a = 0; a < pairs; ++a) {
            const Matrix cond = conditional_typical_projector(factors[a], s_star, delta1);
            gammas[a] = pi0 * cond * pi0;
            gammas[a] = (gammas[a] + gammas[a].adjoint()) / 2.0;
        }
    }

    const PgmResult pgm = pgm_from_operators(gammas);

    DecodeResult result;
    result.M = cb.M;
    result.K = cb.K;
    result.povm_completeness_defect = pgm.completeness_defect;
    result.confusion.resize(pairs, pairs);
    double sum_success = 0.0;
    for (int a = 0; a < pairs; ++a) {
        for (int b = 0; b < pairs; ++b) {
            const double p = (pgm.elements[b].data() * outputs[a]).trace().real();
            result.confusion(a, b) = p;
        }
        sum_success += result.confusion(a, a);
    }
    result.avg_error = 1.0 - sum_success / pairs;
    return result;
}

std::vector<char> typical_membership(const Pmf& spectrum, int n, double delta) {
    if (n < 1) throw ValidationError("typical_membership: n must be >= 1");
    if (delta < 0.0) throw ValidationError("typical_membership: delta must be >= 0");
    const int d = static_cast<int>(spectrum.size());
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        total *= d;
        if (total > kMaxTypicalStrings)
            throw ResourceError("typical_membership: string count exceeds guard");
    }
    const double h = spectrum.entropy();
    std::vector<double> log_p(d, 0.0);
    std::vector<char> zero(d, 0);
    for (int i = 0; i < d; ++i) {
        if (spectrum[i] > 0.0)
            log_p[i] = std::log2(spectrum[i]);
        else
            zero[i] = 1;
    }
    std::vector<char> member(total, 0);
    std::vector<int> idx(n, 0);
    for (long long s = 0; s < total; ++s) {
        long long rem = s;
        double lp = 0.0;
        bool has_zero = false;
        for (int j = n - 1; j >= 0; --j) {
            const int y = static_cast<int>(rem % d);
            rem /= d;
            if (zero[y]) {
                has_zero = true;
                break;
            }
            lp += log_p[y];
        }
        if (!has_zero && std::abs(-lp / n - h) <= delta) member[s] = 1;
    }
    return member;
}

HermitianOperator typical_projector(const Pmf& spectrum, int n, double delta) {
    const std::vector<char> member = typical_membership(spectrum, n, delta);
    if (static_cast<long long>(member.size()) > kWorkspaceMaxDim)
        throw ResourceError("typical_projector: dense projector exceeds workspace guard");
    const Eigen::Index dim = static_cast<Eigen::Index>(member.size());
    Matrix proj = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        if (member[i]) proj(i, i) = 1.0;
    return HermitianOperator(std::move(proj));
}

RatePlan rate_plan(int n, int d_A, int d_B, int d_C, double s_max_mixed,
                   double s_out_avg, double delta0, double delta1, double delta2,
                   double lambda, double gamma) {
    if (n < 1) throw ValidationError("rate_plan: n must be >= 1");
    if (delta0 < 0.0 || delta1 < 0.0)
        throw ValidationError("rate_plan: deltas must be >= 0");
    RatePlan plan;
    plan.n = n;
    plan.d_A = d_A;
    plan.d_B = d_B;
    plan.d_C = d_C;
    plan.s_max_mixed = s_max_mixed;
    plan.s_out_avg = s_out_avg;
    plan.delta0 = delta0;
    plan.delta1 = delta1;
    plan.delta2 = delta2;
    plan.lambda = lambda;
    const double d_plus = std::max(d_B, d_C);
    plan.log_K_rate = std::log2(d_plus) + std::log2(gamma) +
                      lambda * std::log2(static_cast<double>(n)) / n;
    plan.log_M_rate =
        s_max_mixed - s_out_avg - 2.0 * delta0 - 2.0 * delta1 - plan.log_K_rate;
    plan.message_rate_positive = plan.log_M_rate > 0.0;
    return plan;
}

double k_threshold(int n, int d_B, int d_C, double delta2, double gamma) {
    if (delta2 <= 0.0 || delta2 >= 1.0)
        throw ValidationError("k_threshold: delta2 must be in (0,1)");
    if (n < 1) throw ValidationError("k_threshold: n must be >= 1");
    const double d_plus = std::max(d_B, d_C);
    const double d = static_cast<double>(d_B) * d_C;
    return 8.0 * std::pow(d_plus, n) * std::pow(gamma, n) / (delta2 * delta2) *
           std::log2(10.0 * std::pow(d, n) / delta2);
}

} // namespace hidecap::codes
