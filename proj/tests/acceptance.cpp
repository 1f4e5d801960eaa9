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

// End-to-end acceptance suite. Each criterion prints one pass/fail line with
// its measured margin; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hidecap/bounds.hpp"
#include "hidecap/channels.hpp"
#include "hidecap/codes.hpp"
#include "hidecap/io.hpp"
#include "hidecap/parallel.hpp"
#include "hidecap/security.hpp"
#include "oracles.hpp"

using namespace hidecap;
using channels::BroadcastChannel;
using qlin::Matrix;
using qlin::Vector;

namespace {

constexpr double kLn2 = std::numbers::ln2;

int g_failures = 0;

class Criterion {
  public:
    Criterion(int id, std::string name)
        : id_(id), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    void check(bool ok, const std::string& detail) {
        if (!ok) {
            pass_ = false;
            if (first_failure_.empty()) first_failure_ = detail;
        }
        ++checks_;
    }

    void note(const std::string& text) { notes_ = text; }

    ~Criterion() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        std::ostringstream line;
        line << (pass_ ? "[PASS]" : "[FAIL]") << " criterion " << id_ << ": " << name_
             << " (" << checks_ << " checks";
        if (!notes_.empty()) line << ", " << notes_;
        line << ", " << io::format_double(seconds) << " s)";
        if (!pass_) line << " -- first failure: " << first_failure_;
        std::cout << line.str() << std::endl;
        if (!pass_) ++g_failures;
    }

    bool passing() const { return pass_; }

  private:
    int id_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    bool pass_ = true;
    int checks_ = 0;
    std::string first_failure_;
    std::string notes_;
};

std::string fmt(double v) { return io::format_double(v); }

// ---- criterion 1 -------------------------------------------------------

void criterion_gamma_closed_form() {
    Criterion c(1, "depolarizing gamma closed form (d=4, d=6; eigenvalue path)");
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [d, d_B, d_C] : {std::tuple{4, 2, 2}, std::tuple{6, 2, 3}}) {
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double got =
                bounds::gamma_mictodiactic(channels::depolarizing(d, p, d_B, d_C));
            const double expected = 1.0 + p * p * (2.0 * d / (d + 1.0) - 1.0);
            c.check(std::abs(got - expected) <= 1e-10,
                    "d=" + std::to_string(d) + " p=" + fmt(p) + " got " + fmt(got) +
                        " expected " + fmt(expected));
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(seconds < 1.0, "runtime " + fmt(seconds) + " s exceeds 1 s");
    c.note("runtime " + fmt(seconds) + " s < 1 s");
}

// ---- criterion 2 -------------------------------------------------------

void criterion_depolarizing_chi() {
    Criterion c(2, "depolarizing chi: Monte Carlo vs closed form");
    const auto start = std::chrono::steady_clock::now();
    const int samples = 20000;
    double worst_diff = 0.0;
    Rng root(20260808);
    for (int d : {2, 4}) {
        const int d_B = (d == 2) ? 1 : 2;
        for (int pi = 1; pi <= 9; ++pi) {
            const double p = pi / 10.0;
            Rng rng = root.spawn();
            const auto [chi, se] = bounds::holevo_uniform(
                channels::depolarizing(d, p, d_B, d / d_B), samples, rng);
            const double exact = bounds::depolarizing_chi_closed_form(d, p);
            const double diff = std::abs(chi - exact);
            worst_diff = std::max(worst_diff, diff);
            c.check(diff <= 3.0 * se + 5e-3,
                    "d=" + std::to_string(d) + " p=" + fmt(p) + " |diff|=" + fmt(diff) +
                        " tol=" + fmt(3.0 * se + 5e-3));
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(seconds < 30.0, "runtime " + fmt(seconds) + " s exceeds 30 s");
    c.note("worst |diff| " + fmt(worst_diff) + ", runtime " + fmt(seconds) + " s < 30 s");
}

// ---- criterion 3 -------------------------------------------------------

void criterion_coherent_bound() {
    Criterion c(3, "coherent-state bound curve and heterodyne determinant route");
    const double log2e = 1.0 / kLn2;
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double ns = std::pow(10.0, -6.0 + 12.0 * i / 200.0); // (1e-6, 1e6]
        const double b =
            bounds::coherent_state_upper_bound(bounds::CoherentBoundInput(ns, 0.5));
        c.check(b >= 0.0, "negative bound at N_S=" + fmt(ns));
        c.check(b > prev, "non-monotone at N_S=" + fmt(ns));
        c.check(b <= log2e + 1e-9, "bound exceeds log2(e) at N_S=" + fmt(ns));
        prev = b;
    }
    const double at1e4 =
        bounds::coherent_state_upper_bound(bounds::CoherentBoundInput(1e4, 0.5));
    c.check(std::abs(at1e4 - 1.4427) <= 0.01,
            "value at N_S=1e4 is " + fmt(at1e4) + ", not within 0.01 of 1.4427");

    double worst_det = 0.0;
    for (double ns : {1e-3, 0.1, 1.0, 17.0, 1234.5, 1e6}) {
        for (int i = 1; i <= 19; ++i) {
            const double eta = i / 20.0;
            const double het = bounds::heterodyne_mutual_info(
                bounds::CoherentBoundInput(ns, eta));
            const double diff = std::abs(het - std::log2(1.0 + ns));
            worst_det = std::max(worst_det, diff);
            c.check(diff <= 1e-12, "determinant route off by " + fmt(diff) +
                                       " at N_S=" + fmt(ns) + " eta=" + fmt(eta));
        }
    }
    c.note("value(1e4)=" + fmt(at1e4) + ", worst det-route diff " + fmt(worst_det));
}

// ---- criterion 4 -------------------------------------------------------

void criterion_error_prob_identity() {
    Criterion c(4, "error probability equals normalized trace distance");
    Rng rng(44);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(15)); // up to 16 symbols
        std::vector<double> p(n);
        double sum = 0.0;
        for (double& v : p) {
            v = rng.uniform() + 1e-6;
            sum += v;
        }
        for (double& v : p) v /= sum;
        Eigen::MatrixXd q(n, n);
        for (int m = 0; m < n; ++m) {
            double col = 0.0;
            for (int mp = 0; mp < n; ++mp) {
                q(mp, m) = rng.uniform() + 1e-6;
                col += q(mp, m);
            }
            for (int mp = 0; mp < n; ++mp) q(mp, m) /= col;
        }
        const auto [lhs, rhs] =
            security::trace_dist_equals_error_prob(qlin::Pmf(p), q);
        worst = std::max(worst, std::abs(lhs - rhs));
        c.check(std::abs(lhs - rhs) <= 1e-12,
                "instance " + std::to_string(trial) + " |lhs-rhs|=" +
                    fmt(std::abs(lhs - rhs)));
    }
    c.note("worst |lhs-rhs| " + fmt(worst) + " over 1000 instances");
}

// ---- criterion 5 -------------------------------------------------------

void criterion_tail_bounds() {
    Criterion c(5, "Maurer/Chernoff bounds never violated by empirical tails");
    Rng root(55);
    const int ensembles = 150;
    int estimates = 0;

    for (int d : {2, 4}) {
        for (int K : {10, 100, 1000}) {
            for (double p : {1.0, 0.7, 0.4}) {
                for (int inst = 0; inst < 7; ++inst) {
                    Rng rng = root.spawn();
                    // Rank-one product measurement direction; for any unit w,
                    // <ww|P_sym|ww> = 1, so the moments are analytic.
                    const int d_B = (d == 2) ? 1 : 2;
                    const Vector b = qlin::random_unit_vector(d_B, rng);
                    const Vector cvec = qlin::random_unit_vector(d / d_B, rng);
                    const Vector w = security::interleave_product(b, cvec, d_B,
                                                                  d / d_B, 1);
                    const double mean = 1.0 / d;
                    const double y2 = 2.0 / (d * (d + 1.0));
                    const double ex2 = p * p * y2 + 2.0 * p * (1.0 - p) / (d * d) +
                                       (1.0 - p) * (1.0 - p) / (d * d);

                    // X = p |<w|v>|^2 + (1-p)/d with v Haar
                    std::vector<double> means(ensembles);
                    for (int e = 0; e < ensembles; ++e) {
                        double s = 0.0;
                        for (int k = 0; k < K; ++k) {
                            const Vector v = qlin::random_unit_vector(d, rng);
                            s += p * std::norm((w.adjoint() * v)(0)) + (1.0 - p) / d;
                        }
                        means[e] = s / K;
                    }

                    // tau grid sized so the bound stays resolvable at this
                    // ensemble count
                    const double tau_max_m =
                        std::sqrt(2.0 * ex2 * std::log(ensembles / 5.0) / K);
                    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
                        const double tau = frac * tau_max_m;
                        double hits = 0.0;
                        for (double m : means)
                            if (m < mean - tau) hits += 1.0;
                        const double bound = security::maurer_bound(mean, ex2, K, tau);
                        ++estimates;
                        c.check(hits / ensembles <= bound,
                                "Maurer violated: d=" + std::to_string(d) + " K=" +
                                    std::to_string(K) + " p=" + fmt(p) + " tau=" +
                                    fmt(tau) + " empirical " + fmt(hits / ensembles) +
                                    " > bound " + fmt(bound));
                    }
                    const double tau_max_c = std::min(
                        std::sqrt(4.0 * kLn2 * std::log(ensembles / 5.0) / (K * mean)),
                        1.0 / mean - 1.0);
                    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
                        const double tau = frac * tau_max_c;
                        if (tau <= 0.0) continue;
                        double hits = 0.0;
                        for (double m : means)
                            if (m > (1.0 + tau) * mean) hits += 1.0;
                        const double bound = security::chernoff_bound(mean, K, tau);
                        ++estimates;
                        c.check(hits / ensembles <= bound,
                                "Chernoff violated: d=" + std::to_string(d) + " K=" +
                                    std::to_string(K) + " p=" + fmt(p) + " tau=" +
                                    fmt(tau) + " empirical " + fmt(hits / ensembles) +
                                    " > bound " + fmt(bound));
                    }
                }
            }
        }
    }
    c.note(std::to_string(estimates) + " tail estimates, zero violations required");
}

// ---- criterion 6 -------------------------------------------------------

void criterion_haar_gamma_consistency() {
    Criterion c(6, "Haar moments: mean 1/(d_B d_C)^n and empirical gamma <= gamma");
    Rng root(66);
    for (double p : {0.0, 0.5, 1.0}) {
        const BroadcastChannel ch = channels::depolarizing(4, p, 2, 2);
        const double gamma = bounds::gamma_mictodiactic(ch);
        for (int n : {1, 2}) {
            Rng rng = root.spawn();
            const long long d_side = n == 1 ? 2 : 4;
            const Vector b = qlin::random_unit_vector(static_cast<int>(d_side), rng);
            const Vector cv = qlin::random_unit_vector(static_cast<int>(d_side), rng);
            const auto mom = security::xk_moments(ch, n, b, cv, 10000, rng, gamma);
            const double expected_mean = std::pow(0.25, n);
            c.check(std::abs(mom.mean - expected_mean) <=
                        4.0 * mom.mean_stderr + 1e-12,
                    "mean off at p=" + fmt(p) + " n=" + std::to_string(n) + ": " +
                        fmt(mom.mean) + " vs " + fmt(expected_mean) + " (4se=" +
                        fmt(4.0 * mom.mean_stderr) + ")");
            c.check(mom.gamma_empirical <= gamma + 4.0 * mom.gamma_stderr + 1e-12,
                    "gamma_empirical " + fmt(mom.gamma_empirical) + " above gamma " +
                        fmt(gamma) + " + 4se at p=" + fmt(p) +
                        " n=" + std::to_string(n));
        }
    }
    c.note("depolarizing d=4, p in {0, 0.5, 1}, n in {1, 2}, 1e4 samples each");
}

// ---- criterion 7 -------------------------------------------------------

void criterion_pgm_oracle() {
    Criterion c(7, "PGM decode error matches the brute-force oracle");
    double worst = 0.0;

    struct Instance {
        int d_A, n, M, K;
        double p; // depolarizing weight; 1.0 = identity channel
        int d_B, d_C;
        std::uint64_t seed;
    };
    const std::vector<Instance> instances = {
        {2, 1, 2, 1, 1.0, 1, 2, 101}, {2, 1, 2, 1, 0.9, 1, 2, 102},
        {2, 2, 3, 2, 0.6, 1, 2, 103}, {4, 1, 4, 2, 0.7, 2, 2, 104},
        {4, 1, 4, 1, 1.0, 2, 2, 105}, {4, 2, 3, 1, 0.85, 2, 2, 106},
        {2, 3, 2, 2, 0.75, 1, 2, 107}, {2, 2, 4, 1, 1.0, 1, 2, 108},
        {6, 1, 3, 2, 0.8, 2, 3, 109}, {3, 2, 2, 2, 0.65, 1, 3, 110},
    };

    for (const Instance& inst : instances) {
        const BroadcastChannel ch =
            inst.p == 1.0 ? channels::identity_broadcast(inst.d_B, inst.d_C)
                          : channels::depolarizing(inst.d_A, inst.p, inst.d_B, inst.d_C);
        Rng rng(inst.seed);
        const codes::CodeBook cb =
            codes::generate_codebook(inst.n, inst.M, inst.K, inst.d_A, rng);
        const codes::DecodeResult r = codes::decode_error(cb, ch);

        const channels::KrausChannel uses = ch.base().tensor_power(inst.n);
        std::vector<Matrix> states;
        for (int x = 0; x < inst.M; ++x)
            for (int k = 0; k < inst.K; ++k)
                states.push_back(uses.apply_operator(
                    qlin::rank_one_projector(cb.scrambled_vector(k, x))));
        const double oracle = oracles::pgm_error_oracle(states);
        const double diff = std::abs(r.avg_error - oracle);
        worst = std::max(worst, diff);
        c.check(diff <= 1e-12, "instance seed " + std::to_string(inst.seed) +
                                   " |p_err - oracle| = " + fmt(diff));
    }

    // Orthogonal codeword sets decode exactly.
    {
        Matrix x = Matrix::Zero(2, 2);
        x(0, 1) = x(1, 0) = 1.0;
        const qlin::UnitaryMatrix X(x), I = qlin::UnitaryMatrix::identity(2);
        const codes::CodeBook pair =
            codes::CodeBook::from_unitaries(1, 2, {{I}, {X}}, {{I}});
        const double e1 =
            codes::decode_error(pair, channels::identity_broadcast(1, 2)).avg_error;
        c.check(e1 <= 1e-10, "orthogonal qubit pair error " + fmt(e1));

        const codes::CodeBook quad = codes::CodeBook::from_unitaries(
            2, 2, {{I, I}, {I, X}, {X, I}, {X, X}}, {{I, I}});
        const double e2 =
            codes::decode_error(quad, channels::identity_broadcast(1, 2)).avg_error;
        c.check(e2 <= 1e-10, "orthogonal two-qubit quadruple error " + fmt(e2));
    }
    c.note("worst |p_err - oracle| " + fmt(worst) + " over 10 random instances");
}

// ---- criterion 8 -------------------------------------------------------

void criterion_mi_trend() {
    Criterion c(8, "worst sampled-measurement MI decays with the scrambling count K");
    const auto start = std::chrono::steady_clock::now();

    const BroadcastChannel ch = channels::depolarizing(4, 0.5, 2, 2);
    const double delta2 = 0.2;
    const double gamma = bounds::gamma_mictodiactic(ch);
    const double k_star = codes::k_threshold(1, 2, 2, delta2, gamma);

    const std::vector<int> k_values = {
        static_cast<int>(std::llround(k_star / 4.0)),
        static_cast<int>(std::llround(k_star / 2.0)),
        static_cast<int>(std::llround(k_star)),
        static_cast<int>(std::llround(k_star * 2.0)),
        static_cast<int>(std::llround(k_star * 4.0))};
    const int seeds = 20;
    const int u_samples = 32;
    const int n_measurements = 200;
    const int threads = std::min(2u, std::thread::hardware_concurrency());

    std::vector<double> means, stderrs;
    bool all_pinsker = true;
    for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
        std::vector<double> worst(seeds);
        std::vector<char> pinsker(seeds, 1);
        const Rng root(8800 + ki);
        parallel_for(seeds, threads, [&](int s) {
            Rng rng = root.child(s);
            security::SweepParams params;
            params.n = 1;
            params.K = k_values[ki];
            params.u_samples = u_samples;
            params.n_measurements = n_measurements;
            const auto sweep = security::security_sweep(ch, params, rng);
            worst[s] = sweep.worst_mi;
            pinsker[s] = sweep.all_pinsker_ok ? 1 : 0;
        });
        double sum = 0.0, sum2 = 0.0;
        for (int s = 0; s < seeds; ++s) {
            sum += worst[s];
            sum2 += worst[s] * worst[s];
            if (!pinsker[s]) all_pinsker = false;
        }
        const double mean = sum / seeds;
        means.push_back(mean);
        stderrs.push_back(
            std::sqrt(std::max(0.0, sum2 / seeds - mean * mean) / seeds));
    }

    c.check(security::non_increasing_within(means, stderrs, 3.0),
            "worst-case MI means not non-increasing at 3 sigma: " + fmt(means[0]) +
                ", " + fmt(means[1]) + ", " + fmt(means[2]) + ", " + fmt(means[3]) +
                ", " + fmt(means[4]));
    c.check(all_pinsker, "a Pinsker check failed on at least one sample");

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(seconds < 600.0, "runtime " + fmt(seconds) + " s exceeds 10 min");
    std::ostringstream note;
    note << "K* = " << fmt(k_star) << ", MI means";
    for (double m : means) note << " " << fmt(m);
    note << ", runtime " << fmt(seconds) << " s";
    c.note(note.str());
}

// ---- criterion 9 -------------------------------------------------------

void criterion_determinism() {
    Criterion c(9, "stochastic commands reproduce byte-identical CSV");
    namespace fs = std::filesystem;
    const fs::path base =
        fs::temp_directory_path() / ("hidecap_accept_" + std::to_string(std::rand()));
    fs::create_directories(base);

    const auto run = [&](const std::string& args) {
        const std::string cmd =
            std::string(HIDECAP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    const auto same_bytes = [&](const std::string& a, const std::string& b) {
        return io::read_text_file(a) == io::read_text_file(b);
    };

    const std::vector<std::pair<std::string, std::string>> cases = {
        {"bounds --channel depolarizing:d=4,p=0.5 --split 2x2 --seed 7 --samples 500",
         "bounds_report.csv"},
        {"simulate --channel depolarizing:d=2,p=0.8 --split 1x2 --seed 3 --n 2 --M 2 "
         "--K 2 --trials 3",
         "simulate_results.csv"},
        {"security --channel depolarizing:d=4,p=0.5 --split 2x2 --seed 5 "
         "--u-samples 30 --measurements 10 --trials 2 --k-list 16 --k-list 64",
         "security_sweep.csv"},
        {"coherent --ns-points 40", "coherent_curve.csv"},
    };
    int idx = 0;
    for (const auto& [args, file] : cases) {
        const std::string d1 = (base / ("a" + std::to_string(idx))).string();
        const std::string d2 = (base / ("b" + std::to_string(idx))).string();
        const int r1 = run(args + " --out-dir " + d1);
        const int r2 = run(args + " --out-dir " + d2);
        c.check(r1 == 0 && r2 == 0, "command failed: " + args);
        if (r1 == 0 && r2 == 0)
            c.check(same_bytes(d1 + "/" + file, d2 + "/" + file),
                    "outputs differ for: " + args);
        ++idx;
    }
    std::error_code ec;
    fs::remove_all(base, ec);
    c.note("4 commands, each run twice");
}

} // namespace

int main() {
    std::cout << "hidecap acceptance suite" << std::endl;
    criterion_gamma_closed_form();
    criterion_depolarizing_chi();
    criterion_coherent_bound();
    criterion_error_prob_identity();
    criterion_tail_bounds();
    criterion_haar_gamma_consistency();
    criterion_pgm_oracle();
    criterion_mi_trend();
    criterion_determinism();
    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed" << std::endl;
        return 0;
    }
    std::cout << g_failures << " acceptance criteria FAILED" << std::endl;
    return 1;
}
