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

// Batch front-end: capacity bounds for a channel, random-coding simulation,
// security sweeps, and the coherent-state bound curve. All stochastic commands
// require an explicit --seed and reproduce byte-identical output when rerun
// with the same configuration.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hidecap/bounds.hpp"
#include "hidecap/channels.hpp"
#include "hidecap/codes.hpp"
#include "hidecap/io.hpp"
#include "hidecap/parallel.hpp"
#include "hidecap/security.hpp"

namespace {

using json = nlohmann::json;
using namespace hidecap;

struct ExperimentConfig {
    std::string command;
    std::string channel_spec;
    std::string split;
    std::optional<std::uint64_t> seed;
    int samples = 20000;
    std::string out_dir = ".";
    int threads = 1;

    // simulate
    int n = 1;
    int M = 2;
    int K = 2;
    int trials = 1;
    double delta0 = 0.0;
    double delta1 = 0.0;
    bool use_typicality = false;
    bool rate_sizing = false;
    bool save_codebooks = false;
    double lambda = 0.0;

    // security
    double delta2 = 0.2;
    int u_samples = 32;
    int measurements = 200;
    std::vector<double> k_list;
    int k_octaves = 2;

    // coherent
    double ns_min = 0.01;
    double ns_max = 1e6;
    int ns_points = 61;
    double eta = 0.5;

    // bounds extras
    int kappa_upper_trials = 0;

    // Execution details (threads, out_dir) stay out of the hashed config so
    // reruns of the same experiment stamp identically regardless of where and
    // how wide they run.
    json to_json() const {
        json j;
        j["command"] = command;
        j["channel"] = channel_spec;
        if (!split.empty()) j["split"] = split;
        if (seed) j["seed"] = *seed;
        j["samples"] = samples;
        j["n"] = n;
        j["M"] = M;
        j["K"] = K;
        j["trials"] = trials;
        j["delta0"] = delta0;
        j["delta1"] = delta1;
        j["delta2"] = delta2;
        j["lambda"] = lambda;
        j["use_typicality"] = use_typicality;
        j["rate_sizing"] = rate_sizing;
        j["save_codebooks"] = save_codebooks;
        j["u_samples"] = u_samples;
        j["measurements"] = measurements;
        j["k_list"] = k_list;
        j["k_octaves"] = k_octaves;
        j["ns_min"] = ns_min;
        j["ns_max"] = ns_max;
        j["ns_points"] = ns_points;
        j["eta"] = eta;
        j["kappa_upper_trials"] = kappa_upper_trials;
        return j;
    }

    std::string stamp() const {
        const std::string canonical = to_json().dump();
        std::string s = "config_hash=" + io::fnv1a_hex(canonical);
        if (seed) s += " seed=" + std::to_string(*seed);
        s += " command=" + command;
        return s;
    }
};

std::vector<int> parse_split(const std::string& split) {
    std::vector<int> dims;
    std::size_t pos = 0;
    while (pos < split.size()) {
        std::size_t next = split.find('x', pos);
        if (next == std::string::npos) next = split.size();
        const std::string piece = split.substr(pos, next - pos);
        try {
            dims.push_back(std::stoi(piece));
        } catch (...) {
            throw ValidationError("bad --split component '" + piece + "'");
        }
        pos = next + 1;
    }
    if (dims.empty()) throw ValidationError("empty --split");
    return dims;
}

/// Channel source: "depolarizing:d=4,p=0.5", "identity:d=4", or a JSON file
/// path. --split declares the output factorization (defaults to the file's).
channels::BroadcastChannel make_channel(const ExperimentConfig& cfg) {
    const std::string& spec = cfg.channel_spec;
    if (spec.empty()) throw ValidationError("--channel is required");

    const auto named_params = [](const std::string& body) {
        std::vector<std::pair<std::string, double>> params;
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t next = body.find(',', pos);
            if (next == std::string::npos) next = body.size();
            const std::string piece = body.substr(pos, next - pos);
            const std::size_t eq = piece.find('=');
            if (eq == std::string::npos)
                throw ValidationError("bad channel parameter '" + piece + "'");
            try {
                params.emplace_back(piece.substr(0, eq), std::stod(piece.substr(eq + 1)));
            } catch (const ValidationError&) {
                throw;
            } catch (...) {
                throw ValidationError("bad channel parameter value in '" + piece + "'");
            }
            pos = next + 1;
        }
        return params;
    };

    const auto split_or = [&](int d) {
        if (cfg.split.empty()) {
            // Default split: first divisor pair d_B <= d_C with d_B maximal.
            for (int b = static_cast<int>(std::sqrt(static_cast<double>(d))); b >= 1; --b)
                if (d % b == 0) return std::vector<int>{b, d / b};
        }
        return parse_split(cfg.split);
    };

    if (spec.rfind("depolarizing:", 0) == 0) {
        int d = 0;
        double p = -1.0;
        for (const auto& [k, v] : named_params(spec.substr(13))) {
            if (k == "d")
                d = static_cast<int>(v);
            else if (k == "p")
                p = v;
            else
                throw ValidationError("unknown depolarizing parameter '" + k + "'");
        }
        if (d < 2 || p < 0.0)
            throw ValidationError("depolarizing channel needs d>=2 and p in [0,1]");
        const std::vector<int> dims = split_or(d);
        long long prod = 1;
        for (int v : dims) prod *= v;
        if (prod != d) throw ValidationError("--split does not factor d");
        if (dims.size() == 2) return channels::depolarizing(d, p, dims[0], dims[1]);
        channels::BroadcastChannel bi = channels::depolarizing(d, p, dims[0],
                                                               d / dims[0]);
        return channels::BroadcastChannel(bi.base(), dims);
    }
    if (spec.rfind("identity:", 0) == 0) {
        int d = 0;
        for (const auto& [k, v] : named_params(spec.substr(9))) {
            if (k == "d")
                d = static_cast<int>(v);
            else
                throw ValidationError("unknown identity parameter '" + k + "'");
        }
        if (d < 1) throw ValidationError("identity channel needs d>=1");
        const std::vector<int> dims = split_or(d);
        long long prod = 1;
        for (int v : dims) prod *= v;
        if (prod != d) throw ValidationError("--split does not factor d");
        if (dims.size() == 2) return channels::identity_broadcast(dims[0], dims[1]);
        return channels::BroadcastChannel(channels::KrausChannel::identity(d), dims);
    }

    channels::BroadcastChannel loaded = io::load_channel(spec);
    if (!cfg.split.empty()) {
        const std::vector<int> dims = parse_split(cfg.split);
        if (dims.size() == 2)
            return channels::BroadcastChannel(loaded.base(), dims[0], dims[1]);
        return channels::BroadcastChannel(loaded.base(), dims);
    }
    return loaded;
}

std::uint64_t require_seed(const ExperimentConfig& cfg) {
    if (!cfg.seed)
        throw ValidationError("--seed is required for stochastic commands");
    return *cfg.seed;
}

void ensure_out_dir(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

json stamped_json(const ExperimentConfig& cfg) {
    json j;
    j["config"] = cfg.to_json();
    j["config_hash"] = io::fnv1a_hex(cfg.to_json().dump());
    if (cfg.seed) j["seed"] = *cfg.seed;
    return j;
}

// ---- commands ----

int cmd_bounds(const ExperimentConfig& cfg) {
    const std::uint64_t seed = require_seed(cfg);
    const channels::BroadcastChannel channel = make_channel(cfg);
    ensure_out_dir(cfg);

    Rng rng(seed);
    const bounds::BoundReport report = bounds::kappa_lower(channel, cfg.samples, rng);

    json j = stamped_json(cfg);
    j["report"] = io::bound_report_to_json(report);

    // Closed-form cross-checks for the depolarizing family.
    if (cfg.channel_spec.rfind("depolarizing:", 0) == 0) {
        const std::size_t dp = cfg.channel_spec.find("d=");
        const std::size_t pp = cfg.channel_spec.find("p=");
        if (dp != std::string::npos && pp != std::string::npos) {
            const int d = std::stoi(cfg.channel_spec.substr(dp + 2));
            const double p = std::stod(cfg.channel_spec.substr(pp + 2));
            const double chi_exact = bounds::depolarizing_chi_closed_form(d, p);
            const double gamma_exact =
                1.0 + p * p * (2.0 * d / (d + 1.0) - 1.0);
            j["cross_check"] = {{"chi_closed_form", chi_exact},
                                {"gamma_closed_form", gamma_exact},
                                {"chi_abs_diff", std::abs(chi_exact - report.chi)},
                                {"gamma_abs_diff", std::abs(gamma_exact - report.gamma)}};
        }
    }
    if (cfg.kappa_upper_trials > 0) {
        // Heuristic upper-bound objective on the computational-basis ensemble.
        std::vector<std::pair<double, qlin::DensityMatrix>> ensemble;
        const int d = channel.d_A();
        for (int i = 0; i < d; ++i) {
            qlin::Vector e = qlin::Vector::Zero(d);
            e[i] = 1.0;
            ensemble.emplace_back(1.0 / d, qlin::DensityMatrix::pure(e));
        }
        Rng upper_rng = rng.spawn();
        const bounds::KappaUpperEstimate est = bounds::kappa_upper_estimate(
            channel, ensemble, cfg.kappa_upper_trials, upper_rng);
        j["kappa_upper_estimate"] = {{"value", est.value},
                                     {"mi_output", est.mi_output},
                                     {"best_accessible", est.best_accessible},
                                     {"trials", est.trials},
                                     {"heuristic", est.heuristic}};
    }
    io::write_text_file(out_path(cfg, "bounds_report.json"), j.dump(2) + "\n");

    io::CsvWriter csv({"chi", "chi_stderr", "s_out_avg", "s_out_avg_stderr",
                       "s_max_mixed", "gamma", "log2_d_plus", "kappa_lower",
                       "kappa_lower_clamped", "chi_samples", "seed", "mictodiactic",
                       "unital"});
    csv.set_stamp(cfg.stamp());
    csv.add_row({io::CsvWriter::cell(report.chi), io::CsvWriter::cell(report.chi_stderr),
                 io::CsvWriter::cell(report.s_out_avg),
                 io::CsvWriter::cell(report.s_out_avg_stderr),
                 io::CsvWriter::cell(report.s_max_mixed), io::CsvWriter::cell(report.gamma),
                 io::CsvWriter::cell(report.log2_d_plus),
                 io::CsvWriter::cell(report.kappa_lower),
                 io::CsvWriter::cell(report.kappa_lower_clamped),
                 io::CsvWriter::cell(report.chi_samples), io::CsvWriter::cell(report.seed),
                 std::string(report.mictodiactic ? "1" : "0"),
                 std::string(report.unital ? "1" : "0")});
    csv.write(out_path(cfg, "bounds_report.csv"));

    std::cout << "kappa_lower = " << io::format_double(report.kappa_lower) << " bits ("
              << "chi = " << io::format_double(report.chi)
              << ", gamma = " << io::format_double(report.gamma) << ")\n";
    return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
    const std::uint64_t seed = require_seed(cfg);
    const channels::BroadcastChannel channel = make_channel(cfg);
    ensure_out_dir(cfg);

    int M = cfg.M, K = cfg.K;
    json sizing;
    if (cfg.rate_sizing) {
        Rng side_rng(Rng(seed).child(~0ULL).seed());
        const auto [chi, chi_se] = bounds::holevo_uniform(channel, cfg.samples, side_rng);
        const double s_max = qlin::von_neumann_entropy(channel.base().apply(
            qlin::DensityMatrix::maximally_mixed(channel.d_A())));
        const double s_avg = s_max - chi;
        const double gamma = bounds::gamma_multipartite(channel);
        const codes::RatePlan plan =
            codes::rate_plan(cfg.n, channel.d_A(), channel.d_B(), channel.d_C(), s_max,
                             s_avg, cfg.delta0, cfg.delta1, cfg.delta2, cfg.lambda, gamma);
        M = std::max(1, static_cast<int>(std::floor(std::exp2(cfg.n * plan.log_M_rate))));
        K = std::max(1, static_cast<int>(std::floor(std::exp2(cfg.n * plan.log_K_rate))));
        sizing = {{"log_M_rate", plan.log_M_rate},
                  {"log_K_rate", plan.log_K_rate},
                  {"message_rate_positive", plan.message_rate_positive},
                  {"M", M},
                  {"K", K}};
    }

    io::CsvWriter csv({"trial", "trial_seed", "M", "K", "n", "avg_error",
                       "povm_completeness_defect"});
    csv.set_stamp(cfg.stamp());

    std::vector<codes::DecodeResult> results(cfg.trials);
    std::vector<std::uint64_t> trial_seeds(cfg.trials);
    std::vector<std::string> codebook_dumps(cfg.trials);
    const Rng root(seed);
    parallel_for(cfg.trials, cfg.threads, [&](int t) {
        Rng trial_rng = root.child(t);
        trial_seeds[t] = trial_rng.seed();
        const codes::CodeBook cb =
            codes::generate_codebook(cfg.n, M, K, channel.d_A(), trial_rng);
        if (cfg.save_codebooks)
            codebook_dumps[t] = io::codebook_to_json(cb).dump(2) + "\n";
        results[t] = codes::decode_error(cb, channel, cfg.use_typicality, cfg.delta0,
                                         cfg.delta1);
    });
    if (cfg.save_codebooks)
        for (int t = 0; t < cfg.trials; ++t)
            io::write_text_file(out_path(cfg, "codebook_" + std::to_string(t) + ".json"),
                                codebook_dumps[t]);

    double err_sum = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        err_sum += results[t].avg_error;
        csv.add_row({io::CsvWriter::cell(t), io::CsvWriter::cell(trial_seeds[t]),
                     io::CsvWriter::cell(M), io::CsvWriter::cell(K),
                     io::CsvWriter::cell(cfg.n), io::CsvWriter::cell(results[t].avg_error),
                     io::CsvWriter::cell(results[t].povm_completeness_defect)});
    }
    csv.write(out_path(cfg, "simulate_results.csv"));

    json j = stamped_json(cfg);
    j["M"] = M;
    j["K"] = K;
    j["trials"] = cfg.trials;
    j["mean_avg_error"] = err_sum / cfg.trials;
    if (!sizing.is_null()) j["rate_sizing"] = sizing;
    j["per_trial"] = json::array();
    for (const auto& r : results) j["per_trial"].push_back(io::decode_result_to_json(r));
    io::write_text_file(out_path(cfg, "simulate_summary.json"), j.dump(2) + "\n");

    std::cout << "mean decode error over " << cfg.trials
              << " trial(s): " << io::format_double(err_sum / cfg.trials) << "\n";
    return 0;
}

int cmd_security(const ExperimentConfig& cfg) {
    const std::uint64_t seed = require_seed(cfg);
    const channels::BroadcastChannel channel = make_channel(cfg);
    ensure_out_dir(cfg);

    const double gamma = bounds::gamma_multipartite(channel);
    const double k_star =
        codes::k_threshold(cfg.n, channel.d_B(), channel.d_C(), cfg.delta2, gamma);

    std::vector<double> k_values = cfg.k_list;
    if (k_values.empty()) {
        for (int oct = -cfg.k_octaves; oct <= cfg.k_octaves; ++oct)
            k_values.push_back(k_star * std::exp2(oct));
    }

    io::CsvWriter csv({"trial", "K", "measurement", "mi", "mi_stderr", "bias_note",
                       "sec_dist", "sec_dist_stderr", "pinsker_rhs", "pinsker_ok"});
    csv.set_stamp(cfg.stamp());

    json summary = stamped_json(cfg);
    summary["gamma"] = gamma;
    summary["k_threshold"] = k_star;
    summary["per_k"] = json::array();

    const double d_out_n = std::pow(static_cast<double>(channel.d_out()), cfg.n);
    bool all_pinsker = true;
    std::vector<double> worst_means, worst_stderrs;
    const Rng root(seed);
    for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
        const int K = std::max(1, static_cast<int>(std::llround(k_values[ki])));
        std::vector<security::SweepResult> sweeps(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](int t) {
            Rng trial_rng = root.child(ki * 1000003ULL + t);
            security::SweepParams params;
            params.n = cfg.n;
            params.K = K;
            params.u_samples = cfg.u_samples;
            params.n_measurements = cfg.measurements;
            params.threads = 1;
            sweeps[t] = security::security_sweep(channel, params, trial_rng);
        });

        double worst_sum = 0.0, worst_sq = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const auto& sweep = sweeps[t];
            for (std::size_t m = 0; m < sweep.measurements.size(); ++m) {
                const auto& rep = sweep.measurements[m];
                csv.add_row({io::CsvWriter::cell(t), io::CsvWriter::cell(K),
                             io::CsvWriter::cell(static_cast<int>(m)),
                             io::CsvWriter::cell(rep.mi), io::CsvWriter::cell(rep.mi_stderr),
                             io::CsvWriter::cell(rep.bias_note),
                             io::CsvWriter::cell(rep.sec_dist),
                             io::CsvWriter::cell(rep.sec_dist_stderr),
                             io::CsvWriter::cell(rep.pinsker_rhs),
                             std::string(rep.pinsker_ok ? "1" : "0")});
            }
            if (!sweep.all_pinsker_ok) all_pinsker = false;
            worst_sum += sweep.worst_mi;
            worst_sq += sweep.worst_mi * sweep.worst_mi;
        }
        const double mean = worst_sum / cfg.trials;
        const double var = std::max(0.0, worst_sq / cfg.trials - mean * mean);
        const double se = cfg.trials > 1 ? std::sqrt(var / cfg.trials) : 0.0;
        worst_means.push_back(mean);
        worst_stderrs.push_back(se);

        const double bias =
            (d_out_n - 1.0) / (2.0 * cfg.u_samples * std::numbers::ln2);
        json per_k;
        per_k["K"] = K;
        per_k["worst_mi_mean"] = mean;
        per_k["worst_mi_stderr"] = se;
        per_k["mi_leak_threshold"] = cfg.delta2 * std::log2(d_out_n) + bias;
        per_k["below_threshold"] = mean <= cfg.delta2 * std::log2(d_out_n) + bias;
        per_k["at_or_above_k_threshold"] = K >= k_star;
        summary["per_k"].push_back(per_k);
    }
    csv.write(out_path(cfg, "security_sweep.csv"));

    summary["pinsker_all_ok"] = all_pinsker;
    summary["worst_mi_non_increasing_3sigma"] =
        security::non_increasing_within(worst_means, worst_stderrs, 3.0);
    io::write_text_file(out_path(cfg, "security_summary.json"), summary.dump(2) + "\n");

    std::cout << "security sweep: pinsker_all_ok="
              << (all_pinsker ? "true" : "false") << " trend_non_increasing="
              << (summary["worst_mi_non_increasing_3sigma"].get<bool>() ? "true" : "false")
              << "\n";
    return 0;
}

int cmd_coherent(const ExperimentConfig& cfg) {
    if (cfg.ns_min <= 0.0 || cfg.ns_max <= cfg.ns_min || cfg.ns_points < 2)
        throw ValidationError("coherent: need 0 < ns_min < ns_max and ns_points >= 2");
    ensure_out_dir(cfg);

    io::CsvWriter csv({"n_s", "g", "het_mi", "bound"});
    csv.set_stamp(cfg.stamp());
    const double log_min = std::log(cfg.ns_min);
    const double log_max = std::log(cfg.ns_max);
    const double log2e = 1.0 / std::numbers::ln2;
    for (int i = 0; i < cfg.ns_points; ++i) {
        const double ns =
            std::exp(log_min + (log_max - log_min) * i / (cfg.ns_points - 1));
        const bounds::CoherentBoundInput input(ns, cfg.eta);
        const double g = bounds::g_function(ns);
        const double het = bounds::heterodyne_mutual_info(input);
        const double bound = bounds::coherent_state_upper_bound(input);
        if (bound > log2e + 1e-9)
            throw ValidationError("coherent: bound exceeds log2(e), numerical defect");
        csv.add_row({io::CsvWriter::cell(ns), io::CsvWriter::cell(g),
                     io::CsvWriter::cell(het), io::CsvWriter::cell(bound)});
    }
    csv.write(out_path(cfg, "coherent_curve.csv"));
    std::cout << "coherent-state bound curve written ("
              << cfg.ns_points << " points, asymptote log2(e) = "
              << io::format_double(log2e) << ")\n";
    return 0;
}

int cmd_validate_channel(const ExperimentConfig& cfg) {
    const channels::BroadcastChannel channel = make_channel(cfg);
    json j;
    j["valid"] = true;
    j["d_A"] = channel.d_A();
    j["d_B"] = channel.d_B();
    j["d_C"] = channel.d_C();
    j["d_out"] = channel.d_out();
    j["d_plus"] = channel.d_plus();
    if (channel.d_list()) j["d_list"] = *channel.d_list();
    j["kraus_count"] = channel.base().kraus().size();
    j["mictodiactic"] = channels::is_mictodiactic(channel);
    j["unital"] =
        channel.d_A() == channel.d_out() && channel.base().is_unital();
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidecap: data-hiding capacity bounds and random-coding experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--channel", cfg.channel_spec,
                        "depolarizing:d=4,p=0.5 | identity:d=4 | channel.json");
        sub->add_option("--split", cfg.split, "output split, e.g. 2x2 or 2x2x2");
        sub->add_option("--seed", cfg.seed, "random seed (required for stochastic runs)");
        sub->add_option("--config", config_path, "JSON config file (flags override)");
        sub->add_option("--out-dir", cfg.out_dir, "output directory");
        sub->add_option("--samples", cfg.samples, "Monte-Carlo samples");
        sub->add_option("--threads", cfg.threads, "worker threads");
    };

    CLI::App* bounds_cmd = app.add_subcommand("bounds", "capacity bounds for a channel");
    add_common(bounds_cmd);
    bounds_cmd->add_option("--kappa-upper-trials", cfg.kappa_upper_trials,
                           "measurement trials for the heuristic upper-bound objective");

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "random-coding decode simulation");
    add_common(simulate_cmd);
    simulate_cmd->add_option("--n", cfg.n, "block length");
    simulate_cmd->add_option("--M", cfg.M, "message count");
    simulate_cmd->add_option("--K", cfg.K, "scrambling count");
    simulate_cmd->add_option("--trials", cfg.trials, "independent codebooks");
    simulate_cmd->add_flag("--use-typicality", cfg.use_typicality,
                           "sandwich the decoder with typical projectors");
    simulate_cmd->add_option("--delta0", cfg.delta0, "unconditional typicality width");
    simulate_cmd->add_option("--delta1", cfg.delta1, "conditional typicality width");
    simulate_cmd->add_flag("--rate-sizing", cfg.rate_sizing,
                           "derive M and K from the rate plan");
    simulate_cmd->add_flag("--save-codebooks", cfg.save_codebooks,
                           "write each trial's codebook as JSON");
    simulate_cmd->add_option("--delta2", cfg.delta2, "security width (rate sizing)");
    simulate_cmd->add_option("--lambda", cfg.lambda, "rate-plan lambda");

    CLI::App* security_cmd =
        app.add_subcommand("security", "measurement sweeps and concentration checks");
    add_common(security_cmd);
    security_cmd->add_option("--n", cfg.n, "block length");
    security_cmd->add_option("--delta2", cfg.delta2, "security width");
    security_cmd->add_option("--u-samples", cfg.u_samples, "scrambling tuples per point");
    security_cmd->add_option("--measurements", cfg.measurements,
                             "sampled product measurements per point");
    security_cmd->add_option("--k-list", cfg.k_list, "explicit K values");
    security_cmd->add_option("--k-octaves", cfg.k_octaves,
                             "octaves around the K threshold when no --k-list");
    security_cmd->add_option("--trials", cfg.trials, "independent seeds per K");

    CLI::App* coherent_cmd =
        app.add_subcommand("coherent", "coherent-state upper bound curve");
    add_common(coherent_cmd);
    coherent_cmd->add_option("--ns-min", cfg.ns_min, "smallest mean photon number");
    coherent_cmd->add_option("--ns-max", cfg.ns_max, "largest mean photon number");
    coherent_cmd->add_option("--ns-points", cfg.ns_points, "grid size (log-spaced)");
    coherent_cmd->add_option("--eta", cfg.eta, "beamsplitter transmissivity");

    CLI::App* validate_cmd =
        app.add_subcommand("validate-channel", "load and validate a channel");
    add_common(validate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();

    try {
        // Config file first, flags override.
        if (!config_path.empty()) {
            json file;
            try {
                file = json::parse(io::read_text_file(config_path));
            } catch (const json::parse_error& e) {
                throw ValidationError(std::string("config file: ") + e.what());
            }
            const auto take = [&](const char* key, auto& slot, const char* flag) {
                using T = std::decay_t<decltype(slot)>;
                if (file.contains(key) && sub->count(flag) == 0)
                    slot = file.at(key).get<T>();
            };
            take("channel", cfg.channel_spec, "--channel");
            take("split", cfg.split, "--split");
            take("samples", cfg.samples, "--samples");
            take("out_dir", cfg.out_dir, "--out-dir");
            take("threads", cfg.threads, "--threads");
            if (file.contains("seed") && sub->count("--seed") == 0)
                cfg.seed = file.at("seed").get<std::uint64_t>();
            const auto take_if = [&](const char* key, auto& slot, const char* flag) {
                using T = std::decay_t<decltype(slot)>;
                if (file.contains(key) &&
                    (sub->get_option_no_throw(flag) == nullptr || sub->count(flag) == 0))
                    slot = file.at(key).get<T>();
            };
            take_if("n", cfg.n, "--n");
            take_if("M", cfg.M, "--M");
            take_if("K", cfg.K, "--K");
            take_if("trials", cfg.trials, "--trials");
            take_if("delta0", cfg.delta0, "--delta0");
            take_if("delta1", cfg.delta1, "--delta1");
            take_if("delta2", cfg.delta2, "--delta2");
            take_if("lambda", cfg.lambda, "--lambda");
            take_if("use_typicality", cfg.use_typicality, "--use-typicality");
            take_if("rate_sizing", cfg.rate_sizing, "--rate-sizing");
            take_if("save_codebooks", cfg.save_codebooks, "--save-codebooks");
            take_if("u_samples", cfg.u_samples, "--u-samples");
            take_if("measurements", cfg.measurements, "--measurements");
            take_if("k_list", cfg.k_list, "--k-list");
            take_if("k_octaves", cfg.k_octaves, "--k-octaves");
            take_if("ns_min", cfg.ns_min, "--ns-min");
            take_if("ns_max", cfg.ns_max, "--ns-max");
            take_if("ns_points", cfg.ns_points, "--ns-points");
            take_if("eta", cfg.eta, "--eta");
            take_if("kappa_upper_trials", cfg.kappa_upper_trials, "--kappa-upper-trials");
        }

        if (cfg.command == "bounds") return cmd_bounds(cfg);
        if (cfg.command == "simulate") return cmd_simulate(cfg);
        if (cfg.command == "security") return cmd_security(cfg);
        if (cfg.command == "coherent") return cmd_coherent(cfg);
        if (cfg.command == "validate-channel") return cmd_validate_channel(cfg);
        throw ValidationError("unknown command");
    } catch (const ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
