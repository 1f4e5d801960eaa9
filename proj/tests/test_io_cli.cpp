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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "hidecap/io.hpp"

using namespace hidecap;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hidecap_test_" + std::to_string(std::rand()) +
                std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HIDECAP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("format_double is shortest round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.0, 2.0}) {
        const std::string s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(2.0) == "2");
}

TEST_CASE("channel JSON round trip") {
    const auto ch = channels::depolarizing(4, 0.3, 2, 2);
    const json j = io::channel_to_json(ch);
    const auto back = io::channel_from_json(j);
    CHECK(back.d_A() == 4);
    CHECK(back.d_B() == 2);
    CHECK(back.base().kraus().size() == ch.base().kraus().size());
    for (std::size_t i = 0; i < ch.base().kraus().size(); ++i)
        CHECK(qlin::max_abs(back.base().kraus()[i] - ch.base().kraus()[i]) < 1e-15);
}

TEST_CASE("channel JSON validation errors carry the entry index") {
    json j;
    j["d_in"] = 2;
    j["d_out"] = 2;
    j["d_B"] = 1;
    j["d_C"] = 2;
    j["kraus"] = json::array({json::array({json::array({1.0, 0.0}),
                                           json::array({0.0, 0.0}),
                                           json::array({0.0, 0.0})})});
    try {
        io::channel_from_json(j);
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("kraus[0]") != std::string::npos);
    }

    SUBCASE("incomplete Kraus set fails the completeness check") {
        json half;
        half["d_in"] = 2;
        half["d_out"] = 2;
        half["d_B"] = 1;
        half["d_C"] = 2;
        half["kraus"] = json::array({json::array(
            {json::array({0.5, 0.0}), json::array({0.0, 0.0}),
             json::array({0.0, 0.0}), json::array({0.5, 0.0})})});
        CHECK_THROWS_AS(io::channel_from_json(half), ValidationError);
    }
}

TEST_CASE("codebook JSON round trip") {
    Rng rng(31);
    const codes::CodeBook cb = codes::generate_codebook(2, 2, 3, 2, rng);
    const codes::CodeBook back = io::codebook_from_json(io::codebook_to_json(cb));
    CHECK(back.n == cb.n);
    CHECK(back.M == cb.M);
    CHECK(back.K == cb.K);
    CHECK(back.seed == cb.seed);
    for (int x = 0; x < cb.M; ++x)
        for (int j = 0; j < cb.n; ++j)
            CHECK(qlin::max_abs(back.v[x][j].data() - cb.v[x][j].data()) < 1e-15);
}

TEST_CASE("CLI determinism: identical config reproduces byte-identical CSV") {
    TempDir dir;
    const std::string out1 = dir.str("run1");
    const std::string out2 = dir.str("run2");
    const std::string base =
        "bounds --channel depolarizing:d=4,p=0.5 --split 2x2 --seed 9 --samples 400";
    REQUIRE(run_cli(base + " --out-dir " + out1) == 0);
    REQUIRE(run_cli(base + " --out-dir " + out2) == 0);
    CHECK(io::read_text_file(out1 + "/bounds_report.csv") ==
          io::read_text_file(out2 + "/bounds_report.csv"));
    CHECK(io::read_text_file(out1 + "/bounds_report.json") ==
          io::read_text_file(out2 + "/bounds_report.json"));
}

TEST_CASE("CLI config file with flag override") {
    TempDir dir;
    json cfg;
    cfg["channel"] = "depolarizing:d=2,p=0.5";
    cfg["split"] = "1x2";
    cfg["seed"] = 4;
    cfg["samples"] = 300;
    cfg["out_dir"] = dir.str("from_config");
    io::write_text_file(dir.str("cfg.json"), cfg.dump());

    REQUIRE(run_cli("bounds --config " + dir.str("cfg.json")) == 0);
    CHECK(fs::exists(dir.str("from_config") + "/bounds_report.json"));

    // flag overrides the config's output directory
    REQUIRE(run_cli("bounds --config " + dir.str("cfg.json") + " --out-dir " +
                    dir.str("flag_wins")) == 0);
    CHECK(fs::exists(dir.str("flag_wins") + "/bounds_report.json"));
}

TEST_CASE("CLI exit codes") {
    TempDir dir;
    SUBCASE("missing seed is a usage error") {
        CHECK(run_cli("bounds --channel identity:d=4 --out-dir " + dir.str("x")) == 2);
    }
    SUBCASE("malformed channel file") {
        io::write_text_file(dir.str("bad.json"), "{not json");
        CHECK(run_cli("validate-channel --channel " + dir.str("bad.json")) == 2);
    }
    SUBCASE("resource guard maps to exit 3") {
        CHECK(run_cli("simulate --channel identity:d=2 --split 1x2 --seed 1 --n 13 "
                      "--M 1 --K 1 --out-dir " +
                      dir.str("y")) == 3);
    }
    SUBCASE("valid channel file round trips through validate-channel") {
        io::save_channel(channels::depolarizing(4, 0.25, 2, 2), dir.str("ch.json"));
        CHECK(run_cli("validate-channel --channel " + dir.str("ch.json")) == 0);
    }
}

TEST_CASE("CLI security command is deterministic") {
    TempDir dir;
    const std::string base =
        "security --channel depolarizing:d=4,p=0.5 --split 2x2 --seed 5 "
        "--u-samples 30 --measurements 5 --trials 1 --k-list 8 --k-list 16";
    REQUIRE(run_cli(base + " --out-dir " + dir.str("a")) == 0);
    REQUIRE(run_cli(base + " --out-dir " + dir.str("b")) == 0);
    CHECK(io::read_text_file(dir.str("a") + "/security_sweep.csv") ==
          io::read_text_file(dir.str("b") + "/security_sweep.csv"));

    SUBCASE("thread count does not change the bytes") {
        REQUIRE(run_cli(base + " --threads 2 --out-dir " + dir.str("c")) == 0);
        CHECK(io::read_text_file(dir.str("a") + "/security_sweep.csv") ==
              io::read_text_file(dir.str("c") + "/security_sweep.csv"));
    }
}

TEST_CASE("CLI multipartite bounds run") {
    TempDir dir;
    REQUIRE(run_cli("bounds --channel depolarizing:d=8,p=0.5 --split 2x2x2 --seed 13 "
                    "--samples 300 --out-dir " +
                    dir.str("multi")) == 0);
    const json j =
        json::parse(io::read_text_file(dir.str("multi") + "/bounds_report.json"));
    // d_+ = 2 for the 2x2x2 split
    CHECK(j["report"]["log2_d_plus"].get<double>() == doctest::Approx(1.0));
    CHECK(j["report"]["gamma"].get<double>() > 0.0);
    CHECK(j["report"]["mictodiactic"].get<bool>());
}

TEST_CASE("CLI simulate determinism across thread counts") {
    TempDir dir;
    const std::string base =
        "simulate --channel depolarizing:d=2,p=0.8 --split 1x2 --seed 21 --n 1 "
        "--M 2 --K 2 --trials 4";
    REQUIRE(run_cli(base + " --threads 1 --out-dir " + dir.str("t1")) == 0);
    REQUIRE(run_cli(base + " --threads 4 --out-dir " + dir.str("t4")) == 0);
    CHECK(io::read_text_file(dir.str("t1") + "/simulate_results.csv") ==
          io::read_text_file(dir.str("t4") + "/simulate_results.csv"));
}
