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

#include "hidecap/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hidecap::io {

using json = nlohmann::json;
using qlin::Matrix;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xF];
        h >>= 4;
    }
    return std::string(buf, 16);
}

namespace {

json matrix_to_flat_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

Matrix matrix_from_flat_json(const json& j, Eigen::Index rows, Eigen::Index cols,
                             const std::string& where) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols)
        throw ValidationError(where + ": expected " + std::to_string(rows * cols) +
                              " [re, im] entries, got " + std::to_string(j.size()));
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows * cols; ++i) {
        const json& e = j[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ValidationError(where + ": entry " + std::to_string(i) +
                                  " is not a [re, im] pair");
        m(i / cols, i % cols) =
            qlin::Complex(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

} // namespace

channels::BroadcastChannel channel_from_json(const json& j) {
    for (const char* key : {"d_in", "d_out", "kraus"})
        if (!j.contains(key))
            throw ValidationError(std::string("channel: missing field '") + key + "'");
    const int d_in = j.at("d_in").get<int>();
    const int d_out = j.at("d_out").get<int>();
    if (d_in < 1 || d_out < 1)
        throw ValidationError("channel: dimensions must be positive");

    const json& kraus_json = j.at("kraus");
    if (!kraus_json.is_array() || kraus_json.empty())
        throw ValidationError("channel: 'kraus' must be a non-empty array");
    std::vector<Matrix> kraus;
    kraus.reserve(kraus_json.size());
    for (std::size_t i = 0; i < kraus_json.size(); ++i)
        kraus.push_back(matrix_from_flat_json(kraus_json[i], d_out, d_in,
                                              "channel: kraus[" + std::to_string(i) + "]"));

    channels::KrausChannel base(d_in, d_out, std::move(kraus));
    if (j.contains("d_list")) {
        std::vector<int> d_list = j.at("d_list").get<std::vector<int>>();
        return channels::BroadcastChannel(std::move(base), std::move(d_list));
    }
    if (!j.contains("d_B") || !j.contains("d_C"))
        throw ValidationError("channel: missing 'd_B'/'d_C' (or 'd_list')");
    return channels::BroadcastChannel(std::move(base), j.at("d_B").get<int>(),
                                      j.at("d_C").get<int>());
}

json channel_to_json(const channels::BroadcastChannel& channel) {
    json j;
    j["d_in"] = channel.d_A();
    j["d_out"] = channel.d_out();
    j["d_B"] = channel.d_B();
    j["d_C"] = channel.d_C();
    if (channel.d_list()) j["d_list"] = *channel.d_list();
    json kraus = json::array();
    for (const Matrix& k : channel.base().kraus()) kraus.push_back(matrix_to_flat_json(k));
    j["kraus"] = std::move(kraus);
    return j;
}

channels::BroadcastChannel load_channel(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ValidationError("channel file '" + path + "': " + e.what());
    }
    return channel_from_json(j);
}

void save_channel(const channels::BroadcastChannel& channel, const std::string& path) {
    write_text_file(path, channel_to_json(channel).dump(2) + "\n");
}

json bound_report_to_json(const bounds::BoundReport& r) {
    json j;
    j["chi"] = r.chi;
    j["chi_stderr"] = r.chi_stderr;
    j["s_out_avg"] = r.s_out_avg;
    j["s_out_avg_stderr"] = r.s_out_avg_stderr;
    j["s_max_mixed"] = r.s_max_mixed;
    j["gamma"] = r.gamma;
    j["log2_d_plus"] = r.log2_d_plus;
    j["kappa_lower"] = r.kappa_lower;
    j["kappa_lower_clamped"] = r.kappa_lower_clamped;
    j["chi_samples"] = r.chi_samples;
    j["seed"] = r.seed;
    j["mictodiactic"] = r.mictodiactic;
    j["unital"] = r.unital;
    j["gamma_outside_paper_scope"] = r.gamma_outside_paper_scope;
    j["chi_method"] = r.chi_method;
    j["gamma_method"] = r.gamma_method;
    return j;
}

json codebook_to_json(const codes::CodeBook& cb) {
    json j;
    j["n"] = cb.n;
    j["M"] = cb.M;
    j["K"] = cb.K;
    j["d_A"] = cb.d_A;
    j["seed"] = cb.seed;
    json v = json::array();
    for (const auto& row : cb.v) {
        json r = json::array();
        for (const auto& u : row) r.push_back(matrix_to_flat_json(u.data()));
        v.push_back(std::move(r));
    }
    j["v"] = std::move(v);
    json u = json::array();
    for (const auto& row : cb.u) {
        json r = json::array();
        for (const auto& m : row) r.push_back(matrix_to_flat_json(m.data()));
        u.push_back(std::move(r));
    }
    j["u"] = std::move(u);
    return j;
}

codes::CodeBook codebook_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const int d_A = j.at("d_A").get<int>();
    const auto load_rows = [&](const json& arr, const char* what) {
        std::vector<std::vector<qlin::UnitaryMatrix>> rows;
        rows.reserve(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::vector<qlin::UnitaryMatrix> row;
            row.reserve(arr[i].size());
            for (std::size_t k = 0; k < arr[i].size(); ++k)
                row.emplace_back(matrix_from_flat_json(
                    arr[i][k], d_A, d_A,
                    std::string("codebook: ") + what + "[" + std::to_string(i) + "][" +
                        std::to_string(k) + "]"));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    return codes::CodeBook::from_unitaries(n, d_A, load_rows(j.at("v"), "v"),
                                           load_rows(j.at("u"), "u"),
                                           j.value("seed", std::uint64_t{0}));
}

json decode_result_to_json(const codes::DecodeResult& result) {
    json j;
    j["avg_error"] = result.avg_error;
    j["povm_completeness_defect"] = result.povm_completeness_defect;
    j["M"] = result.M;
    j["K"] = result.K;
    json diag = json::array();
    for (Eigen::Index i = 0; i < result.confusion.rows(); ++i)
        diag.push_back(result.confusion(i, i));
    j["success_diagonal"] = std::move(diag);
    return j;
}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw ValidationError("CsvWriter: row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
    std::ostringstream out;
    if (!stamp_.empty()) out << "# " << stamp_ << "\n";
    for (std::size_t i = 0; i < header_.size(); ++i)
        out << header_[i] << (i + 1 < header_.size() ? "," : "\n");
    for (const auto& row : rows_)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    return out.str();
}

void CsvWriter::write(const std::string& path) const {
    write_text_file(path, str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw ValidationError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace hidecap::io
