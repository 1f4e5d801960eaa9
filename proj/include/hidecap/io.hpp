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
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hidecap/bounds.hpp"
#include "hidecap/channels.hpp"
#include "hidecap/codes.hpp"

namespace hidecap::io {

/// Shortest decimal representation that round-trips to the same double;
/// locale-independent. The canonical float format for all CSV output.
std::string format_double(double value);

/// FNV-1a 64-bit hash, hex-encoded. Used to stamp outputs with their config.
std::string fnv1a_hex(std::string_view data);

/// Channel file format:
/// {"d_in": n, "d_out": n, "d_B": n, "d_C": n, "kraus": [[[re, im], ...], ...]}
/// with each Kraus matrix a flat row-major list of [re, im] pairs. An optional
/// "d_list" array declares a multipartite split. Completeness is validated on
/// load; parse errors name the offending Kraus/entry index.
channels::BroadcastChannel channel_from_json(const nlohmann::json& j);
nlohmann::json channel_to_json(const channels::BroadcastChannel& channel);
channels::BroadcastChannel load_channel(const std::string& path);
void save_channel(const channels::BroadcastChannel& channel, const std::string& path);

nlohmann::json bound_report_to_json(const bounds::BoundReport& report);

/// CodeBook serialization: construction parameters, seed, and all unitaries as
/// flat row-major [re, im] arrays.
nlohmann::json codebook_to_json(const codes::CodeBook& cb);
codes::CodeBook codebook_from_json(const nlohmann::json& j);

nlohmann::json decode_result_to_json(const codes::DecodeResult& result);

/// Minimal CSV writer with the canonical float format and a leading comment
/// line carrying the config hash and seed.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void set_stamp(std::string stamp) { stamp_ = std::move(stamp); }
    void add_row(std::vector<std::string> cells);
    std::string str() const;
    void write(const std::string& path) const;

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::string stamp_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace hidecap::io
