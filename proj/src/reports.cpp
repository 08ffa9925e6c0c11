// Copyright 2026 The signseg Authors
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


#include "signseg/reports.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "json.hpp"

namespace signseg {

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

constexpr const char* kHistogramNames[5] = {"mhat_lt_m_minus_1", "mhat_m_minus_1", "mhat_eq_m",
                                            "mhat_m_plus_1", "mhat_gt_m_plus_1"};

}  // namespace

std::string result_csv(const ChangePointResult& result) {
  std::string out = "location,p_value,interval_a,interval_b\n";
  for (const auto& d : result.detections)
    out += std::to_string(d.location) + "," + num(d.p_value) + "," +
           std::to_string(d.interval_a) + "," + std::to_string(d.interval_b) + "\n";
  return out;
}

std::string result_json(const ChangePointResult& result, const ConfigEcho& config, int n) {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) j["config"][k] = v;
  j["n"] = n;
  j["m_hat"] = result.m_hat();
  j["change_points"] = nlohmann::ordered_json::array();
  for (const auto& d : result.detections)
    j["change_points"].push_back({{"location", d.location},
                                  {"p_value", d.p_value},
                                  {"statistic", d.statistic},
                                  {"interval_a", d.interval_a},
                                  {"interval_b", d.interval_b}});
  return j.dump(2) + "\n";
}

std::string reports_csv(std::span<const ExperimentReport> reports) {
  std::vector<std::string> keys;
  for (const auto& r : reports)
    for (const auto& [k, v] : r.config)
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::string out;
  for (const auto& k : keys) out += csv_field(k) + ",";
  out += "replicates,seed,rejection_rate";
  for (const char* h : kHistogramNames) out += std::string(",") + h;
  out += ",mse,ari_mean\n";
  for (const auto& r : reports) {
    for (const auto& k : keys) {
      auto it = std::find_if(r.config.begin(), r.config.end(),
                             [&](const auto& kv) { return kv.first == k; });
      out += (it == r.config.end() ? std::string() : csv_field(it->second)) + ",";
    }
    out += std::to_string(r.replicates) + "," + std::to_string(r.seed) + ",";
    out += r.rejection_rate ? num(*r.rejection_rate) : "";
    const bool seg = r.mse.has_value();
    for (std::size_t c : r.m_hat_histogram) out += "," + (seg ? std::to_string(c) : "");
    out += "," + (r.mse ? num(*r.mse) : "") + "," + (r.ari_mean ? num(*r.ari_mean) : "") + "\n";
  }
  return out;
}

std::string reports_json(std::span<const ExperimentReport> reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) j["config"][k] = v;
    j["replicates"] = r.replicates;
    j["seed"] = r.seed;
    if (r.rejection_rate) j["rejection_rate"] = *r.rejection_rate;
    if (r.mse) {
      nlohmann::ordered_json h;
      for (std::size_t c = 0; c < 5; ++c) h[kHistogramNames[c]] = r.m_hat_histogram[c];
      j["m_hat_histogram"] = h;
      j["mse"] = *r.mse;
      j["ari_mean"] = r.ari_mean.value_or(0.0);
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace signseg
