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


#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "signseg/sbs.hpp"
#include "signseg/sim_lab.hpp"

namespace signseg {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Header "location,p_value,interval_a,interval_b"; one row per detection.
std::string result_csv(const ChangePointResult& result);
/// {"config": {...}, "n": n, "m_hat": m, "change_points": [...]}.
std::string result_json(const ChangePointResult& result, const ConfigEcho& config, int n);

/// One row per report; columns are the union of config keys in first-seen
/// order followed by the metric columns.
std::string reports_csv(std::span<const ExperimentReport> reports);
std::string reports_json(std::span<const ExperimentReport> reports);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace signseg
