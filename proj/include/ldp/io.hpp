// Copyright 2026 The ldp-minimax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldp/channels.hpp"
#include "ldp/contraction.hpp"
#include "ldp/distribution.hpp"
#include "ldp/extended_real.hpp"
#include "ldp/harness.hpp"

// Serialization. Every number goes through %.10g so output is byte-stable
// for fixed inputs; JSON objects use sorted keys.
namespace ldp::io {

using Json = nlohmann::json;

std::string format_number(double x);
/// A JSON number holding exactly the %.10g rendering of x.
Json number(double x);
/// Finite values as numbers, the marker as the string "inf".
Json to_json(const ExtendedReal& x);
ExtendedReal extended_from_json(const Json& j);

Json to_json(const DiscreteDistribution& p);
DiscreteDistribution distribution_from_json(const Json& j);
Json to_json(const FiniteChannel& ch);
FiniteChannel channel_from_json(const Json& j);
Json to_json(const ContractionReport& r);

/// One evaluated bound: a name, its named parameters and a value.
struct BoundRow {
  std::string name;
  std::map<std::string, double> params;
  ExtendedReal value;
};

std::string reports_csv(const std::vector<TrialReport>& reports);
Json reports_json(const std::vector<TrialReport>& reports);

/// Columns: bound_name, params (k=v;k=v), value.
std::string bounds_csv(const std::vector<BoundRow>& rows);
Json bounds_json(const std::vector<BoundRow>& rows);

std::string win_table_csv(const std::vector<WinRow>& rows);
/// Long format: n, epsilon, estimator, bin, lo, hi, count. Bin 0 and the last
/// bin are the under- and overflow bins with infinite edges.
std::string histograms_csv(const ExperimentResult& result);
Json experiment_json(const ExperimentResult& result);

/// Pretty JSON with a trailing newline.
std::string dump(const Json& j);

void write_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);

}  // namespace ldp::io
