// Copyright 2026 The netcm Authors
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

#include <filesystem>
#include <string>
#include <vector>

#include "netcm/block_cm.hpp"
#include "netcm/criteria.hpp"
#include "netcm/feasibility.hpp"
#include "netcm/spec.hpp"

namespace netcm {

inline constexpr const char* kReportSchemaVersion = "1";

/// Where a result came from; null members serialize as JSON null.
struct ReportContext {
  Json state_spec;
  Json observables_spec;
  Json topology;
};

Json to_json(const CriterionReport& r, const ReportContext& ctx);
Json to_json(const FeasibilityProblem& p, const FeasibilityOutcome& o, const ReportContext& ctx, double tol,
             std::size_t max_iter, const std::vector<std::string>& witness_files);
Json to_json(const FidelityBoundResult& r, const FidelityBoundOptions& opts);

/// Stable text form: 2-space indent, shortest round-trip floats, trailing newline.
std::string dump_report(const Json& j);

/// JSON schema (draft 2020-12 subset) for every report kind, version "1".
std::string report_schema();

/// Validates against report_schema(). Non-strict mode tolerates unknown
/// fields; strict mode rejects them. Returns error messages, empty if valid.
std::vector<std::string> validate_report(const Json& report, bool strict);

/// CM export: <path> holds the matrix (NCMX, zero imaginary parts) and
/// <path>.json the layout, node labels and provenance.
void export_cm(const BlockCovarianceMatrix& gamma, const std::filesystem::path& path, const Json& observables_spec,
               const Json& state_spec);
BlockCovarianceMatrix import_cm(const std::filesystem::path& path);

}  // namespace netcm
