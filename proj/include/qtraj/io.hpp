// Copyright 2026 The qtraj Authors
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

// Artifact formats.
//
//   series.csv  time,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,
//               rho11_re,rho11_im,vn_entropy_bits,purity[,max_stderr]
//   ledger.csv  step,shannon_bits,info_gain_bits,entanglement_bits,
//               vn_entropy_bits
//
// Numbers are written with 17 significant digits, '.' as the decimal
// separator and '\n' line endings. States in JSON are arrays of [re, im]
// pairs in basis order.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtraj/evolve.hpp"
#include "qtraj/info.hpp"
#include "qtraj/state.hpp"

namespace qtraj {

// 17 significant digits, locale independent.
std::string format_double(double v);

std::string series_csv(std::span<const double> times,
                       std::span<const DensityMatrix> states,
                       std::span<const double> max_stderr = {});
std::string ledger_csv(std::span<const InfoLedgerEntry> ledger);

nlohmann::json state_to_json(const CVec& v);
nlohmann::json state_to_json(const PureState& s);
// Accepts [[re, im], ...] or plain real numbers per amplitude.
CVec state_from_json(const nlohmann::json& j, int dim);

nlohmann::json ledger_to_json(const InfoLedgerEntry& e);
nlohmann::json record_to_json(const TrajectoryRecord& rec);

// Writes `content` byte-for-byte.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace qtraj
