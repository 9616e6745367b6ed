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

#include "qtraj/io.hpp"

#include <charconv>
#include <fstream>

#include "qtraj/errors.hpp"

namespace qtraj {

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string series_csv(std::span<const double> times,
                       std::span<const DensityMatrix> states,
                       std::span<const double> max_stderr) {
  if (times.size() != states.size() ||
      (!max_stderr.empty() && max_stderr.size() != states.size())) {
    throw StructuralError("series_csv: column lengths differ");
  }
  std::string out =
      "time,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,"
      "rho11_re,rho11_im,vn_entropy_bits,purity";
  if (!max_stderr.empty()) out += ",max_stderr";
  out += '\n';
  for (std::size_t i = 0; i < states.size(); ++i) {
    const DensityMatrix& rho = states[i];
    if (rho.dim() != 2) throw StructuralError("series_csv expects dim 2");
    out += format_double(times[i]);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        out += ',' + format_double(rho(r, c).real());
        out += ',' + format_double(rho(r, c).imag());
      }
    out += ',' + format_double(von_neumann_entropy(rho));
    out += ',' + format_double(rho.purity());
    if (!max_stderr.empty()) out += ',' + format_double(max_stderr[i]);
    out += '\n';
  }
  return out;
}

std::string ledger_csv(std::span<const InfoLedgerEntry> ledger) {
  std::string out =
      "step,shannon_bits,info_gain_bits,entanglement_bits,vn_entropy_bits\n";
  for (const auto& e : ledger) {
    out += std::to_string(e.step);
    out += ',' + format_double(e.shannon_bits);
    out += ',' + format_double(e.info_gain_bits);
    out += ',' + format_double(e.entanglement_bits);
    out += ',' + format_double(e.vn_entropy_bits);
    out += '\n';
  }
  return out;
}

nlohmann::json state_to_json(const CVec& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < v.dim(); ++i) arr.push_back({v[i].real(), v[i].imag()});
  return arr;
}

nlohmann::json state_to_json(const PureState& s) {
  return state_to_json(s.amplitudes());
}

CVec state_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ValidationError("expected an array of " + std::to_string(dim) +
                          " amplitudes");
  }
  CVec v(dim);
  for (int i = 0; i < dim; ++i) {
    const auto& a = j[static_cast<std::size_t>(i)];
    if (a.is_number()) {
      v[i] = a.get<double>();
    } else if (a.is_array() && a.size() == 2 && a[0].is_number() &&
               a[1].is_number()) {
      v[i] = cplx(a[0].get<double>(), a[1].get<double>());
    } else {
      throw ValidationError("amplitude " + std::to_string(i) +
                            " must be a number or a [re, im] pair");
    }
  }
  return v;
}

nlohmann::json ledger_to_json(const InfoLedgerEntry& e) {
  return {{"step", e.step},
          {"shannon_bits", e.shannon_bits},
          {"info_gain_bits", e.info_gain_bits},
          {"entanglement_bits", e.entanglement_bits},
          {"vn_entropy_bits", e.vn_entropy_bits}};
}

nlohmann::json record_to_json(const TrajectoryRecord& rec) {
  nlohmann::json snaps = nlohmann::json::array();
  for (std::size_t i = 0; i < rec.states.size(); ++i) {
    snaps.push_back({{"step", rec.snapshot_steps[i]},
                     {"time", rec.times[i]},
                     {"state", state_to_json(rec.states[i])}});
  }
  nlohmann::json ledger = nlohmann::json::array();
  for (const auto& e : rec.ledger) ledger.push_back(ledger_to_json(e));
  return {{"seed", rec.seed},
          {"unraveling", std::string(unraveling_name(rec.unraveling))},
          {"outcomes", rec.outcome_string()},
          {"jump_count", rec.jump_count},
          {"renormalization_flags", rec.renormalization_flags},
          {"snapshots", std::move(snaps)},
          {"ledger", std::move(ledger)}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace qtraj
