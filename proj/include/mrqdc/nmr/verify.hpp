// Copyright 2026 The mrqdc Authors
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

// Consistency report for the NMR realization: compound identities, pulse
// compiled gates, the effective-pure target identity, and the preparation
// sequence.

#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrqdc/nmr/compile.hpp"
#include "mrqdc/nmr/preparation.hpp"

namespace mrqdc::nmr {

struct Check {
  std::string name;
  bool mandatory = true;
  bool passed = false;
  double deviation = 0.0;
  std::string detail;
};

struct VerifyOptions {
  LabelMap labels = default_labels();
  RotationSense sense = RotationSense::positive;
  GradientMode gradient = GradientMode::gamma_weighted;
  std::size_t max_m = 3;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool mandatory_passed() const {
    for (const auto& c : checks)
      if (c.mandatory && !c.passed) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

inline void add_identity_checks(VerifyReport& rep, const SpinSystem& sys, std::size_t max_m) {
  for (auto which : {CompoundIdentity::c1_flying, CompoundIdentity::c2_flying}) {
    Check c;
    c.name = which == CompoundIdentity::c1_flying ? "identity:CNOT10" : "identity:CNOT20";
    c.passed = true;
    std::size_t cases = 0;
    for (std::size_t m = 1; m <= max_m; ++m)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k) {
        const auto r = compound_identity(sys, which, k, m);
        c.deviation = std::max(c.deviation, r.deviation);
        c.passed = c.passed && r.holds;
        ++cases;
      }
    c.detail = to_string(which) + " over " + std::to_string(cases) + " (k, m) cases";
    rep.checks.push_back(std::move(c));
  }
}

inline void add_gate_checks(VerifyReport& rep, const SpinSystem& sys, RotationSense sense) {
  for (auto g : {PulseGate::hadamard_c1c2, PulseGate::hadamard_c2, PulseGate::hadamard_c1,
                 PulseGate::controlled_phase, PulseGate::inverse_qft}) {
    const auto cg = compile_gate_from_pulses(g, sys, sense);
    Check c;
    c.name = "gate:" + to_string(g);
    c.passed = cg.equal_with_corrections;
    c.deviation = cg.corrected_deviation;
    if (cg.phase_equal) {
      c.detail = "equal up to global phase";
    } else if (cg.z_corrections && cg.equal_with_corrections) {
      const auto& z = *cg.z_corrections;
      c.detail = "equal after z corrections C1=" + fmt(z[0]) + " C2=" + fmt(z[1]) + " H0=" + fmt(z[2]);
    } else {
      c.detail = "mismatch, raw deviation " + fmt(cg.deviation);
    }
    c.detail += " (" + to_string(sense) + " rotation sense)";
    rep.checks.push_back(std::move(c));
  }
  // The composite z triplet under the opposite sense, for the record.
  const RotationSense other =
      sense == RotationSense::positive ? RotationSense::negative : RotationSense::positive;
  const auto alt = compile_gate_from_pulses(PulseGate::controlled_phase, sys, other);
  rep.checks.push_back({"gate:CPhase(-pi/2) opposite sense", false, alt.equal_with_corrections,
                        alt.corrected_deviation,
                        alt.phase_equal ? "also equal up to global phase under " + to_string(other)
                                        : "differs under " + to_string(other)});
}

inline void add_prep_checks(VerifyReport& rep, const SpinSystem& sys, const VerifyOptions& o) {
  {
    const auto target = effective_pure_target();
    const double dev = max_abs_diff(target.matrix(), pseudo_pure(0).matrix());
    rep.checks.push_back({"rho0 identity", true, dev <= 1e-14, dev,
                          "product-operator target equals 2|000><000| - I/4"});
  }

  const std::string where = "labels " + format_label_map(o.labels) + ", " + to_string(o.sense) +
                            " sense, " + to_string(o.gradient) + " gradient";
  std::optional<PrepResult> r;
  try {
    r = prepare_effective_pure(sys, {o.labels, o.sense, o.gradient, std::nullopt});
  } catch (const std::invalid_argument& e) {
    rep.checks.push_back({"prep:proportional", true, false, 0.0,
                          std::string("preparation sequence failed to run: ") + e.what() + " (" + where + ")"});
    return;
  }

  // Proportional to diag(rho0) with any nonzero factor, sign included.
  const bool prop = r->proportional && std::abs(r->correlation) >= 0.999;
  rep.checks.push_back({"prep:proportional", true, prop, r->residual,
                        "diagonal = " + fmt(r->scale) + " x diag(rho0), correlation " +
                            fmt(r->correlation) + " (" + where + ")"});

  // The strict form: positive correlation. Tried under every option.
  bool any_positive = false;
  std::string tried;
  for (auto s : {RotationSense::positive, RotationSense::negative})
    for (auto g : {GradientMode::gamma_weighted, GradientMode::diagonal_only}) {
      try {
        const auto t = prepare_effective_pure(sys, {o.labels, s, g, std::nullopt});
        any_positive = any_positive || t.correlation >= 0.999;
        tried += " " + to_string(s) + "/" + to_string(g) + ":" + fmt(t.correlation);
      } catch (const std::invalid_argument&) {
        tried += " " + to_string(s) + "/" + to_string(g) + ":error";
      }
    }
  std::string detail = "correlation >= +0.999 under any sense/gradient option:" + tried;
  if (!any_positive) {
    detail += ". The sequence does not reach +diag(rho0) under any option";
    if (prop && r->scale < 0) detail += "; it reaches a negative multiple, the target up to an overall sign";
  }
  rep.checks.push_back({"prep:positive correlation", false, any_positive, r->correlation, detail});

  const auto diag_only = prepare_effective_pure(sys, {o.labels, o.sense, GradientMode::diagonal_only, std::nullopt});
  rep.checks.push_back({"prep:off-diagonal (diagonal_only gradient)", true,
                        diag_only.max_off_diagonal <= 1e-12, diag_only.max_off_diagonal,
                        "off-diagonal elements after the final gradient"});
  const auto gw = prepare_effective_pure(sys, {o.labels, o.sense, GradientMode::gamma_weighted, std::nullopt});
  rep.checks.push_back({"prep:off-diagonal (gamma_weighted gradient)", false,
                        gw.max_off_diagonal <= 1e-12, gw.max_off_diagonal,
                        gw.max_off_diagonal <= 1e-12
                            ? "off-diagonal elements after the final gradient"
                            : "C1-C2 zero-quantum coherence survives the gradient (equal gyromagnetic ratios)"});
}

}  // namespace detail

inline VerifyReport verify(const SpinSystem& sys, const VerifyOptions& opts = {}) {
  sys.validate();
  VerifyReport rep;
  detail::add_identity_checks(rep, sys, opts.max_m);
  detail::add_gate_checks(rep, sys, opts.sense);
  detail::add_prep_checks(rep, sys, opts);
  return rep;
}

inline void print_report(std::ostream& os, const VerifyReport& rep) {
  for (const auto& c : rep.checks) {
    os << (c.passed ? "PASS" : "FAIL") << (c.mandatory ? "  " : "* ") << c.name
       << "  max_dev=" << std::setprecision(3) << c.deviation << "  " << c.detail << '\n';
  }
  os << "(* informational)\n";
  os << (rep.mandatory_passed() ? "all mandatory checks passed" : "mandatory check failed") << '\n';
}

inline nlohmann::json to_json(const VerifyReport& rep) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : rep.checks)
    a.push_back({{"name", c.name}, {"mandatory", c.mandatory}, {"passed", c.passed},
                 {"max_deviation", c.deviation}, {"detail", c.detail}});
  return {{"checks", a}, {"mandatory_passed", rep.mandatory_passed()}};
}

}  // namespace mrqdc::nmr
