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

// mrqdc command-line driver.
//
//   mrqdc protocol run    --m 2 --k 3 --b 0 [--noise depolarizing --p 0.1] [--shots N --seed S]
//   mrqdc protocol sweep  --m 1,2 --p 0,0.5,1 --noise depolarizing [--threads 4]
//   mrqdc nmr verify      [--index-map 3:0] [--sense positive] [--gradient gamma_weighted]
//   mrqdc nmr prepare     [--index-map ...] [--sense ...] [--gradient ...]
//   mrqdc nmr spectrum    --state protocol --k 2 [--observe C1,C2] [--out-prefix out/spec]
//
// Exit codes: 0 success, 1 failed check or internal error, 2 usage error.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mrqdc/mrqdc.hpp"

namespace {

using namespace mrqdc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunOpts {
  std::size_t m = 1;
  std::uint64_t k = 0;
  int b = 0;
  std::string noise = "none";
  double p = 0.0;
  std::size_t shots = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool snapshots = false;
};

struct SweepOpts {
  std::vector<std::size_t> m{2};
  std::vector<double> p{0.0};
  std::string noise = "depolarizing";
  std::size_t threads = 0;
  std::string out;
};

struct NmrOpts {
  std::string index_map;
  std::string sense = "positive";
  std::string gradient = "gamma_weighted";
  bool json_out = false;
};

struct SpectrumCli {
  std::string state = "pseudo-pure";
  std::uint64_t k = 0;
  int b = 0;
  std::vector<std::string> observe{"C1", "C2", "H0"};
  nmr::SpectrumOptions opts;
  std::string out_prefix = "spectrum";
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << text;
}

nmr::RotationSense parse_sense(const std::string& s) {
  if (s == "positive") return nmr::RotationSense::positive;
  if (s == "negative") return nmr::RotationSense::negative;
  throw std::invalid_argument("unknown rotation sense '" + s + "'");
}

// ---------------------------------------------------------------------------

int cmd_protocol_run(const RunOpts& o) {
  const protocol::Message msg{o.m, o.k, o.b};
  msg.validate();
  const protocol::NoiseSpec noise{protocol::channel_from_string(o.noise), o.p};
  noise.validate();
  const auto run = protocol::run_protocol(msg, noise, {true, o.snapshots});
  json j = io::to_json(run.transcript);
  j["success_probability"] = run.success_probability;
  if (o.shots > 0) {
    j["samples"] = sample(run.distribution, o.shots, o.seed);
    j["seed"] = o.seed;
  }
  write_text(o.out, j.dump(2) + "\n");
  if (noise.is_noiseless() && !(run.decoded == protocol::Decoded{o.k, o.b})) {
    std::cerr << "error: decoded message differs from the encoded one\n";
    return kExitFail;
  }
  return kExitOk;
}

int cmd_protocol_sweep(const SweepOpts& o) {
  const auto kind = protocol::channel_from_string(o.noise);
  for (double p : o.p) protocol::NoiseSpec{kind, p}.validate();
  struct Cell {
    std::size_t m;
    std::uint64_t k;
    int b;
    double p;
    double success = 0.0;
  };
  std::vector<Cell> cells;
  for (std::size_t m : o.m) {
    if (m < 1 || m > 8) throw std::invalid_argument("sweep m must be in [1, 8]");
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k)
      for (int b = 0; b < 2; ++b)
        for (double p : o.p) cells.push_back({m, k, b, p});
  }

  std::size_t workers = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(cells.size(), 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        auto& c = cells[i];
        c.success = protocol::run_protocol({c.m, c.k, c.b}, {kind, c.p}, {false, false}).success_probability;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream os;
  os << "m,k,b,p,success_probability\n" << std::setprecision(12);
  for (const auto& c : cells) os << c.m << ',' << c.k << ',' << c.b << ',' << c.p << ',' << c.success << '\n';
  write_text(o.out, os.str());
  return kExitOk;
}

int cmd_nmr_verify(const NmrOpts& o) {
  nmr::VerifyOptions v;
  if (!o.index_map.empty()) v.labels = nmr::parse_label_map(o.index_map);
  v.sense = parse_sense(o.sense);
  v.gradient = nmr::gradient_from_string(o.gradient);
  const auto rep = nmr::verify(nmr::SpinSystem::trichloroethylene(), v);
  if (o.json_out) {
    std::cout << nmr::to_json(rep).dump(2) << '\n';
  } else {
    nmr::print_report(std::cout, rep);
  }
  return rep.mandatory_passed() ? kExitOk : kExitFail;
}

int cmd_nmr_prepare(const NmrOpts& o) {
  const auto sys = nmr::SpinSystem::trichloroethylene();
  nmr::PrepOptions p;
  if (!o.index_map.empty()) p.labels = nmr::parse_label_map(o.index_map);
  p.sense = parse_sense(o.sense);
  p.gradient = nmr::gradient_from_string(o.gradient);
  const auto r = nmr::prepare_effective_pure(sys, p);
  json j{{"alpha", nmr::flip_angle_alpha(sys)},
         {"index_map", nmr::format_label_map(p.labels)},
         {"sense", o.sense},
         {"gradient", nmr::to_string(p.gradient)},
         {"diagonal", r.diagonal},
         {"target_diagonal", r.target_diagonal},
         {"scale", r.scale},
         {"correlation", r.correlation},
         {"residual", r.residual},
         {"max_off_diagonal", r.max_off_diagonal},
         {"density_matrix", io::density_to_json(r.rho)}};
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_nmr_spectrum(const SpectrumCli& o) {
  const auto sys = nmr::SpinSystem::trichloroethylene();
  o.opts.validate();
  std::vector<std::size_t> spins;
  for (const auto& s : o.observe) spins.push_back(nmr::spin_from_name(s));
  for (auto s : spins) nmr::check_sampling(sys, s, o.opts);

  DensityMatrix rho = nmr::pseudo_pure(0);
  std::string label = "pseudo-pure |000>";
  if (o.state == "protocol") {
    rho = nmr::run_network(sys, o.k, o.b, nmr::pseudo_pure(0));
    label = "protocol output k=" + std::to_string(o.k) + " b=" + std::to_string(o.b);
  } else if (o.state != "pseudo-pure") {
    throw std::invalid_argument("unknown state '" + o.state + "' (pseudo-pure | protocol)");
  }

  json summary{{"state", label}, {"spectra", json::array()}};
  for (auto s : spins) {
    const auto sp = nmr::synthesize_spectrum(rho, sys, s, o.opts);
    const double ref = nmr::reference_phase(sys, s, o.opts);
    const std::string base = o.out_prefix + "_" + nmr::spin_name(s);
    std::ostringstream csv;
    nmr::write_spectrum_csv(csv, sp);
    write_text(base + ".csv", csv.str());
    const json peaks = nmr::peaks_to_json(sp, ref);
    write_text(base + "_peaks.json", peaks.dump(2) + "\n");
    summary["spectra"].push_back(peaks);
  }
  std::cout << summary.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-round dense coding simulator"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags");
  app.require_subcommand(1);

  RunOpts run;
  SweepOpts sweep;
  NmrOpts verify_o, prepare_o;
  SpectrumCli spec;

  auto* protocol_cmd = app.add_subcommand("protocol", "Run the dense coding protocol")->require_subcommand(1);
  protocol_cmd->configurable();
  auto* run_cmd = protocol_cmd->add_subcommand("run", "Run one message and print the transcript");
  run_cmd->configurable();
  run_cmd->add_option("--m", run.m, "Number of rounds (1..12)")->required();
  run_cmd->add_option("--k", run.k, "Phase index, 0 <= k < 2^m")->required();
  run_cmd->add_option("--b", run.b, "Bit manipulation, 0 or 1")->required();
  run_cmd->add_option("--noise", run.noise, "none | dephasing | depolarizing")->capture_default_str();
  run_cmd->add_option("--p", run.p, "Channel probability")->capture_default_str();
  run_cmd->add_option("--shots", run.shots, "Sample this many measurement outcomes")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Sampling seed")->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output file (default stdout)");
  run_cmd->add_flag("--snapshots", run.snapshots, "Record the full register after every event");

  auto* sweep_cmd = protocol_cmd->add_subcommand("sweep", "Success probability over messages and noise levels");
  sweep_cmd->configurable();
  sweep_cmd->add_option("--m", sweep.m, "Round counts (1..8)")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--p", sweep.p, "Channel probabilities")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--noise", sweep.noise, "none | dephasing | depolarizing")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = hardware)")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "Output CSV (default stdout)");

  auto* nmr_cmd = app.add_subcommand("nmr", "Three-spin NMR realization")->require_subcommand(1);
  nmr_cmd->configurable();
  auto add_nmr = [](CLI::App* c, NmrOpts& o) {
    c->configurable();
    c->add_option("--index-map", o.index_map, "Sequence label to spin map, e.g. 3:0,0:0");
    c->add_option("--sense", o.sense, "positive | negative")->capture_default_str();
    c->add_option("--gradient", o.gradient, "gamma_weighted | diagonal_only")->capture_default_str();
  };
  auto* verify_cmd = nmr_cmd->add_subcommand("verify", "Check identities, compiled gates and the preparation");
  add_nmr(verify_cmd, verify_o);
  verify_cmd->add_flag("--json", verify_o.json_out, "Print the report as JSON");
  auto* prepare_cmd = nmr_cmd->add_subcommand("prepare", "Run the effective-pure-state preparation");
  add_nmr(prepare_cmd, prepare_o);

  auto* spec_cmd = nmr_cmd->add_subcommand("spectrum", "Synthesize spectra of one state");
  spec_cmd->configurable();
  spec_cmd->add_option("--state", spec.state, "pseudo-pure | protocol")->capture_default_str();
  spec_cmd->add_option("--k", spec.k, "Phase index for --state protocol (0..3)")->capture_default_str();
  spec_cmd->add_option("--b", spec.b, "Bit for --state protocol")->capture_default_str();
  spec_cmd->add_option("--observe", spec.observe, "Observed spins")->delimiter(',')->capture_default_str();
  spec_cmd->add_option("--t2", spec.opts.t2, "Decay constant (s)")->capture_default_str();
  spec_cmd->add_option("--n-samples", spec.opts.n_samples, "FID length")->capture_default_str();
  spec_cmd->add_option("--dwell", spec.opts.dwell, "Sampling interval (s)")->capture_default_str();
  spec_cmd->add_option("--out-prefix", spec.out_prefix, "Prefix for CSV and peak files")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_protocol_run(run);
    if (*sweep_cmd) return cmd_protocol_sweep(sweep);
    if (*verify_cmd) return cmd_nmr_verify(verify_o);
    if (*prepare_cmd) return cmd_nmr_prepare(prepare_o);
    if (*spec_cmd) {
      if (spec.state == "protocol") protocol::Message{2, spec.k, spec.b}.validate();
      return cmd_nmr_spectrum(spec);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
