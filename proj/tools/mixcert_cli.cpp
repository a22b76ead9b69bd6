// Copyright 2026 The mixcert Authors.
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

// Command-line front end. Everything beyond argument parsing goes through
// the C API; machine output is JSON on stdout, diagnostics go to stderr.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 bad arguments,
// 3 data precondition (e.g. path too short).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixcert/mixcert.h"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

int ExitCodeFor(mixcert_status s) {
  switch (s) {
    case MIXCERT_OK:
      return 0;
    case MIXCERT_E_IO:
    case MIXCERT_E_PARSE:
    case MIXCERT_E_NON_STOCHASTIC:
    case MIXCERT_E_TOO_SMALL:
    case MIXCERT_E_INTERNAL:
      return kExitIo;
    case MIXCERT_E_INVALID_ARGUMENT:
    case MIXCERT_E_BAD_PARAMS:
    case MIXCERT_E_BAD_INIT:
    case MIXCERT_E_DOMAIN:
      return kExitUsage;
    default:
      return kExitData;
  }
}

// Thrown out of command handlers; carries the process exit code.
struct CommandFailure {
  int exit_code;
};

void Check(mixcert_status s, const std::string& context) {
  if (s == MIXCERT_OK) return;
  std::cerr << "mixcert: " << context << ": " << mixcert_status_name(s) << ": "
            << mixcert_last_error() << "\n";
  throw CommandFailure{ExitCodeFor(s)};
}

struct ChainDeleter {
  void operator()(mixcert_chain* c) const { mixcert_chain_free(c); }
};
struct PathDeleter {
  void operator()(mixcert_path* p) const { mixcert_path_free(p); }
};
struct StringDeleter {
  void operator()(char* s) const { mixcert_string_free(s); }
};
using ChainPtr = std::unique_ptr<mixcert_chain, ChainDeleter>;
using PathPtr = std::unique_ptr<mixcert_path, PathDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

ChainPtr LoadChain(const std::string& file) {
  mixcert_chain* raw = nullptr;
  Check(mixcert_chain_load(file.c_str(), &raw), "loading chain '" + file + "'");
  return ChainPtr(raw);
}

PathPtr LoadPath(const std::string& file) {
  mixcert_path* raw = nullptr;
  Check(mixcert_path_load(file.c_str(), &raw), "loading path '" + file + "'");
  return PathPtr(raw);
}

void PrintJson(char* raw) {
  StringPtr json(raw);
  std::fwrite(json.get(), 1, std::strlen(json.get()), stdout);
  std::fputc('\n', stdout);
}

// "100000", "1e5" or "1e4,1e5,1e6".
std::vector<long long> ParseSteps(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v != std::floor(v) || v < 2 || v > 9e15) {
      std::cerr << "mixcert: invalid step count '" << item << "'\n";
      throw CommandFailure{kExitUsage};
    }
    out.push_back(static_cast<long long>(v));
  }
  if (out.empty()) {
    std::cerr << "mixcert: empty --steps\n";
    throw CommandFailure{kExitUsage};
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence intervals for the mixing time of a reversible Markov "
               "chain from one sample path"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mixcert_version());

  // chains make / chains spectrum / chains tvmix
  auto* chains = app.add_subcommand("chains", "Built-in chain families");
  chains->require_subcommand(1);
  std::string family, chain_out;
  mixcert_family_params fp{0, 0.0, 0.0, 0, 0.0};
  auto* make = chains->add_subcommand("make", "Write a family instance as chain JSON");
  make->add_option("--family", family,
                   "two-state-A|two-state-B|perturbed-uniform-0|"
                   "perturbed-uniform-i|lazy-uniform")
      ->required();
  make->add_option("--d", fp.d, "State count");
  make->add_option("--pibar", fp.pibar, "Two-state parameter in (0,1/4)");
  make->add_option("--gammabar", fp.gammabar, "Target gap in (0,1/2)");
  make->add_option("--index", fp.index, "Perturbed state (0-based)");
  make->add_option("--beta", fp.beta, "Laziness in (0,1]; gap equals beta");
  make->add_option("--out", chain_out, "Output file")->required();

  std::string chain_file;
  auto* spectrum = chains->add_subcommand("spectrum", "Exact spectral summary of a chain");
  spectrum->add_option("--chain", chain_file)->required();

  double tv_threshold = 0.25;
  auto* tvmix = chains->add_subcommand("tvmix", "Exact total-variation mixing time (d <= 64)");
  tvmix->add_option("--chain", chain_file)->required();
  tvmix->add_option("--threshold", tv_threshold);

  // simulate
  long long steps = 0;
  std::uint64_t seed = 0;
  std::string init = "stationary", path_out;
  auto* simulate = app.add_subcommand("simulate", "Simulate a sample path");
  simulate->add_option("--chain", chain_file)->required();
  simulate->add_option("--steps", steps)->required();
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--init", init, "stationary|uniform|state:<i>");
  simulate->add_option("--out", path_out)->required();

  // estimate
  std::string path_file, method = "plugin";
  auto* estimate = app.add_subcommand("estimate", "Point estimates of the gap and pi_min");
  estimate->add_option("--path", path_file)->required();
  estimate->add_option("--method", method)->check(CLI::IsMember({"plugin", "bootstrap"}));

  // ci
  double delta = 0.05, constant = 1.0;
  bool combined = false;
  auto* ci = app.add_subcommand("ci", "Confidence intervals from a sample path");
  ci->add_option("--path", path_file)->required();
  ci->add_option("--delta", delta)->required();
  ci->add_flag("--combined", combined, "Intersect with plug-in intervals");
  ci->add_option("--constant", constant, "Constant for the plug-in intervals");

  // validate
  std::string kind, steps_text;
  int trials = 1, jobs = 1;
  auto* validate = app.add_subcommand("validate", "Monte Carlo validation against the exact spectrum");
  validate->add_option("kind", kind, "coverage|width|accuracy")
      ->required()
      ->check(CLI::IsMember({"coverage", "width", "accuracy"}));
  validate->add_option("--chain", chain_file)->required();
  validate->add_option("--trials", trials)->required();
  validate->add_option("--steps", steps_text, "n or comma-separated grid")->required();
  validate->add_option("--delta", delta);
  validate->add_option("--seed", seed)->required();
  validate->add_option("--jobs", jobs, "Worker threads (MIXCERT_JOBS overrides)");
  validate->add_option("--init", init);

  // stoprule
  double epsilon = 0.5;
  long long max_steps = 1LL << 24;
  auto* stoprule = app.add_subcommand("stoprule", "Sequential stopping rule on a simulated path");
  stoprule->add_option("--chain", chain_file)->required();
  stoprule->add_option("--epsilon", epsilon)->required();
  stoprule->add_option("--delta", delta)->required();
  stoprule->add_option("--seed", seed)->required();
  stoprule->add_option("--max-steps", max_steps);
  stoprule->add_option("--constant", constant);
  stoprule->add_option("--init", init);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (make->parsed()) {
      mixcert_chain* raw = nullptr;
      mixcert_status s = mixcert_chain_family(family.c_str(), &fp, &raw);
      if (s != MIXCERT_OK) {
        std::cerr << make->help();
      }
      Check(s, "chains make");
      ChainPtr chain(raw);
      Check(mixcert_chain_save(chain.get(), chain_out.c_str()), "writing chain");
    } else if (spectrum->parsed()) {
      ChainPtr chain = LoadChain(chain_file);
      char* json = nullptr;
      Check(mixcert_chain_spectral_json(chain.get(), &json), "spectrum");
      PrintJson(json);
    } else if (tvmix->parsed()) {
      ChainPtr chain = LoadChain(chain_file);
      long long t = 0;
      Check(mixcert_tv_mixing_time(chain.get(), tv_threshold, &t), "tvmix");
      std::printf("{\"schema\": 1, \"kind\": \"tv_mixing_time\", \"threshold\": %.17g, \"t_mix\": %lld}\n",
                  tv_threshold, t);
    } else if (simulate->parsed()) {
      ChainPtr chain = LoadChain(chain_file);
      mixcert_path* raw = nullptr;
      Check(mixcert_path_simulate(chain.get(), steps, init.c_str(), seed, &raw),
            "simulate");
      PathPtr path(raw);
      Check(mixcert_path_save(path.get(), path_out.c_str()), "writing path");
    } else if (estimate->parsed()) {
      PathPtr path = LoadPath(path_file);
      char* json = nullptr;
      Check(mixcert_estimate_json(path.get(), method.c_str(), &json), "estimate");
      PrintJson(json);
    } else if (ci->parsed()) {
      PathPtr path = LoadPath(path_file);
      char* json = nullptr;
      Check(mixcert_confidence_json(path.get(), delta, combined ? 1 : 0, constant,
                                    &json),
            "ci");
      PrintJson(json);
    } else if (validate->parsed()) {
      ChainPtr chain = LoadChain(chain_file);
      const std::vector<long long> grid = ParseSteps(steps_text);
      mixcert_validate_config cfg{kind.c_str(), grid.data(), grid.size(), trials,
                                  delta,        seed,        jobs,        init.c_str()};
      char* json = nullptr;
      double wall = 0.0;
      Check(mixcert_validate_json(chain.get(), &cfg, &json, &wall), "validate");
      PrintJson(json);
      std::fprintf(stderr, "mixcert validate %s: %d trials in %.2f s\n",
                   kind.c_str(), trials, wall);
    } else if (stoprule->parsed()) {
      ChainPtr chain = LoadChain(chain_file);
      char* json = nullptr;
      int stopped = 0;
      Check(mixcert_stoprule_json(chain.get(), epsilon, delta, constant, seed,
                                  max_steps, init.c_str(), &json, &stopped),
            "stoprule");
      PrintJson(json);
      if (!stopped) std::fprintf(stderr, "mixcert stoprule: budget exhausted\n");
    }
  } catch (const CommandFailure& f) {
    return f.exit_code;
  }
  return 0;
}
