// Copyright 2026 The Automix Authors. All Rights Reserved.
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

// automix run <manifest.json> --out <dir> [--seed N] [--max-iter N]
//             [--target-lufs X] [--dump-bands]

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "automix/error.hpp"
#include "automix/pipeline.hpp"
#include "automix/report.hpp"
#include "automix/session.hpp"

namespace {

struct RunArgs {
  std::string manifest;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iterations;
  std::optional<double> target_lufs;
  bool dump_bands = false;
};

int run(const RunArgs& args) {
  automix::SessionManifest manifest = automix::read_manifest(args.manifest);
  if (args.seed) manifest.optimizer.rng_seed = *args.seed;
  if (args.max_iterations) manifest.optimizer.max_iterations = *args.max_iterations;
  if (args.target_lufs) manifest.target_lufs = *args.target_lufs;
  automix::Session session = automix::load_tracks(std::move(manifest));

  automix::MixResult result = automix::run_session(session);
  automix::emit_report(result, args.out_dir, {.dump_bands = args.dump_bands});

  std::cout << "scenario " << result.scenario << ": " << result.track_ids.size()
            << " tracks, " << result.iterations << " iterations, objective "
            << result.combined_objective << " (M_T " << result.masking.m_total
            << ", M_d " << result.masking.m_diff << ")\n"
            << "wrote " << args.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline multitrack speech mixer that minimises cross-track masking"};
  app.require_subcommand(1);

  RunArgs args;
  CLI::App* run_cmd = app.add_subcommand("run", "Optimise and render a session");
  run_cmd->add_option("manifest", args.manifest, "Session manifest (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", args.out_dir, "Output directory")->required();
  run_cmd->add_option("--seed", args.seed, "Override the manifest seed");
  run_cmd->add_option("--max-iter", args.max_iterations,
                      "Override optimizer.max_iterations")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--target-lufs", args.target_lufs,
                      "Override the per-track loudness target");
  run_cmd->add_flag("--dump-bands", args.dump_bands,
                    "Also write the critical band table to bands.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(args);
  } catch (const automix::Error& e) {
    std::cerr << "automix: " << automix::to_string(e.kind()) << ": " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "automix: internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
