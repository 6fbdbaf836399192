// Copyright 2026 The reteval Authors.
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

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reteval/config.h"
#include "reteval/errors.h"
#include "reteval/fixture.h"
#include "reteval/pipeline.h"
#include "reteval/version.h"

namespace {

using namespace reteval;

struct Overrides {
  std::string config;
  std::vector<std::size_t> k;
  std::string comparator;
  bool mock = false;
  std::string cache_dir;
  std::string out;
};

RunConfig resolve_config(const Overrides& o) {
  RunConfig config = load_config(o.config);
  if (!o.k.empty()) config.k_values = o.k;
  if (!o.comparator.empty()) config.judge.options.comparator = parse_comparator(o.comparator);
  if (o.mock) config.mock = true;
  if (!o.cache_dir.empty()) config.cache_dir = o.cache_dir;
  if (!o.out.empty()) config.out_dir = o.out;
  config.validate();
  return config;
}

void print_outcome(const StageOutcome& outcome) {
  std::cout << to_string(outcome.stage) << ": "
            << (outcome.skipped ? "up to date" : "done") << " (" << outcome.items << " items, "
            << outcome.failures << " failed)\n";
}

int execute(const Overrides& o, std::optional<Stage> stage) {
  const RunConfig config = resolve_config(o);
  const auto dataset = load_dataset(config.dataset);
  Pipeline pipeline(config, make_providers(config, dataset));
  std::exception_ptr failure;
  try {
    if (stage) {
      print_outcome(pipeline.run_stage(*stage));
    } else {
      for (auto s : kAllStages) print_outcome(pipeline.run_stage(s));
    }
  } catch (...) {
    failure = std::current_exception();
  }
  const auto calls = pipeline.provider_calls();
  std::cerr << "provider calls: embedder=" << calls.embedder << " rag=" << calls.rag
            << " semigold=" << calls.semigold << " judge=" << calls.judge << "\n";
  if (failure) std::rethrow_exception(failure);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retrieval evaluation harness"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Overrides o;
  std::optional<Stage> selected;
  bool run_all = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run configuration (JSON)")->required();
    sub->add_option("--k", o.k, "Cut-off values, e.g. --k 1,5,10")->delimiter(',');
    sub->add_option("--comparator", o.comparator, "llm | exact | token_overlap | embedding");
    sub->add_flag("--mock", o.mock, "Use the offline oracle providers");
    sub->add_option("--cache-dir", o.cache_dir, "Provider response cache directory");
    sub->add_option("--out", o.out, "Output directory");
  };

  for (auto s : kAllStages) {
    auto* sub = app.add_subcommand(std::string(to_string(s)), "Run the " +
                                                                  std::string(to_string(s)) +
                                                                  " stage");
    add_common(sub);
    sub->callback([&selected, s] { selected = s; });
  }
  auto* run = app.add_subcommand("run", "Run every stage");
  add_common(run);
  run->callback([&] { run_all = true; });

  std::string fixture_dir;
  std::string variant = "mixed";
  std::uint64_t seed = 7;
  auto* fixture_cmd = app.add_subcommand("fixture", "Write the synthetic fixture");
  fixture_cmd->add_option("dir", fixture_dir, "Target directory")->required();
  fixture_cmd->add_option("--variant", variant, "clean | mixed")
      ->check(CLI::IsMember({"clean", "mixed"}));
  fixture_cmd->add_option("--seed", seed, "Filler seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (fixture_cmd->parsed()) {
      write_fixture(fixture_dir, variant == "clean" ? FixtureVariant::Clean : FixtureVariant::Mixed,
                    seed);
      return 0;
    }
    return execute(o, run_all ? std::nullopt : selected);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
