// Copyright 2026 The Morphforge Authors
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
//
// morphforge: validate robot descriptions, sample physics-consistent
// randomized embodiments, and export canonical joint-space graphs.
//
// Exit codes: 0 success, 1 validation failure, 2 input error, 3 internal
// error. These are stable.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "morphforge/canonical.hpp"
#include "morphforge/errors.hpp"
#include "morphforge/inertia.hpp"
#include "morphforge/randomizer.hpp"
#include "morphforge/robot_model.hpp"

namespace {

namespace fs = std::filesystem;
using namespace morphforge;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

bool IsInputError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDocument:
    case ErrorCode::kDanglingReference:
    case ErrorCode::kCyclicTree:
    case ErrorCode::kMissingInertia:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kIoError:
      return true;
    default:
      return false;
  }
}

std::string ReadTextFile(const fs::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

// write-then-rename so partially written outputs never appear under their
// final name.
void WriteFileAtomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream || !(stream << content)) {
      throw Error(ErrorCode::kIoError, "cannot write '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

canonical::AliasConfig LoadAliases(const fs::path& path) {
  return canonical::ParseAliasConfig(ReadTextFile(path));
}

int CmdValidate(const std::string& robot_path, bool as_json) {
  const model::RobotTemplate robot = model::LoadRobot(robot_path);
  bool all_ok = true;
  nlohmann::ordered_json report;
  report["robot"] = robot.name;
  report["links"] = nlohmann::json::array();

  if (!as_json) {
    std::printf("%-28s %10s  %5s %5s %5s %5s  %s\n", "link", "mass", "m>0",
                "D>0", "tri", "pd", "verdict");
  }
  for (const model::LinkSpec& link : robot.links) {
    if (link.IsMassless()) {
      if (as_json) {
        report["links"].push_back(
            {{"name", link.name}, {"massless", true}, {"consistent", true}});
      } else {
        std::printf("%-28s %10s  %5s %5s %5s %5s  SKIP (massless)\n",
                    link.name.c_str(), "0", "-", "-", "-", "-");
      }
      continue;
    }
    const inertia::ConsistencyReport r =
        inertia::CheckConsistency(link.inertial);
    all_ok = all_ok && r.consistent;
    if (as_json) {
      report["links"].push_back({{"name", link.name},
                                 {"massless", false},
                                 {"mass", link.inertial.m},
                                 {"mass_positive", r.mass_positive},
                                 {"moments_positive", r.moments_positive},
                                 {"triangle_ok", r.triangle_ok},
                                 {"pd_ok", r.pd_ok},
                                 {"min_eigenvalue_J", r.min_eigenvalue_J},
                                 {"consistent", r.consistent}});
    } else {
      auto flag = [](bool b) { return b ? "yes" : "NO"; };
      std::printf("%-28s %10.4f  %5s %5s %5s %5s  %s\n", link.name.c_str(),
                  link.inertial.m, flag(r.mass_positive),
                  flag(r.moments_positive), flag(r.triangle_ok), flag(r.pd_ok),
                  r.consistent ? "OK" : "FAIL");
    }
  }
  report["all_consistent"] = all_ok;
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("%s: %s\n", robot.name.c_str(),
                all_ok ? "all links consistent" : "INCONSISTENT");
  }
  return all_ok ? kExitOk : kExitValidationFailure;
}

nlohmann::ordered_json SampleMetadata(const rand::EmbodimentSample& sample,
                                      uint64_t index) {
  nlohmann::ordered_json meta;
  meta["robot"] = sample.robot.name;
  meta["sample_index"] = index;
  meta["sample_seed"] = sample.sample_seed;
  meta["active_joints"] = sample.robot.NumDof();
  meta["total_mass"] = model::TotalMass(sample.robot);
  meta["applied_theta"] = nlohmann::ordered_json::object();
  for (const auto& [link, theta] : sample.applied_theta) {
    meta["applied_theta"][link] = theta.ToArray();
  }
  meta["locked"] = sample.locked;
  meta["axis_permutations"] = nlohmann::ordered_json::object();
  for (const auto& [joint, perm] : sample.axis_permutations) {
    meta["axis_permutations"][joint] = perm;
  }
  meta["scaled_gains"] = nlohmann::ordered_json::object();
  for (const auto& [joint, gains] : sample.scaled_gains) {
    meta["scaled_gains"][joint] = {
        {"kp", gains.kp}, {"kd", gains.kd}, {"tau_max", gains.tau_max}};
  }
  return meta;
}

int CmdRandomize(const std::string& robot_path, const std::string& config_path,
                 uint64_t seed, bool seed_given, int count,
                 const std::string& outdir, int jobs) {
  const model::RobotTemplate robot = model::LoadRobot(robot_path);
  rand::RandomizationConfig config = rand::LoadConfig(config_path, robot);
  if (seed_given) {
    config.seed = seed;
  } else if (const char* env_seed = std::getenv("MORPHFORGE_SEED")) {
    config.seed = std::strtoull(env_seed, nullptr, 10);
  }

  for (const model::LinkSpec& link : robot.links) {
    if (!link.IsMassless() &&
        !inertia::CheckConsistency(link.inertial).consistent) {
      std::fprintf(stderr, "template link '%s' is inconsistent\n",
                   link.name.c_str());
      return kExitValidationFailure;
    }
  }

  fs::create_directories(outdir);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      if (failed.load()) return;
      try {
        const rand::EmbodimentSample sample =
            rand::GenerateIndexed(robot, config, static_cast<uint64_t>(i));
        char stem[32];
        std::snprintf(stem, sizeof(stem), "sample_%04d", i);
        WriteFileAtomic(fs::path(outdir) / (std::string(stem) + ".urdf"),
                        model::SerializeRobot(sample.robot));
        WriteFileAtomic(
            fs::path(outdir) / (std::string(stem) + ".json"),
            SampleMetadata(sample, static_cast<uint64_t>(i)).dump(2) + "\n");
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  const int thread_count =
      std::max(1, std::min(jobs, static_cast<int>(
                                     std::thread::hardware_concurrency())));
  std::vector<std::thread> threads;
  for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (std::thread& thread : threads) thread.join();

  if (failed.load()) {
    std::fprintf(stderr, "randomize failed: %s\n", first_error.c_str());
    return kExitInternalError;
  }
  std::printf("wrote %d samples to %s (seed %llu)\n", count, outdir.c_str(),
              static_cast<unsigned long long>(config.seed));
  return kExitOk;
}

int CmdGraph(const std::string& robot_path, const std::string& alias_path,
             const std::string& format, const std::string& map_out) {
  const model::RobotTemplate robot = model::LoadRobot(robot_path);
  const canonical::AliasConfig aliases = LoadAliases(alias_path);
  const canonical::JointMap map =
      canonical::BuildJointMap(robot, aliases.aliases);
  const canonical::EmbodimentGraph graph =
      canonical::BuildGraph(robot, map, aliases.parallel_groups);

  if (format == "csv") {
    std::cout << canonical::AdjacencyCsv(graph);
  } else if (format == "dot") {
    std::cout << canonical::GraphDot(graph);
  } else {
    std::fprintf(stderr, "unknown format '%s' (use csv or dot)\n",
                 format.c_str());
    return kExitInputError;
  }
  if (!map_out.empty()) {
    WriteFileAtomic(map_out, canonical::JointMapJson(map));
  }
  return kExitOk;
}

int CmdInspect(const std::string& robot_path, const std::string& alias_path) {
  const model::RobotTemplate robot = model::LoadRobot(robot_path);
  std::printf("robot: %s\n", robot.name.c_str());
  std::printf("links: %d   revolute joints: %d   fixed joints: %d\n",
              robot.NumLinks(), robot.NumDof(),
              static_cast<int>(robot.joints.size()) - robot.NumDof());
  std::printf("total mass: %.6g kg\n", model::TotalMass(robot));

  if (!alias_path.empty()) {
    const canonical::AliasConfig aliases = LoadAliases(alias_path);
    const canonical::JointMap map =
        canonical::BuildJointMap(robot, aliases.aliases);
    std::printf("canonical coverage: %d/32 slots\n", map.n_r);
  }

  std::printf("%-28s %10s  %-26s %s\n", "link", "mass", "com",
              "principal moments");
  for (const model::LinkSpec& link : robot.links) {
    if (link.IsMassless()) {
      std::printf("%-28s %10s\n", link.name.c_str(), "massless");
      continue;
    }
    const Eigen::Vector3d com = link.inertial.h / link.inertial.m;
    const inertia::PrincipalMoments pm =
        inertia::ComputePrincipalMoments(link.inertial);
    std::printf("%-28s %10.4f  (%7.4f %7.4f %7.4f)  %.3e %.3e %.3e\n",
                link.name.c_str(), link.inertial.m, com.x(), com.y(), com.z(),
                pm.D.x(), pm.D.y(), pm.D.z());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"morphforge: physics-consistent humanoid morphology tools"};
  app.require_subcommand(1);

  std::string robot_path, config_path, alias_path, outdir = "samples";
  std::string format = "csv", map_out;
  uint64_t seed = 0;
  int count = 1, jobs = 8;
  bool as_json = false;

  CLI::App* validate = app.add_subcommand(
      "validate", "check every link's physical consistency");
  validate->add_option("robot", robot_path, "URDF file")->required();
  validate->add_flag("--json", as_json, "machine readable report");

  CLI::App* randomize = app.add_subcommand(
      "randomize", "sample randomized embodiments from a template");
  randomize->add_option("robot", robot_path, "URDF template")->required();
  CLI::Option* seed_option =
      randomize->add_option("--seed", seed, "RNG seed (fallback: MORPHFORGE_SEED)");
  randomize->add_option("--config", config_path, "randomization config JSON")
      ->required();
  randomize->add_option("--count", count, "number of samples");
  randomize->add_option("--outdir", outdir, "output directory");
  randomize->add_option("--jobs", jobs, "worker threads");

  CLI::App* graph = app.add_subcommand(
      "graph", "export the canonical embodiment graph");
  graph->add_option("robot", robot_path, "URDF file")->required();
  graph->add_option("--aliases", alias_path, "joint alias JSON")->required();
  graph->add_option("--format", format, "csv or dot");
  graph->add_option("--map-out", map_out, "write the joint map JSON here");

  CLI::App* inspect = app.add_subcommand(
      "inspect", "summarize masses, inertia, and canonical coverage");
  inspect->add_option("robot", robot_path, "URDF file")->required();
  inspect->add_option("--aliases", alias_path, "joint alias JSON (optional)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return CmdValidate(robot_path, as_json);
    if (randomize->parsed()) {
      return CmdRandomize(robot_path, config_path, seed,
                          seed_option->count() > 0, count, outdir, jobs);
    }
    if (graph->parsed()) return CmdGraph(robot_path, alias_path, format, map_out);
    if (inspect->parsed()) return CmdInspect(robot_path, alias_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.code() == ErrorCode::kUnmappedJoint ||
        e.code() == ErrorCode::kDuplicateSlot ||
        e.code() == ErrorCode::kInconsistentLink ||
        e.code() == ErrorCode::kInconsistentTemplate) {
      return kExitValidationFailure;
    }
    return IsInputError(e.code()) ? kExitInputError : kExitInternalError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternalError;
  }
  return kExitInternalError;
}
