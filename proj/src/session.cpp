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

#include "automix/session.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>

#include "automix/error.hpp"
#include "automix/wav.hpp"

namespace automix {
namespace {

using nlohmann::json;

Error manifest_error(const std::string& why) {
  return Error(ErrorKind::kInvalidManifest, "manifest: " + why);
}

bool valid_id(const std::string& id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

double number_field(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw manifest_error(std::string(key) + " must be a number");
  return v.get<double>();
}

std::size_t count_field(const json& obj, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw manifest_error(std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

HarmonyConfig parse_optimizer(const json& block, ObjectiveWeights& weights) {
  static const std::set<std::string> kKnown = {
      "memory_size",        "hmcr",           "par",
      "bandwidth_fraction", "max_iterations", "target_objective",
      "weight_total",       "weight_diff"};
  if (!block.is_object()) throw manifest_error("optimizer must be an object");
  for (const auto& [key, _] : block.items()) {
    if (!kKnown.contains(key)) throw manifest_error("unknown optimizer key '" + key + "'");
  }
  HarmonyConfig c;
  c.memory_size = count_field(block, "memory_size", c.memory_size);
  c.hmcr = number_field(block, "hmcr", c.hmcr);
  c.par = number_field(block, "par", c.par);
  c.bandwidth_fraction = number_field(block, "bandwidth_fraction", c.bandwidth_fraction);
  c.max_iterations = count_field(block, "max_iterations", c.max_iterations);
  c.target_objective = number_field(block, "target_objective", c.target_objective);
  weights.total = number_field(block, "weight_total", weights.total);
  weights.diff = number_field(block, "weight_diff", weights.diff);
  return c;
}

ChannelCombine parse_combine(const std::string& name) {
  if (name == "better_ear") return ChannelCombine::kBetterEar;
  if (name == "mean") return ChannelCombine::kMean;
  throw manifest_error("channel_combine must be 'better_ear' or 'mean'");
}

}  // namespace

std::string_view to_string(ChannelCombine combine) {
  return combine == ChannelCombine::kMean ? "mean" : "better_ear";
}

void SessionManifest::validate() const {
  if (tracks.size() < kMinTracks) throw manifest_error("at least 2 tracks required");
  if (tracks.size() > kMaxTracks) throw manifest_error("at most 16 tracks allowed");
  std::set<std::string> seen;
  for (const auto& t : tracks) {
    if (!valid_id(t.id)) {
      throw manifest_error("track id '" + t.id +
                           "' must be non-empty and use only [A-Za-z0-9_-]");
    }
    if (t.id == "total") throw manifest_error("track id 'total' is reserved");
    if (!seen.insert(t.id).second) throw manifest_error("duplicate track id '" + t.id + "'");
  }
  if (!std::isfinite(target_lufs)) throw manifest_error("target_lufs must be finite");
  try {
    optimizer.validate();
  } catch (const Error& e) {
    throw manifest_error(e.what());
  }
}

SessionManifest parse_manifest(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw manifest_error("top level must be an object");
  SessionManifest m;
  if (doc.contains("scenario")) {
    if (!doc["scenario"].is_string()) throw manifest_error("scenario must be a string");
    m.scenario = doc["scenario"].get<std::string>();
  }
  m.target_lufs = number_field(doc, "target_lufs", m.target_lufs);
  if (!doc.contains("tracks") || !doc["tracks"].is_array()) {
    throw manifest_error("tracks must be an array");
  }
  for (const json& t : doc["tracks"]) {
    if (!t.is_object() || !t.contains("id") || !t.contains("path") ||
        !t["id"].is_string() || !t["path"].is_string()) {
      throw manifest_error("each track needs string 'id' and 'path'");
    }
    std::filesystem::path p = t["path"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    m.tracks.push_back({t["id"].get<std::string>(), p});
  }
  if (doc.contains("optimizer")) m.optimizer = parse_optimizer(doc["optimizer"], m.weights);
  if (doc.contains("masking")) {
    const json& masking = doc["masking"];
    if (!masking.is_object()) throw manifest_error("masking must be an object");
    if (masking.contains("channel_combine")) {
      if (!masking["channel_combine"].is_string()) {
        throw manifest_error("channel_combine must be a string");
      }
      m.channel_combine = parse_combine(masking["channel_combine"].get<std::string>());
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) {
      throw manifest_error("seed must be a non-negative integer");
    }
    m.optimizer.rng_seed = doc["seed"].get<std::uint64_t>();
  }
  m.validate();
  return m;
}

SessionManifest read_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw Error(ErrorKind::kFileNotFound,
                "cannot open manifest '" + manifest_path.string() + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw manifest_error(std::string("unparsable JSON: ") + e.what());
  }
  return parse_manifest(doc, manifest_path.parent_path());
}

json to_json(const SessionManifest& m) {
  json tracks = json::array();
  for (const auto& t : m.tracks) tracks.push_back({{"id", t.id}, {"path", t.path.string()}});
  return {
      {"scenario", m.scenario},
      {"target_lufs", m.target_lufs},
      {"tracks", tracks},
      {"optimizer",
       {{"memory_size", m.optimizer.memory_size},
        {"hmcr", m.optimizer.hmcr},
        {"par", m.optimizer.par},
        {"bandwidth_fraction", m.optimizer.bandwidth_fraction},
        {"max_iterations", m.optimizer.max_iterations},
        {"target_objective", m.optimizer.target_objective},
        {"weight_total", m.weights.total},
        {"weight_diff", m.weights.diff}}},
      {"masking", {{"channel_combine", to_string(m.channel_combine)}}},
      {"seed", m.optimizer.rng_seed},
  };
}

Session load_tracks(SessionManifest manifest) {
  manifest.validate();
  Session session;
  std::size_t longest = 0;
  for (const auto& entry : manifest.tracks) {
    if (!std::filesystem::exists(entry.path)) {
      throw Error(ErrorKind::kFileNotFound, "track '" + entry.id +
                                                "': missing file '" +
                                                entry.path.string() + "'");
    }
    TrackBuffer track = read_wav(entry.path);
    track.track_id = entry.id;
    longest = std::max(longest, track.size());
    session.tracks.push_back(std::move(track));
  }
  for (auto& t : session.tracks) t.samples.resize(longest, 0.0);
  session.manifest = std::move(manifest);
  return session;
}

Session load_session(const std::filesystem::path& manifest_path) {
  return load_tracks(read_manifest(manifest_path));
}

}  // namespace automix
