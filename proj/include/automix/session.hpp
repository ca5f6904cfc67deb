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

#ifndef AUTOMIX_SESSION_HPP_
#define AUTOMIX_SESSION_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "automix/audio.hpp"
#include "automix/loudness.hpp"
#include "automix/masking.hpp"
#include "automix/objective.hpp"
#include "automix/optimizer.hpp"
#include "json.hpp"

namespace automix {

inline constexpr std::size_t kMinTracks = 2;
inline constexpr std::size_t kMaxTracks = 16;

struct TrackEntry {
  std::string id;
  // Resolved against the manifest's directory when relative.
  std::filesystem::path path;
};

// {"scenario": str, "target_lufs": number, "tracks": [{"id", "path"}],
//  "optimizer": {...}, "masking": {"channel_combine": ...}, "seed": int}
struct SessionManifest {
  std::string scenario = "session";
  double target_lufs = kDefaultTargetLufs;
  std::vector<TrackEntry> tracks;
  HarmonyConfig optimizer;
  ObjectiveWeights weights;
  ChannelCombine channel_combine = ChannelCombine::kBetterEar;

  // Throws Error(kInvalidManifest) on bad track counts, ids or settings.
  void validate() const;
};

SessionManifest parse_manifest(const nlohmann::json& doc,
                               const std::filesystem::path& base_dir = {});
SessionManifest read_manifest(const std::filesystem::path& manifest_path);
nlohmann::json to_json(const SessionManifest& manifest);

struct Session {
  SessionManifest manifest;
  // Same order as manifest.tracks, zero-padded at the tail to equal length.
  std::vector<TrackBuffer> tracks;
};

Session load_session(const std::filesystem::path& manifest_path);

// Loads the manifest's tracks; used when the manifest is built in memory.
Session load_tracks(SessionManifest manifest);

std::string_view to_string(ChannelCombine combine);

}  // namespace automix

#endif  // AUTOMIX_SESSION_HPP_
