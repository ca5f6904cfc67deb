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

#include "automix/pipeline.hpp"

#include "automix/error.hpp"
#include "automix/loudness.hpp"
#include "automix/objective.hpp"
#include "automix/optimizer.hpp"

namespace automix {

PreparedTracks prepare_tracks(std::span<const TrackBuffer> tracks,
                              double target_lufs) {
  if (tracks.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no tracks to prepare");
  }
  PreparedTracks out;
  std::vector<double> sum(tracks.front().size(), 0.0);
  for (const auto& track : tracks) {
    if (track.size() != sum.size()) {
      throw Error(ErrorKind::kInvalidArgument, "tracks must have equal length");
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += track.samples[i];

    LoudnessRow row;
    row.track_id = track.track_id;
    try {
      NormalizedTrack n = normalize_to_target(track, target_lufs);
      row.lufs_before = n.measurement.integrated_lufs;
      row.applied_gain_db = n.measurement.applied_gain_db;
      out.normalized.push_back(std::move(n.track));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSilence) throw;
      out.normalized.push_back(track);
    }
    out.rows.push_back(std::move(row));
  }
  out.total_before = measure_lufs(sum).integrated_lufs;
  return out;
}

MixResult run_session(const Session& session) {
  const SessionManifest& manifest = session.manifest;
  PreparedTracks prepared = prepare_tracks(session.tracks, manifest.target_lufs);

  MixObjective objective(prepared.normalized, manifest.weights,
                         manifest.channel_combine);
  SearchResult found = search(
      [&objective](std::span<const double> v) { return objective(v); },
      objective.box(), manifest.optimizer);

  MixResult result = render_mix(objective, objective.split(found.best_vector));
  result.scenario = manifest.scenario;
  result.seed = manifest.optimizer.rng_seed;
  result.target_lufs = manifest.target_lufs;
  result.trace = found.trace;
  result.iterations = found.iterations;
  for (std::size_t t = 0; t < prepared.rows.size(); ++t) {
    result.loudness_table[t].lufs_before = prepared.rows[t].lufs_before;
    result.loudness_table[t].applied_gain_db = prepared.rows[t].applied_gain_db;
  }
  result.loudness_table.back().lufs_before = prepared.total_before;
  return result;
}

}  // namespace automix
