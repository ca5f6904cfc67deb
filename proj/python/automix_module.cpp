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

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "automix/effects.hpp"
#include "automix/error.hpp"
#include "automix/loudness.hpp"
#include "automix/masking.hpp"
#include "automix/optimizer.hpp"
#include "automix/pipeline.hpp"
#include "automix/psychoacoustics.hpp"
#include "automix/report.hpp"
#include "automix/session.hpp"
#include "automix/wav.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

Array from_vector(const std::vector<double>& v) {
  Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

automix::TrackBuffer to_track(const Array& a, std::string id = "track") {
  automix::TrackBuffer t;
  t.track_id = std::move(id);
  t.samples = to_vector(a);
  return t;
}

automix::StereoBuffer to_stereo(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != 2) {
    throw std::invalid_argument("expected a (2, n) array");
  }
  const auto n = static_cast<std::size_t>(a.shape(1));
  automix::StereoBuffer s(n);
  std::copy(a.data(), a.data() + n, s.left.begin());
  std::copy(a.data() + n, a.data() + 2 * n, s.right.begin());
  return s;
}

Array from_stereo(const automix::StereoBuffer& s) {
  Array out({py::ssize_t{2}, static_cast<py::ssize_t>(s.size())});
  double* p = out.mutable_data();
  std::copy(s.left.begin(), s.left.end(), p);
  std::copy(s.right.begin(), s.right.end(), p + s.size());
  return out;
}

Array from_bands(const std::vector<automix::CriticalBandFrame>& frames) {
  Array out({static_cast<py::ssize_t>(frames.size()),
             static_cast<py::ssize_t>(automix::kBandCount)});
  double* p = out.mutable_data();
  for (const auto& f : frames) p = std::copy(f.energies.begin(), f.energies.end(), p);
  return out;
}

py::object parse_json(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

}  // namespace

PYBIND11_MODULE(_automix, m) {
  m.doc() = "Masking-minimising automatic mixer for multitrack speech";

  static py::exception<automix::Error> error(m, "AutomixError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const automix::Error& e) {
      PyErr_SetString(error.ptr(), (std::string(automix::to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.attr("SAMPLE_RATE") = automix::kSampleRateHz;
  m.attr("BAND_COUNT") = automix::kBandCount;
  m.attr("EQ_CENTER_HZ") = automix::kEqCenterHz;

  // session_io
  m.def("read_wav", [](const std::filesystem::path& path) {
    auto t = automix::read_wav(path);
    return py::make_tuple(t.track_id, from_vector(t.samples));
  }, py::arg("path"), "Read a mono 48 kHz WAV; returns (track_id, samples).");
  m.def("write_wav", [](const Array& stereo, const std::filesystem::path& path, bool pcm16) {
    automix::write_wav(to_stereo(stereo), path,
                       pcm16 ? automix::SampleFormat::kPcm16 : automix::SampleFormat::kFloat32);
  }, py::arg("stereo"), py::arg("path"), py::arg("pcm16") = false);
  m.def("write_mono_wav", [](const Array& mono, const std::filesystem::path& path, bool pcm16) {
    automix::write_wav(to_track(mono), path,
                       pcm16 ? automix::SampleFormat::kPcm16 : automix::SampleFormat::kFloat32);
  }, py::arg("samples"), py::arg("path"), py::arg("pcm16") = true);

  // loudness
  m.def("measure_lufs", [](const Array& a) -> std::optional<double> {
    if (a.ndim() == 2) return automix::measure_lufs(to_stereo(a)).integrated_lufs;
    return automix::measure_lufs(std::span<const double>(to_vector(a))).integrated_lufs;
  }, py::arg("samples"), "Integrated loudness in LUFS, or None for silence.");
  m.def("normalize_to_target", [](const Array& a, double target) {
    auto n = automix::normalize_to_target(to_track(a), target);
    return py::make_tuple(from_vector(n.track.samples), *n.measurement.integrated_lufs,
                          n.measurement.applied_gain_db);
  }, py::arg("samples"), py::arg("target_lufs") = automix::kDefaultTargetLufs);

  // psychoacoustics
  m.def("masking_offset", &automix::masking_offset, py::arg("z_bark"));
  m.def("band_table", [] {
    const auto& t = automix::band_table();
    py::dict d;
    d["f_lower_hz"] = t.f_lower_hz;
    d["f_center_hz"] = t.f_center_hz;
    d["f_upper_hz"] = t.f_upper_hz;
    d["z_center_bark"] = t.z_center_bark;
    return d;
  });
  m.def("excitation", [](const Array& a) {
    static const automix::PsychoacousticModel model;
    auto analysis = model.analyze(to_vector(a));
    return py::make_tuple(from_bands(analysis.excitation), analysis.active);
  }, py::arg("samples"), "Per-frame (frames, 109) excitation and activity flags.");
  m.def("masking_threshold", [](const Array& excitation) {
    auto v = to_vector(excitation);
    if (v.size() != automix::kBandCount) throw std::invalid_argument("need 109 bands");
    automix::CriticalBandFrame f;
    std::copy(v.begin(), v.end(), f.energies.begin());
    auto t = automix::masking_threshold(f);
    return from_vector({t.threshold_energy.begin(), t.threshold_energy.end()});
  }, py::arg("excitation"));

  // effects
  py::class_<automix::EffectParams>(m, "EffectParams")
      .def(py::init<>())
      .def_static("neutral", &automix::EffectParams::neutral)
      .def_readwrite("eq_gains_db", &automix::EffectParams::eq_gains_db)
      .def_readwrite("drc_ratio", &automix::EffectParams::drc_ratio)
      .def_readwrite("drc_threshold_db", &automix::EffectParams::drc_threshold_db)
      .def_readwrite("drc_attack_s", &automix::EffectParams::drc_attack_s)
      .def_readwrite("drc_release_s", &automix::EffectParams::drc_release_s)
      .def_readwrite("position_xyz", &automix::EffectParams::position_xyz)
      .def("to_vector", &automix::EffectParams::to_vector)
      .def_static("from_vector", [](const std::vector<double>& v) {
        return automix::EffectParams::from_vector(v);
      })
      .def("validate", &automix::EffectParams::validate)
      .def("__eq__", [](const automix::EffectParams& a, const automix::EffectParams& b) {
        return a == b;
      });

  m.def("eq_response_db", [](const std::vector<double>& gains, double hz) {
    return automix::eq_response_db(gains, hz);
  }, py::arg("gains_db"), py::arg("hz"));
  m.def("apply_eq", [](const Array& a, const std::vector<double>& gains) {
    return from_vector(automix::apply_eq(to_track(a), gains).samples);
  }, py::arg("samples"), py::arg("gains_db"));
  m.def("apply_drc", [](const Array& a, double ratio, double threshold_db, double attack_s,
                        double release_s) {
    return from_vector(
        automix::apply_drc(to_track(a), {ratio, threshold_db, attack_s, release_s}).samples);
  }, py::arg("samples"), py::arg("ratio"), py::arg("threshold_db"), py::arg("attack_s"),
     py::arg("release_s"));
  m.def("spatial_gains", [](const std::array<double, 3>& xyz) {
    auto g = automix::spatial_gains(xyz);
    return py::make_tuple(g.left, g.right, g.distance);
  }, py::arg("position_xyz"), "Returns (left, right, distance_gain).");
  m.def("apply_spatial", [](const Array& a, const std::array<double, 3>& xyz) {
    return from_stereo(automix::apply_spatial(to_track(a), xyz));
  }, py::arg("samples"), py::arg("position_xyz"));
  m.def("render_track", [](const Array& a, const automix::EffectParams& p) {
    return from_stereo(automix::render_track(to_track(a), p));
  }, py::arg("samples"), py::arg("params"));

  // masking
  m.def("mix_masking_report", [](const std::vector<Array>& rendered,
                                 const std::vector<std::string>& ids,
                                 const std::string& combine) {
    static const automix::PsychoacousticModel model;
    std::vector<automix::StereoBuffer> stems;
    for (const auto& r : rendered) stems.push_back(to_stereo(r));
    auto mode = combine == "mean" ? automix::ChannelCombine::kMean
                                  : automix::ChannelCombine::kBetterEar;
    auto report = automix::mix_masking_report(model, ids, stems, mode);
    py::dict d;
    d["m_n"] = report.scores();
    d["m_total"] = report.m_total;
    d["m_diff"] = report.m_diff;
    return d;
  }, py::arg("rendered"), py::arg("track_ids"), py::arg("channel_combine") = "better_ear");

  // optimizer
  py::class_<automix::HarmonyConfig>(m, "HarmonyConfig")
      .def(py::init<>())
      .def_readwrite("memory_size", &automix::HarmonyConfig::memory_size)
      .def_readwrite("hmcr", &automix::HarmonyConfig::hmcr)
      .def_readwrite("par", &automix::HarmonyConfig::par)
      .def_readwrite("bandwidth_fraction", &automix::HarmonyConfig::bandwidth_fraction)
      .def_readwrite("max_iterations", &automix::HarmonyConfig::max_iterations)
      .def_readwrite("target_objective", &automix::HarmonyConfig::target_objective)
      .def_readwrite("rng_seed", &automix::HarmonyConfig::rng_seed);

  m.def("harmony_search", [](const std::function<double(std::vector<double>)>& objective,
                             const std::vector<double>& lower,
                             const std::vector<double>& upper,
                             const automix::HarmonyConfig& config) {
    if (lower.size() != upper.size()) throw std::invalid_argument("bounds differ in length");
    automix::Box box;
    for (std::size_t i = 0; i < lower.size(); ++i) box.ranges.push_back({lower[i], upper[i]});
    auto result = automix::search(
        [&](std::span<const double> v) {
          return objective(std::vector<double>(v.begin(), v.end()));
        },
        box, config);
    py::dict d;
    d["best_vector"] = result.best_vector;
    d["best_objective"] = result.best_objective;
    d["trace"] = result.trace.best_value;
    d["evaluations"] = result.trace.evaluations;
    d["iterations"] = result.iterations;
    return d;
  }, py::arg("objective"), py::arg("lower"), py::arg("upper"), py::arg("config"));

  // end to end
  m.def("run_session", [](const std::filesystem::path& manifest_path,
                          const std::filesystem::path& out_dir,
                          std::optional<std::uint64_t> seed,
                          std::optional<std::size_t> max_iterations,
                          std::optional<double> target_lufs, bool dump_bands) {
    automix::SessionManifest manifest = automix::read_manifest(manifest_path);
    if (seed) manifest.optimizer.rng_seed = *seed;
    if (max_iterations) manifest.optimizer.max_iterations = *max_iterations;
    if (target_lufs) manifest.target_lufs = *target_lufs;
    automix::MixResult result;
    {
      py::gil_scoped_release release;
      result = automix::run_session(automix::load_tracks(std::move(manifest)));
      automix::emit_report(result, out_dir, {.dump_bands = dump_bands});
    }
    return parse_json(automix::report_json(result));
  }, py::arg("manifest"), py::arg("out_dir"), py::arg("seed") = py::none(),
     py::arg("max_iterations") = py::none(), py::arg("target_lufs") = py::none(),
     py::arg("dump_bands") = false,
     "Optimise a session, write the report files, and return report.json as a dict.");
}
