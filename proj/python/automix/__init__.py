# Copyright 2026 The Automix Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Masking-minimising automatic mixer for multitrack speech."""

from ._automix import (
    BAND_COUNT,
    EQ_CENTER_HZ,
    SAMPLE_RATE,
    AutomixError,
    EffectParams,
    HarmonyConfig,
    apply_drc,
    apply_eq,
    apply_spatial,
    band_table,
    eq_response_db,
    excitation,
    harmony_search,
    masking_offset,
    masking_threshold,
    measure_lufs,
    mix_masking_report,
    normalize_to_target,
    read_wav,
    render_track,
    run_session,
    spatial_gains,
    write_mono_wav,
    write_wav,
)

__all__ = [
    "BAND_COUNT",
    "EQ_CENTER_HZ",
    "SAMPLE_RATE",
    "AutomixError",
    "EffectParams",
    "HarmonyConfig",
    "apply_drc",
    "apply_eq",
    "apply_spatial",
    "band_table",
    "eq_response_db",
    "excitation",
    "harmony_search",
    "masking_offset",
    "masking_threshold",
    "measure_lufs",
    "mix_masking_report",
    "normalize_to_target",
    "read_wav",
    "render_track",
    "run_session",
    "spatial_gains",
    "write_mono_wav",
    "write_wav",
]
