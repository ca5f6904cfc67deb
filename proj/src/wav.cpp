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

#include "automix/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "automix/error.hpp"

namespace automix {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFF));
  }
}

struct FormatChunk {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

double decode_sample(const std::uint8_t* p, const FormatChunk& fmt) {
  if (fmt.tag == kFormatFloat) {
    if (fmt.bits == 32) {
      return static_cast<double>(std::bit_cast<float>(read_u32(p)));
    }
    std::uint64_t bits = static_cast<std::uint64_t>(read_u32(p)) |
                         (static_cast<std::uint64_t>(read_u32(p + 4)) << 32);
    return std::bit_cast<double>(bits);
  }
  switch (fmt.bits) {
    case 16:
      return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = static_cast<std::int32_t>(
          (static_cast<std::uint32_t>(p[0]) << 8) |
          (static_cast<std::uint32_t>(p[1]) << 16) |
          (static_cast<std::uint32_t>(p[2]) << 24));
      return (v >> 8) / 8388608.0;
    }
    default:
      return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
  }
}

bool supported(const FormatChunk& fmt) {
  if (fmt.tag == kFormatPcm) {
    return fmt.bits == 16 || fmt.bits == 24 || fmt.bits == 32;
  }
  if (fmt.tag == kFormatFloat) return fmt.bits == 32 || fmt.bits == 64;
  return false;
}

std::string display(const std::filesystem::path& path) {
  return "'" + path.string() + "'";
}

}  // namespace

WavData read_wav_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kFileNotFound,
                "cannot open audio file " + display(path));
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  auto malformed = [&](const std::string& why) {
    return Error(ErrorKind::kMalformedFile, display(path) + ": " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw malformed("not a RIFF/WAVE file");
  }

  std::optional<FormatChunk> fmt;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    std::size_t size = read_u32(chunk + 4);
    std::size_t body = pos + 8;
    std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || available < 16) throw malformed("truncated fmt chunk");
      FormatChunk f;
      f.tag = read_u16(chunk + 8);
      f.channels = read_u16(chunk + 10);
      f.sample_rate = read_u32(chunk + 12);
      f.bits = read_u16(chunk + 22);
      if (f.tag == kFormatExtensible) {
        if (size < 40 || available < 40) {
          throw malformed("truncated extensible fmt chunk");
        }
        f.tag = read_u16(chunk + 8 + 24);
      }
      fmt = f;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      // Some writers leave the size unset when streaming.
      data_size = std::min(size, available);
    }
    pos = body + size + (size & 1);
  }
  if (!fmt) throw malformed("missing fmt chunk");
  if (data == nullptr) throw malformed("missing data chunk");
  if (!supported(*fmt)) {
    throw Error(ErrorKind::kUnsupportedEncoding,
                display(path) + ": unsupported encoding (format tag " +
                    std::to_string(fmt->tag) + ", " +
                    std::to_string(fmt->bits) + " bits)");
  }
  if (fmt->channels == 0) throw malformed("zero channels");

  WavData out;
  out.sample_rate_hz = static_cast<int>(fmt->sample_rate);
  out.bits_per_sample = fmt->bits;
  out.format = fmt->tag == kFormatFloat ? SampleFormat::kFloat32
                                        : SampleFormat::kPcm16;
  const std::size_t width = fmt->bits / 8;
  const std::size_t frame_bytes = width * fmt->channels;
  const std::size_t frames = data_size / frame_bytes;
  out.channels.assign(fmt->channels, std::vector<double>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      out.channels[c][i] = decode_sample(data + i * frame_bytes + c * width, *fmt);
    }
  }
  return out;
}

TrackBuffer read_wav(const std::filesystem::path& path) {
  WavData wav = read_wav_file(path);
  if (wav.channels.size() != 1) {
    throw Error(ErrorKind::kNotMono, display(path) + ": track must be mono");
  }
  if (wav.sample_rate_hz != kSampleRateHz) {
    throw Error(ErrorKind::kSampleRate,
                display(path) + ": sample rate must be 48000 (got " +
                    std::to_string(wav.sample_rate_hz) + ")");
  }
  TrackBuffer track;
  track.track_id = path.stem().string();
  track.samples = std::move(wav.channels.front());
  track.sample_rate_hz = wav.sample_rate_hz;
  if (track.samples.empty()) {
    throw Error(ErrorKind::kMalformedFile, display(path) + ": no samples");
  }
  if (!std::all_of(track.samples.begin(), track.samples.end(),
                   [](double s) { return std::isfinite(s); })) {
    throw Error(ErrorKind::kMalformedFile,
                display(path) + ": contains non-finite samples");
  }
  return track;
}

namespace {

void write_interleaved(const std::vector<std::span<const double>>& channels,
                       int sample_rate, const std::filesystem::path& path,
                       SampleFormat format) {
  const std::size_t frames = channels.front().size();
  for (auto ch : channels) {
    for (double s : ch) {
      if (!std::isfinite(s) || s < -1.0 || s > 1.0) {
        throw Error(ErrorKind::kInvariant,
                    "sample outside [-1, 1] at write time for " +
                        display(path));
      }
    }
  }
  const std::uint16_t channel_count = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t bits = format == SampleFormat::kFloat32 ? 32 : 16;
  const std::uint16_t block_align = channel_count * bits / 8;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(frames * block_align);

  std::string out;
  out.reserve(44 + data_bytes);
  out.append("RIFF");
  put_u32(out, 36 + data_bytes);
  out.append("WAVE");
  out.append("fmt ");
  put_u32(out, 16);
  put_u16(out, format == SampleFormat::kFloat32 ? kFormatFloat : kFormatPcm);
  put_u16(out, channel_count);
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate) * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);
  out.append("data");
  put_u32(out, data_bytes);
  for (std::size_t i = 0; i < frames; ++i) {
    for (auto ch : channels) {
      if (format == SampleFormat::kFloat32) {
        put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(ch[i])));
      } else {
        double scaled = std::round(ch[i] * 32768.0);
        scaled = std::clamp(scaled, -32768.0, 32767.0);
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
      }
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error(ErrorKind::kIo, "cannot open " + display(path) + " for writing");
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorKind::kIo, "write failed for " + display(path));
}

}  // namespace

void write_wav(const StereoBuffer& buffer, const std::filesystem::path& path,
               SampleFormat format) {
  buffer.validate();
  write_interleaved({buffer.left, buffer.right}, buffer.sample_rate_hz, path,
                    format);
}

void write_wav(const TrackBuffer& buffer, const std::filesystem::path& path,
               SampleFormat format) {
  write_interleaved({buffer.samples}, buffer.sample_rate_hz, path, format);
}

}  // namespace automix
