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

#ifndef AUTOMIX_ERROR_HPP_
#define AUTOMIX_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace automix {

enum class ErrorKind {
  kFileNotFound,
  kIo,
  kMalformedFile,
  kNotMono,
  kSampleRate,
  kUnsupportedEncoding,
  kInvalidManifest,
  kInvalidArgument,
  kTooShort,
  kSilence,
  kInvariant,
};

std::string_view to_string(ErrorKind kind);

// All validated failures surface as this type; `kind()` distinguishes them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace automix

#endif  // AUTOMIX_ERROR_HPP_
