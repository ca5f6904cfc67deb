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

#include "automix/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "automix/error.hpp"

namespace automix {
namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

class RealFftPlan {
 public:
  explicit RealFftPlan(std::size_t n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFftPlan() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFftPlan(const RealFftPlan&) = delete;
  RealFftPlan& operator=(const RealFftPlan&) = delete;

  void execute(std::span<const double> input,
               std::span<std::complex<double>> output) {
    std::copy(input.begin(), input.end(), in_);
    fftw_execute(plan_);
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      output[k] = {out_[k][0], out_[k][1]};
    }
  }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

RealFftPlan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<RealFftPlan>> plans;
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<RealFftPlan>(n);
  return *slot;
}

}  // namespace

void real_fft(std::span<const double> input,
              std::span<std::complex<double>> output) {
  const std::size_t n = input.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "FFT size must be a power of two");
  }
  if (output.size() != n / 2 + 1) {
    throw Error(ErrorKind::kInvalidArgument, "FFT output must hold n/2+1 bins");
  }
  plan_for(n).execute(input, output);
}

std::vector<double> hann_window(std::size_t size) {
  std::vector<double> w(size);
  const double denom = static_cast<double>(size - 1);
  for (std::size_t i = 0; i < size; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / denom));
  }
  return w;
}

}  // namespace automix
