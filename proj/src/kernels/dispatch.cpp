// Copyright 2026 The Playlist Story Builder Authors
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

#include <cstdlib>
#include <string_view>

#include "psb/kernels.hpp"

namespace psb::kernels {

#if defined(PSB_HAVE_AVX2)
const KernelSet& Avx2Impl();
#endif

const KernelSet* Avx2() {
#if defined(PSB_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  if (supported) return &Avx2Impl();
#endif
  return nullptr;
}

const KernelSet& Active() {
  static const KernelSet* const chosen = [] {
    const char* env = std::getenv("PSB_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &Scalar();
    if (const KernelSet* avx2 = Avx2()) return avx2;
    return &Scalar();
  }();
  return *chosen;
}

}  // namespace psb::kernels
