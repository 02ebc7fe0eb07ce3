// Copyright 2026 The tfe Authors
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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "tfe/kernels.hpp"

namespace tfe::kernels {

#if defined(TFE_HAVE_AVX2_TU)
const KernelTable* avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(TFE_HAVE_AVX2_TU)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool avx2_supported() {
#if defined(TFE_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

const KernelTable* select_initial() {
  const char* env = std::getenv("TFE_SIMD");
  const std::string_view want = env ? std::string_view(env) : std::string_view();
  if (want == "scalar") return &scalar_table();
  if (avx2_supported()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{select_initial()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) { slot().store(&table, std::memory_order_release); }

}  // namespace tfe::kernels
