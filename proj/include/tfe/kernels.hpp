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

#pragma once

// Data-parallel inner loops used by the spectral layer. Each routine has a
// scalar reference implementation and, on x86-64, an AVX2+FMA variant. The
// variant is chosen once at first use from the running CPU; the environment
// variable TFE_SIMD=scalar|avx2 overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace tfe::kernels {

struct KernelTable {
  std::string_view name;
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y = A x with A row-major rows x cols.
  void (*gemv)(const double* a, const double* x, double* y, std::size_t rows,
               std::size_t cols);
  /// Barycentric sums over nodes: returns num/den with
  /// num = sum w_j f_j / (x - x_j), den = sum w_j / (x - x_j).
  /// x must not coincide with a node.
  double (*barycentric)(const double* nodes, const double* weights,
                        const double* values, std::size_t n, double x);
  /// max_i |a[i]|
  double (*max_abs)(const double* a, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 translation unit is not compiled in.
const KernelTable* avx2_table();

/// True when the running CPU supports the AVX2 table.
bool avx2_supported();

/// The table currently used by the library.
const KernelTable& active();

/// Replace the active table (tests and benchmarks). Not thread-safe against
/// concurrent kernel calls.
void set_active(const KernelTable& table);

// Convenience wrappers over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double max_abs(std::span<const double> a) {
  return active().max_abs(a.data(), a.size());
}

}  // namespace tfe::kernels
