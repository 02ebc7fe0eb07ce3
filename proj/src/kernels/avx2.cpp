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

#include <immintrin.h>

#include <cmath>

#include "tfe/kernels.hpp"

namespace tfe::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

void gemv_avx2(const double* a, const double* x, double* y, std::size_t rows,
               std::size_t cols) {
  // Four rows at a time share the loads of x.
  std::size_t i = 0;
  for (; i + 4 <= rows; i += 4) {
    const double* r0 = a + i * cols;
    const double* r1 = r0 + cols;
    const double* r2 = r1 + cols;
    const double* r3 = r2 + cols;
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      const __m256d xv = _mm256_loadu_pd(x + j);
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(r0 + j), xv, s0);
      s1 = _mm256_fmadd_pd(_mm256_loadu_pd(r1 + j), xv, s1);
      s2 = _mm256_fmadd_pd(_mm256_loadu_pd(r2 + j), xv, s2);
      s3 = _mm256_fmadd_pd(_mm256_loadu_pd(r3 + j), xv, s3);
    }
    double t0 = hsum(s0), t1 = hsum(s1), t2 = hsum(s2), t3 = hsum(s3);
    for (; j < cols; ++j) {
      t0 = std::fma(r0[j], x[j], t0);
      t1 = std::fma(r1[j], x[j], t1);
      t2 = std::fma(r2[j], x[j], t2);
      t3 = std::fma(r3[j], x[j], t3);
    }
    y[i] = t0;
    y[i + 1] = t1;
    y[i + 2] = t2;
    y[i + 3] = t3;
  }
  for (; i < rows; ++i) y[i] = dot_avx2(a + i * cols, x, cols);
}

double barycentric_avx2(const double* nodes, const double* weights,
                        const double* values, std::size_t n, double x) {
  const __m256d xv = _mm256_set1_pd(x);
  __m256d num = _mm256_setzero_pd();
  __m256d den = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d t = _mm256_div_pd(_mm256_loadu_pd(weights + j),
                                    _mm256_sub_pd(xv, _mm256_loadu_pd(nodes + j)));
    num = _mm256_fmadd_pd(t, _mm256_loadu_pd(values + j), num);
    den = _mm256_add_pd(den, t);
  }
  double ns = hsum(num);
  double ds = hsum(den);
  for (; j < n; ++j) {
    const double t = weights[j] / (x - nodes[j]);
    ns = std::fma(t, values[j], ns);
    ds += t;
  }
  return ns / ds;
}

double max_abs_avx2(const double* a, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double r = std::fmax(std::fmax(lane[0], lane[1]), std::fmax(lane[2], lane[3]));
  for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i]));
  return r;
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{"avx2", dot_avx2, gemv_avx2, barycentric_avx2,
                                 max_abs_avx2};
  return &table;
}

}  // namespace tfe::kernels
