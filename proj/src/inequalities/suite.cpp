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
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "terms.hpp"

namespace tfe::inequalities {

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TFE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

namespace detail {

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

namespace {

constexpr double kP[] = {1.0, 2.0, 4.0, kInf};

struct InterpCase {
  double p, q, r;
};
constexpr InterpCase kInterp[] = {{2, 2, 2}, {4, 2, 2}, {6, 2, 2}, {kInf, 2, 2},
                                  {kInf, 1, 2}, {4, 1, kInf}, {kInf, 4, 1}};

std::vector<InequalityReport> sample_reports(const CorpusSample& s) {
  std::vector<InequalityReport> out;
  const Field& g = s.admissible.field();
  for (double p : kP)
    for (double q : kP) {
      out.push_back(poincare_check(s.with_zero, p, q));
      out.push_back(poincare_check(g, p, q));
      out.push_back(wirtinger_check(s.general, p, q));
      out.push_back(wirtinger_derivative_check(g, p, q));
    }
  for (auto [q, r] : detail::kGnPairs) {
    out.push_back(gn_sup_zero_check(s.with_zero, q, r));
    out.push_back(gn_sup_zero_check(g, q, r));
    out.push_back(gn_sup_check(s.general, q, r));
  }
  for (auto c : kInterp) out.push_back(gn_interp_check(g, c.p, c.q, c.r));
  for (auto& r : lemma310_suite(s.admissible)) out.push_back(std::move(r));
  for (int m = 1; m <= 3; ++m) out.push_back(lemma311_check(s.admissible, m));
  return out;
}

}  // namespace

std::size_t CorpusSummary::violations() const {
  std::size_t n = 0;
  for (const auto& l : lines) n += l.violations;
  return n;
}

CorpusSummary verify_corpus(std::uint64_t seed, std::size_t count, bool keep_records) {
  const auto grid = Grid::build(kCorpusNodes);
  std::vector<std::vector<InequalityReport>> per(count);
  detail::for_each_index(count, [&](std::size_t i) {
    per[i] = sample_reports(corpus_sample(grid, seed, i));
  });

  CorpusSummary summary;
  std::map<std::string, std::size_t> index;
  for (auto& reports : per) {
    for (auto& r : reports) {
      auto [it, fresh] = index.try_emplace(r.name, summary.lines.size());
      if (fresh) summary.lines.push_back({r.name, 0, 0, 0.0, r.constant, r.calibrated});
      auto& line = summary.lines[it->second];
      ++line.evaluated;
      if (!r.holds) ++line.violations;
      line.max_ratio = std::max(line.max_ratio, r.ratio);
      if (keep_records) summary.records.push_back(std::move(r));
    }
  }
  return summary;
}

}  // namespace tfe::inequalities
