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

#include <cmath>
#include <string>

#include "tfe/errors.hpp"
#include "tfe/kernels.hpp"
#include "tfe/spectral.hpp"

namespace tfe {

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw StructuralError("field without a grid");
  if (values_.size() != grid_->size())
    throw StructuralError("field has " + std::to_string(values_.size()) +
                          " samples on a grid of " + std::to_string(grid_->size()) + " nodes");
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericalError("non-finite sample in field");
}

Field Field::zeros(GridPtr grid) {
  const std::size_t n = grid->size();
  return Field(std::move(grid), std::vector<double>(n, 0.0));
}

Field Field::sample(GridPtr grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->nodes()[i]);
  return Field(std::move(grid), std::move(v));
}

void require_same_grid(const Grid& grid, const Field& f) {
  if (f.grid().get() != &grid) throw StructuralError("field lives on a different grid");
}

Field differentiate(const Grid& grid, const Field& f, int order) {
  require_same_grid(grid, f);
  return Field(f.grid(), grid.diff(order).apply(f.values()));
}

double integrate(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw StructuralError("quadrature length mismatch");
  return kernels::dot(grid.weights(), values);
}

double integrate(const Grid& grid, const Field& f) {
  require_same_grid(grid, f);
  return integrate(grid, f.values());
}

double interpolate(const Grid& grid, std::span<const double> values, double y) {
  if (values.size() != grid.size()) throw StructuralError("interpolation length mismatch");
  if (!(y >= -1.0 && y <= 1.0))
    throw DomainError("interpolation point " + std::to_string(y) + " outside [-1, 1]");
  const auto nodes = grid.nodes();
  for (std::size_t j = 0; j < nodes.size(); ++j)
    if (y == nodes[j]) return values[j];
  return kernels::active().barycentric(nodes.data(), grid.barycentric_weights().data(),
                                       values.data(), nodes.size(), y);
}

double interpolate(const Grid& grid, const Field& f, double y) {
  require_same_grid(grid, f);
  return interpolate(grid, f.values(), y);
}

std::vector<double> dense_sample(const Grid& grid, std::span<const double> values,
                                 std::size_t count) {
  if (values.size() != grid.size()) throw StructuralError("sampling length mismatch");
  if (count == Grid::kDenseCount) return grid.dense_sampler().apply(values);
  std::vector<double> out;
  out.reserve(count + 2);
  const auto& k = kernels::active();
  const auto nodes = grid.nodes();
  for (std::size_t i = 0; i < count; ++i) {
    const double y = dense_point(i, count);
    bool hit = false;
    for (std::size_t j = 0; j < nodes.size() && !hit; ++j)
      if (y == nodes[j]) {
        out.push_back(values[j]);
        hit = true;
      }
    if (!hit)
      out.push_back(k.barycentric(nodes.data(), grid.barycentric_weights().data(), values.data(),
                                  nodes.size(), y));
  }
  out.push_back(values.front());
  out.push_back(values.back());
  return out;
}

std::vector<double> cumulative_integral(const Grid& grid, std::span<const double> values) {
  return grid.cumulative().apply(values);
}

}  // namespace tfe
