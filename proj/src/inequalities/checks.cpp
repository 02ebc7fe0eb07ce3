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
#include <cstdio>

#include "terms.hpp"
#include "tfe/kernels.hpp"

namespace tfe::inequalities {

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

double poincare_constant(double p, double q) {
  return std::pow(kIntervalLength, inv(q) - inv(p) + 1.0);
}

double constant_for(std::string_view name) {
  auto c = calibrated_constant(name);
  if (!c) throw ConsistencyError("no calibrated constant for " + std::string(name));
  return *c;
}

// sup over dense interior points and interior nodes of |f(y)| * weight(y);
// weight vanishes at the endpoints.
template <class Weight>
double weighted_sup(const Grid& grid, std::span<const double> f, Weight weight) {
  const auto dense = dense_sample(grid, f);
  double m = 0.0;
  for (std::size_t i = 0; i < Grid::kDenseCount; ++i) {
    m = std::max(m, std::abs(dense[i]) * weight(dense_point(i, Grid::kDenseCount)));
  }
  const auto y = grid.nodes();
  for (std::size_t j = 1; j + 1 < y.size(); ++j) m = std::max(m, std::abs(f[j]) * weight(y[j]));
  return m;
}

}  // namespace

namespace detail {

std::string label(std::string_view base,
                  std::initializer_list<std::pair<const char*, double>> args) {
  std::string out(base);
  out += '(';
  bool first = true;
  for (const auto& [k, v] : args) {
    if (!first) out += ',';
    first = false;
    out += k;
    out += '=';
    if (std::isinf(v)) {
      out += "inf";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", v);
      out += buf;
    }
  }
  out += ')';
  return out;
}

std::vector<Term> lemma310_terms(const model::PerturbationField& g) {
  const Grid& grid = g.grid();
  const auto j = model::jet(g);
  const double E = model::energy(g);
  const double D = model::dissipation(g);
  if (D == 0.0 && E > 0.0) throw ConsistencyError("estimate suite: D = 0 with E > 0");

  std::vector<Term> t;
  t.push_back({"sup_by_energy", lp_norm(grid, j.g, kInf), std::sqrt(E)});
  t.push_back({"energy_by_dissipation", E, D});
  for (double p : {2.0, 4.0, 6.0, kInf}) {
    const double ip = inv(p);
    t.push_back({label("slope", {{"p", p}}), lp_norm(grid, j.d1, p),
                 std::pow(E, 0.25 + 0.5 * ip) * std::pow(D, 0.25 - 0.5 * ip)});
  }
  {
    std::vector<double> w(j.d2.size());
    const auto y = grid.nodes();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - y[i] * y[i]) * j.d2[i] * j.d2[i];
    t.push_back({"weighted_curvature", std::sqrt(std::max(0.0, integrate(grid, w))),
                 std::pow(E, 0.25) * std::pow(D, 0.25)});
  }
  const double sd = std::sqrt(D);
  for (double p : {2.0, 4.0, 8.0})
    t.push_back({label("curvature", {{"p", p}}), lp_norm(grid, j.d2, p), sd});
  for (double eps : {0.1, 0.5}) {
    auto w = [eps](double y) { return std::pow(1.0 - y * y, eps); };
    t.push_back({label("weighted_curvature_sup", {{"eps", eps}}),
                 weighted_sup(grid, j.d2, w), sd});
  }
  {
    // |g''(y)| / (1 + |log((1+y)/(1-y))|^{1/2}) on interior points.
    auto w = [](double y) { return 1.0 / (1.0 + std::sqrt(std::abs(std::log((1.0 + y) / (1.0 - y))))); };
    t.push_back({"curvature_log_weight", weighted_sup(grid, j.d2, w), sd});
  }
  return t;
}

Term lemma311_term(const model::PerturbationField& g, int m) {
  if (m < 1) throw ArgumentError("power estimate: m must be a positive integer");
  const Grid& grid = g.grid();
  const auto v = g.values();
  const auto dense = dense_sample(grid, v);
  auto value = [m](double gy, double y) { return std::pow(std::abs(gy), m) / (1.0 - y * y); };
  double sup = 0.0;
  for (std::size_t i = 0; i < Grid::kDenseCount; ++i)
    sup = std::max(sup, value(dense[i], dense_point(i, Grid::kDenseCount)));
  const auto y = grid.nodes();
  for (std::size_t i = 1; i + 1 < y.size(); ++i) sup = std::max(sup, value(v[i], y[i]));
  if (m == 1) {
    // g / (1 - y^2) -> -g'(1)/2 at y = 1 and g'(-1)/2 at y = -1.
    const auto d1 = differentiate(grid, g.field(), 1);
    sup = std::max({sup, 0.5 * std::abs(d1.front()), 0.5 * std::abs(d1.back())});
  }
  const double E = model::energy(g), D = model::dissipation(g);
  return {label("power_over_weight", {{"m", static_cast<double>(m)}}), sup,
          std::pow(E, 0.5 * m - 0.25) * std::pow(D, 0.25)};
}

Term gn_sup_term(const Field& f, double q, double r) {
  const double delta = gn_delta(q, r);
  const double alpha = 1.0 / delta;  // = 1 + q - q/r
  const Grid& grid = *f.grid();
  const auto d1 = differentiate(grid, f, 1);
  const double w1r = lp_norm(f, r) + lp_norm(d1, r);
  const double mono = std::pow(alpha, 1.0 / alpha) * (1.0 + 1.0 / kIntervalLength) *
                      std::pow(w1r, delta) * std::pow(lp_norm(f, q), 1.0 - delta);
  return {label("gn_sup", {{"q", q}, {"r", r}}), lp_norm(f, kInf), mono};
}

}  // namespace detail

InequalityReport make_report(std::string name, double lhs, double monomial, double constant,
                             bool calibrated) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.constant = constant;
  r.rhs = constant * monomial;
  r.margin = r.rhs - r.lhs;
  r.holds = r.margin >= -1e-12 * (1.0 + std::abs(r.rhs));
  r.calibrated = calibrated;
  if (lhs == 0.0)
    r.ratio = 0.0;
  else
    r.ratio = monomial > 0.0 ? lhs / monomial : std::numeric_limits<double>::infinity();
  return r;
}

InequalityReport poincare_check(const Field& f, double p, double q) {
  if (!has_zero(f)) throw PreconditionError("poincare: field has no zero on [-1, 1]");
  const auto d1 = differentiate(*f.grid(), f, 1);
  return make_report(detail::label("poincare", {{"p", p}, {"q", q}}), lp_norm(f, q),
                     lp_norm(d1, p), poincare_constant(p, q), false);
}

InequalityReport wirtinger_check(const Field& f, double p, double q) {
  const double m = mean(f);
  std::vector<double> c(f.values().begin(), f.values().end());
  for (double& v : c) v -= m;
  const auto d1 = differentiate(*f.grid(), f, 1);
  return make_report(detail::label("wirtinger", {{"p", p}, {"q", q}}),
                     lp_norm(*f.grid(), c, q), lp_norm(d1, p), poincare_constant(p, q), false);
}

InequalityReport wirtinger_derivative_check(const Field& f, double p, double q) {
  if (std::abs(f.front()) > 1e-12 || std::abs(f.back()) > 1e-12)
    throw PreconditionError("derivative wirtinger: field must vanish at both endpoints");
  const auto d1 = differentiate(*f.grid(), f, 1);
  const auto d2 = differentiate(*f.grid(), f, 2);
  return make_report(detail::label("wirtinger_derivative", {{"p", p}, {"q", q}}),
                     lp_norm(d1, q), lp_norm(d2, p), poincare_constant(p, q), false);
}

InequalityReport gn_sup_check(const Field& f, double q, double r) {
  const auto t = detail::gn_sup_term(f, q, r);
  return make_report(t.name, t.lhs, t.monomial, constant_for(detail::kGnSupName), true);
}

InequalityReport gn_sup_zero_check(const Field& f, double q, double r) {
  const double delta = gn_delta(q, r);
  if (!has_zero(f)) throw PreconditionError("gn sup: field has no zero on [-1, 1]");
  const auto d1 = differentiate(*f.grid(), f, 1);
  const double mono = std::pow(lp_norm(d1, r), delta) * std::pow(lp_norm(f, q), 1.0 - delta);
  return make_report(detail::label("gn_sup_zero", {{"q", q}, {"r", r}}), lp_norm(f, kInf), mono,
                     std::pow(delta, -delta), false);
}

InequalityReport gn_interp_check(const Field& f, double p, double q, double r) {
  const double theta = gn_theta(p, q, r);
  if (std::abs(f.front()) > 1e-12 || std::abs(f.back()) > 1e-12)
    throw PreconditionError("gn interpolation: field must vanish at both endpoints");
  const double delta = gn_delta(q, r);
  const double constant = std::pow(std::pow(delta, -delta), 1.0 - q * inv(p));
  const Grid& grid = *f.grid();
  const auto d1 = differentiate(grid, f, 1);
  const auto d2 = differentiate(grid, f, 2);
  const double mono = std::pow(lp_norm(d2, r), theta) * std::pow(lp_norm(d1, q), 1.0 - theta);
  return make_report(detail::label("gn_interp", {{"p", p}, {"q", q}, {"r", r}}), lp_norm(d1, p),
                     mono, constant, false);
}

std::vector<InequalityReport> lemma310_suite(const model::PerturbationField& g) {
  std::vector<InequalityReport> out;
  for (auto& t : detail::lemma310_terms(g))
    out.push_back(make_report(t.name, t.lhs, t.monomial, constant_for(t.name), true));
  return out;
}

InequalityReport lemma311_check(const model::PerturbationField& g, int m) {
  auto t = detail::lemma311_term(g, m);
  return make_report(t.name, t.lhs, t.monomial, constant_for(t.name), true);
}

}  // namespace tfe::inequalities
