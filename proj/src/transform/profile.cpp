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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tfe/errors.hpp"
#include "tfe/transform.hpp"

namespace tfe::transform {

namespace {

// Shallow: near the contact points the height is pure cancellation and the
// relative tolerance is unattainable, so deep recursion only burns time.
constexpr unsigned kMaxDepth = 6;
constexpr double kQuadTol = 1e-14;

double gk(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, kQuadTol);
}

// Cubic Hermite data on a strictly increasing abscissa.
struct Hermite {
  std::vector<double> x, u, m;

  std::size_t segment(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t k = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    return std::min(k, x.size() - 2);
  }
  double value(double t) const {
    const std::size_t k = segment(t);
    const double h = x[k + 1] - x[k];
    const double s = (t - x[k]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * u[k] + h10 * h * m[k] + h01 * u[k + 1] + h11 * h * m[k + 1];
  }
  double derivative(double t) const {
    const std::size_t k = segment(t);
    const double h = x[k + 1] - x[k];
    const double s = (t - x[k]) / h;
    const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s, d11 = 3 * s * s - 2 * s;
    return (d00 * u[k] + d01 * u[k + 1]) / h + d10 * m[k] + d11 * m[k + 1];
  }
};

// Three-point non-uniform derivative estimates, second order everywhere.
std::vector<double> hermite_slopes(const std::vector<double>& x, const std::vector<double>& u) {
  const std::size_t n = x.size();
  std::vector<double> m(n);
  if (n == 2) {
    m[0] = m[1] = (u[1] - u[0]) / (x[1] - x[0]);
    return m;
  }
  auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t at) {
    const double xa = x[a], xb = x[b], xc = x[c], t = x[at];
    return u[a] * (2 * t - xb - xc) / ((xa - xb) * (xa - xc)) +
           u[b] * (2 * t - xa - xc) / ((xb - xa) * (xb - xc)) +
           u[c] * (2 * t - xa - xb) / ((xc - xa) * (xc - xb));
  };
  m[0] = three_point(0, 1, 2, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) m[i] = three_point(i - 1, i, i + 1, i);
  m[n - 1] = three_point(n - 3, n - 2, n - 1, n - 1);
  return m;
}

}  // namespace

EulerianProfile EulerianProfile::analytic(double lambda_minus, double lambda_plus, Height u,
                                          Height du, std::vector<double> breaks) {
  if (!(lambda_minus < lambda_plus)) throw InvalidProfileError("support must satisfy lambda_- < lambda_+");
  if (!u || !du) throw InvalidProfileError("analytic profile needs height and slope");
  EulerianProfile p;
  p.lambda_minus_ = lambda_minus;
  p.lambda_plus_ = lambda_plus;
  p.u_ = std::make_shared<const Height>(std::move(u));
  p.du_ = std::make_shared<const Height>(std::move(du));
  p.breaks_ = std::move(breaks);
  p.finalize();
  return p;
}

EulerianProfile EulerianProfile::from_samples(std::vector<double> x, std::vector<double> u) {
  if (x.size() != u.size()) throw InvalidProfileError("profile columns differ in length");
  if (x.size() < 3) throw InvalidProfileError("profile needs at least 3 samples");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw InvalidProfileError("profile abscissae must increase strictly");
  for (std::size_t i = 1; i + 1 < u.size(); ++i)
    if (!(u[i] > 0.0)) throw InvalidProfileError("profile height must be positive inside the support");
  auto h = std::make_shared<Hermite>();
  h->m = hermite_slopes(x, u);
  h->x = std::move(x);
  h->u = std::move(u);
  EulerianProfile p;
  p.lambda_minus_ = h->x.front();
  p.lambda_plus_ = h->x.back();
  p.u_ = std::make_shared<const Height>([h](double t) { return h->value(t); });
  p.du_ = std::make_shared<const Height>([h](double t) { return h->derivative(t); });
  p.breaks_.assign(h->x.begin() + 1, h->x.end() - 1);
  p.finalize();
  return p;
}

void EulerianProfile::finalize() {
  std::sort(breaks_.begin(), breaks_.end());
  std::erase_if(breaks_, [&](double b) { return !(b > lambda_minus_ && b < lambda_plus_); });
  mass_ = integrate_piecewise([this](double x) { return height(x); }, lambda_minus_, lambda_plus_);
  center_ = integrate_piecewise([this](double x) { return x * height(x); }, lambda_minus_,
                                lambda_plus_);
}

double EulerianProfile::integrate_piecewise(const std::function<double(double)>& f, double a,
                                            double b) const {
  double s = 0.0;
  double left = a;
  for (double br : breaks_) {
    if (br <= left) continue;
    if (br >= b) break;
    s += gk(f, left, br);
    left = br;
  }
  return s + gk(f, left, b);
}

double EulerianProfile::height(double x) const {
  if (x <= lambda_minus_ || x >= lambda_plus_) return 0.0;
  return (*u_)(x);
}

double EulerianProfile::slope(double x) const {
  const double c = std::clamp(x, lambda_minus_, lambda_plus_);
  return (*du_)(c);
}

double EulerianProfile::mass_left_of(double x) const {
  return integrate_piecewise([this](double t) { return height(t); }, lambda_minus_,
                             std::clamp(x, lambda_minus_, lambda_plus_));
}

double EulerianProfile::mass_right_of(double x) const {
  return integrate_piecewise([this](double t) { return height(t); },
                             std::clamp(x, lambda_minus_, lambda_plus_), lambda_plus_);
}

EulerianProfile normalize_profile(const EulerianProfile& raw) {
  const double M = raw.mass();
  if (!(M > 0.0)) throw InvalidProfileError("profile mass must be positive");
  const double kappa = std::sqrt(M / kSteadyMass);
  // After u -> u(kappa x)/kappa: M' = M / kappa^2, mu' = mu / kappa^3.
  const double shift = raw.center() / (kappa * M);
  auto u = raw.u_;
  auto du = raw.du_;
  EulerianProfile p;
  p.lambda_minus_ = raw.lambda_minus_ / kappa - shift;
  p.lambda_plus_ = raw.lambda_plus_ / kappa - shift;
  p.u_ = std::make_shared<const EulerianProfile::Height>(
      [u, kappa, shift](double x) { return (*u)(kappa * (x + shift)) / kappa; });
  p.du_ = std::make_shared<const EulerianProfile::Height>(
      [du, kappa, shift](double x) { return (*du)(kappa * (x + shift)); });
  for (double b : raw.breaks_) p.breaks_.push_back(b / kappa - shift);
  p.kappa_ = raw.kappa_ * kappa;
  p.shift_ = shift;
  p.finalize();
  return p;
}

EulerianProfile read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile '" + path + "'");
  std::vector<double> x, u;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    if (!(ls >> a)) continue;
    if (!(ls >> b))
      throw IoError("profile '" + path + "' line " + std::to_string(lineno) + ": expected two columns");
    std::string rest;
    if (ls >> rest)
      throw IoError("profile '" + path + "' line " + std::to_string(lineno) + ": trailing data");
    x.push_back(a);
    u.push_back(b);
  }
  if (x.empty()) throw IoError("profile '" + path + "' contains no samples");
  return EulerianProfile::from_samples(std::move(x), std::move(u));
}

}  // namespace tfe::transform
