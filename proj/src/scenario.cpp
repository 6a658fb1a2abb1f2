/*
 * Copyright 2026 The irssec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "irssec/scenario.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace irssec {

namespace {

// Stream families. New families go at the end so old seeds stay valid.
enum Family : std::uint64_t {
  kBobPos = 1,
  kEvePos = 2,
  kG = 3,
  kHab = 4,
  kHib = 5,
  kHae = 6,
  kHie = 7,
};

Point disk_point(std::mt19937_64& rng, const Point& centre, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double phi = 2.0 * std::numbers::pi * u(rng);
  return {centre.x + r * std::cos(phi), centre.y + r * std::sin(phi)};
}

Eigen::VectorXcd draw_vector(std::uint64_t seed, std::uint64_t family, std::uint64_t index,
                             int n, double gain) {
  auto rng = stream(seed, family, index);
  Eigen::VectorXcd v(n);
  const double s = std::sqrt(gain);
  for (int i = 0; i < n; ++i) v(i) = s * cn01(rng);
  return v;
}

}  // namespace

int SystemConfig::total_users() const {
  return std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
}

int SystemConfig::user_index(int k, int j) const {
  int idx = 0;
  for (int g = 0; g < k; ++g) idx += group_sizes[g];
  return idx + j;
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("SystemConfig: " + m); };
  if (M < 1) fail("M must be positive");
  if (N < 0) fail("N must be non-negative");
  if (K < 1) fail("K must be positive");
  if (static_cast<int>(group_sizes.size()) != K) fail("group_sizes must have K entries");
  for (int s : group_sizes)
    if (s < 1) fail("group sizes must be positive");
  if (L < 1) fail("L must be positive");
  if (!(sigma2 > 0.0)) fail("sigma2 must be positive");
  if (!(gamma_s >= 0.0)) fail("gamma_s must be non-negative");
  if (!(beta >= 0.0 && beta <= 1.0)) fail("beta must lie in [0, 1]");
}

void Geometry::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("Geometry: " + m); };
  if (!(d_AI > 0 && d_AB_h > 0 && d_AE_h > 0 && d0 > 0)) fail("distances must be positive");
  if (!(r_B >= 0 && r_E >= 0 && d_v >= 0)) fail("radii and offsets must be non-negative");
  if (!(alpha_AI > 0 && alpha_IU > 0 && alpha_AU > 0)) fail("exponents must be positive");
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1000.0); }

double path_loss_db(double d, double alpha, const Geometry& geometry) {
  if (!(d > 0.0)) throw std::domain_error("path_loss_db: distance must be positive");
  return geometry.PL0_db - 10.0 * alpha * std::log10(d / geometry.d0);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t family, std::uint64_t index) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (family * 0x632be59bd9b4e019ULL));
  s = splitmix64(s ^ (index + 0x8cb92ba72f3d8dd7ULL));
  return std::mt19937_64(s);
}

std::complex<double> cn01(std::mt19937_64& rng) {
  // Box-Muller by hand: std::normal_distribution caches a spare draw,
  // which makes the output depend on call pairing.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng);
  while (a <= 0.0) a = u(rng);
  const double b = u(rng);
  const double r = std::sqrt(-std::log(a));  // |z|^2 ~ Exp(1)
  const double phi = 2.0 * std::numbers::pi * b;
  return {r * std::cos(phi), r * std::sin(phi)};
}

Positions user_positions(const SystemConfig& config, const Geometry& geometry, std::uint64_t seed) {
  config.validate();
  geometry.validate();
  Positions p;
  p.alice = {0.0, 0.0};
  p.irs = {geometry.d_AI, geometry.d_v};
  const Point bob_centre{geometry.d_AB_h, 0.0};
  const Point eve_centre{geometry.d_AE_h, 0.0};
  const int T = config.total_users();
  p.bobs.reserve(T);
  for (int t = 0; t < T; ++t) {
    auto rng = stream(seed, kBobPos, t);
    p.bobs.push_back(disk_point(rng, bob_centre, geometry.r_B));
  }
  for (int l = 0; l < config.L; ++l) {
    auto rng = stream(seed, kEvePos, l);
    p.eves.push_back(disk_point(rng, eve_centre, geometry.r_E));
  }
  return p;
}

ChannelSet sample_channels(const SystemConfig& config, const Geometry& geometry,
                           const Positions& positions, std::uint64_t seed) {
  config.validate();
  geometry.validate();
  const int M = config.M, N = config.N;
  auto gain = [&](const Point& a, const Point& b, double alpha) {
    return db_to_linear(path_loss_db(distance(a, b), alpha, geometry));
  };

  ChannelSet ch;
  // Row n of G is its own stream, so a larger N extends the same surface.
  ch.G.resize(N, M);
  const double g_ai = gain(positions.alice, positions.irs, geometry.alpha_AI);
  for (int n = 0; n < N; ++n) ch.G.row(n) = draw_vector(seed, kG, n, M, g_ai).transpose();

  ch.h_ab.resize(config.K);
  ch.h_ib.resize(config.K);
  for (int k = 0; k < config.K; ++k) {
    for (int j = 0; j < config.group_sizes[k]; ++j) {
      const int t = config.user_index(k, j);
      const Point& b = positions.bobs.at(t);
      ch.h_ab[k].push_back(draw_vector(seed, kHab, t, M, gain(positions.alice, b, geometry.alpha_AU)));
      ch.h_ib[k].push_back(draw_vector(seed, kHib, t, N, gain(positions.irs, b, geometry.alpha_IU)));
    }
  }
  for (int l = 0; l < config.L; ++l) {
    const Point& e = positions.eves.at(l);
    ch.h_ae.push_back(draw_vector(seed, kHae, l, M, gain(positions.alice, e, geometry.alpha_AU)));
    ch.h_ie.push_back(draw_vector(seed, kHie, l, N, gain(positions.irs, e, geometry.alpha_IU)));
  }
  return ch;
}

Scenario make_scenario(const SystemConfig& config, const Geometry& geometry, std::uint64_t seed) {
  Scenario s;
  s.config = config;
  s.geometry = geometry;
  s.seed = seed;
  s.channels = sample_channels(config, geometry, user_positions(config, geometry, seed), seed);
  return s;
}

}  // namespace irssec
