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

/**
 * \file irssec/scenario.hpp
 *
 * \brief System configuration, geometry and seeded channel generation.
 *
 * Layout is 2-D: Alice at the origin, IRS at (d_AI, d_v), the Bob cluster
 * centred at (d_AB_h, 0) and the Eve cluster at (d_AE_h, 0). All powers are
 * watts and all gains linear; dB only appears at the I/O boundary.
 */

#ifndef IRSSEC_SCENARIO_HPP
#define IRSSEC_SCENARIO_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace irssec {

struct SystemConfig {
  int M = 4;
  int N = 16;
  int K = 2;
  std::vector<int> group_sizes{1, 1};
  int L = 1;
  double sigma2 = 1e-12;  // watts (-90 dBm)
  double gamma_s = 1.0;   // bits/s/Hz
  double beta = 1.0;

  int total_users() const;
  /// Flat index of user j in group k (groups are laid out in order).
  int user_index(int k, int j) const;
  void validate() const;  // throws std::invalid_argument
};

struct Geometry {
  double d_AI = 70.0;
  double d_AB_h = 70.0;
  double d_AE_h = 60.0;
  double d_v = 5.0;
  double r_B = 5.0;
  double r_E = 2.5;
  double alpha_AI = 2.2;
  double alpha_IU = 2.5;
  double alpha_AU = 3.5;
  double PL0_db = -30.0;
  double d0 = 1.0;

  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

struct Positions {
  Point alice;
  Point irs;
  std::vector<Point> bobs;  // flat user order, see SystemConfig::user_index
  std::vector<Point> eves;
};

/// Raw channels. Vectors are stored as the column h with the received
/// signal being h^H x.
struct ChannelSet {
  Eigen::MatrixXcd G;                              // N x M
  std::vector<std::vector<Eigen::VectorXcd>> h_ab;  // [k][j], length M
  std::vector<std::vector<Eigen::VectorXcd>> h_ib;  // [k][j], length N
  std::vector<Eigen::VectorXcd> h_ae;               // [l], length M
  std::vector<Eigen::VectorXcd> h_ie;               // [l], length N

  int M() const { return static_cast<int>(h_ae.empty() ? G.cols() : h_ae.front().size()); }
  int N() const { return static_cast<int>(G.rows()); }
  int K() const { return static_cast<int>(h_ab.size()); }
  int L() const { return static_cast<int>(h_ae.size()); }
};

struct Scenario {
  SystemConfig config;
  Geometry geometry;
  std::uint64_t seed = 1;
  ChannelSet channels;
};

double db_to_linear(double db);
double linear_to_db(double x);
double dbm_to_watts(double dbm);
double watts_to_dbm(double w);

/// PL0 - 10 alpha log10(d / d0). Throws std::domain_error for d <= 0.
double path_loss_db(double d, double alpha, const Geometry& geometry);

Positions user_positions(const SystemConfig& config, const Geometry& geometry, std::uint64_t seed);

ChannelSet sample_channels(const SystemConfig& config, const Geometry& geometry,
                           const Positions& positions, std::uint64_t seed);

/// Positions and channels in one go.
Scenario make_scenario(const SystemConfig& config, const Geometry& geometry, std::uint64_t seed);

/// Independent engine per (seed, family, index). Used so that growing N or
/// K keeps the draws of the existing elements and users unchanged.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t family, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);

/// Draw from CN(0, 1).
std::complex<double> cn01(std::mt19937_64& rng);

}  // namespace irssec

#endif  // IRSSEC_SCENARIO_HPP
