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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irssec/scenario.hpp"

using namespace irssec;

TEST_CASE("path loss at reference points") {
  const Geometry g;
  CHECK(path_loss_db(1.0, 2.2, g) == doctest::Approx(-30.0).epsilon(1e-12));
  CHECK(path_loss_db(10.0, 3.5, g) == doctest::Approx(-65.0).epsilon(1e-12));
  CHECK(path_loss_db(70.0, 2.2, g) == doctest::Approx(-30.0 - 22.0 * std::log10(70.0)).epsilon(1e-12));
  // -30 - 22 log10(70) = -70.59216
  CHECK(std::abs(path_loss_db(70.0, 2.2, g) + 70.59216) < 1e-5);
  CHECK_THROWS_AS(path_loss_db(0.0, 2.2, g), std::domain_error);
  CHECK_THROWS_AS(path_loss_db(-1.0, 2.2, g), std::domain_error);
}

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12).epsilon(1e-12));
  CHECK(watts_to_dbm(1e-3) == doctest::Approx(0.0));
  CHECK(db_to_linear(linear_to_db(0.37)) == doctest::Approx(0.37));
}

TEST_CASE("config and geometry validation") {
  SystemConfig c;
  CHECK_NOTHROW(c.validate());
  c.group_sizes = {1};
  CHECK_THROWS(c.validate());
  c = SystemConfig{};
  c.beta = 1.5;
  CHECK_THROWS(c.validate());
  c = SystemConfig{};
  c.sigma2 = 0;
  CHECK_THROWS(c.validate());
  c = SystemConfig{};
  c.N = 0;
  CHECK_NOTHROW(c.validate());
  Geometry g;
  g.d_AI = -1;
  CHECK_THROWS(g.validate());
  g = Geometry{};
  g.alpha_IU = 0;
  CHECK_THROWS(g.validate());
}

TEST_CASE("positions: degenerate disk and determinism") {
  SystemConfig c;
  Geometry g;
  g.r_B = 0;
  const auto p = user_positions(c, g, 9);
  for (const auto& b : p.bobs) {
    CHECK(b.x == g.d_AB_h);
    CHECK(b.y == 0.0);
  }
  CHECK(p.irs.x == g.d_AI);
  CHECK(p.irs.y == g.d_v);
  g = Geometry{};
  const auto a = user_positions(c, g, 17), b = user_positions(c, g, 17);
  for (std::size_t i = 0; i < a.bobs.size(); ++i) {
    CHECK(a.bobs[i].x == b.bobs[i].x);
    CHECK(a.bobs[i].y == b.bobs[i].y);
  }
  CHECK(a.eves[0].x == b.eves[0].x);
}

TEST_CASE("positions: uniform disk moments") {
  // For a uniform disk of radius R the mean distance to the centre is 2R/3.
  SystemConfig c;
  c.K = 1;
  c.group_sizes = {10000};
  c.L = 10000;
  Geometry g;
  const auto p = user_positions(c, g, 5);
  const Point cb{g.d_AB_h, 0.0}, ce{g.d_AE_h, 0.0};
  double sb = 0, se = 0, mb = 0, me = 0;
  for (const auto& b : p.bobs) {
    sb += distance(b, cb);
    mb = std::max(mb, distance(b, cb));
  }
  for (const auto& e : p.eves) {
    se += distance(e, ce);
    me = std::max(me, distance(e, ce));
  }
  CHECK(mb <= g.r_B);
  CHECK(me <= g.r_E);
  CHECK(sb / 1e4 == doctest::Approx(2.0 / 3.0 * g.r_B).epsilon(0.02));
  CHECK(se / 1e4 == doctest::Approx(2.0 / 3.0 * g.r_E).epsilon(0.02));
}

TEST_CASE("channels: dimensions") {
  SystemConfig c;
  c.M = 3;
  c.N = 5;
  c.K = 2;
  c.group_sizes = {2, 1};
  c.L = 2;
  const auto s = make_scenario(c, Geometry{}, 1);
  CHECK(s.channels.G.rows() == 5);
  CHECK(s.channels.G.cols() == 3);
  CHECK(s.channels.K() == 2);
  CHECK(s.channels.h_ab[0].size() == 2);
  CHECK(s.channels.h_ab[1].size() == 1);
  CHECK(s.channels.h_ab[0][1].size() == 3);
  CHECK(s.channels.h_ib[1][0].size() == 5);
  CHECK(s.channels.L() == 2);
  CHECK(s.channels.h_ae[1].size() == 3);
  CHECK(s.channels.h_ie[1].size() == 5);
  CHECK(s.channels.G.allFinite());

  c.N = 0;
  const auto z = make_scenario(c, Geometry{}, 1);
  CHECK(z.channels.G.size() == 0);
  CHECK(z.channels.h_ib[0][0].size() == 0);
  CHECK(z.channels.h_ie[0].size() == 0);
  CHECK(z.channels.h_ab[0][0].size() == 3);
  CHECK(z.channels.h_ab[0][0].norm() > 0);
}

TEST_CASE("channels: same seed, same draws") {
  const SystemConfig c;
  const auto a = make_scenario(c, Geometry{}, 99), b = make_scenario(c, Geometry{}, 99);
  CHECK(a.channels.G == b.channels.G);
  CHECK(a.channels.h_ab[1][0] == b.channels.h_ab[1][0]);
  CHECK(a.channels.h_ie[0] == b.channels.h_ie[0]);
  const auto d = make_scenario(c, Geometry{}, 100);
  CHECK(a.channels.G != d.channels.G);
}

TEST_CASE("channels: growing N keeps existing draws") {
  SystemConfig c;
  c.N = 8;
  const auto a = make_scenario(c, Geometry{}, 4);
  c.N = 16;
  const auto b = make_scenario(c, Geometry{}, 4);
  CHECK(b.channels.G.topRows(8) == a.channels.G);
  CHECK(b.channels.h_ab[0][0] == a.channels.h_ab[0][0]);
  CHECK(b.channels.h_ib[0][0].head(8) == a.channels.h_ib[0][0]);
}

TEST_CASE("channels: entry variance matches linear path loss") {
  SystemConfig c;
  c.M = 1;
  c.N = 0;
  c.K = 1;
  c.group_sizes = {1};
  c.L = 1;
  Geometry g;
  g.d_AB_h = 70.18;
  g.r_B = 0;
  const auto pos = user_positions(c, g, 1);
  double acc = 0, mean_re = 0;
  const int n = 100000;
  for (int s = 0; s < n; ++s) {
    const auto ch = sample_channels(c, g, pos, static_cast<std::uint64_t>(s) + 1);
    const auto z = ch.h_ab[0][0](0);
    acc += std::norm(z);
    mean_re += z.real();
  }
  const double pl = db_to_linear(path_loss_db(70.18, g.alpha_AU, g));
  CHECK(acc / n == doctest::Approx(pl).epsilon(0.03));
  CHECK(std::abs(mean_re / n) < 0.02 * std::sqrt(pl));
}

TEST_CASE("cn01 is circular with unit variance") {
  auto rng = stream(7, 1, 0);
  double re2 = 0, im2 = 0, reim = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto z = cn01(rng);
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    reim += z.real() * z.imag();
  }
  CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(reim / n) < 0.01);
}
