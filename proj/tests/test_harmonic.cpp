// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "harmgate/harmonic.hpp"
#include "harmgate/matrix_io.hpp"
#include "oracles.hpp"

using namespace harmgate;

namespace {

bool bitwise_equal(const MatF& m, const std::vector<float>& flat) {
  if (static_cast<std::size_t>(m.size()) != flat.size()) return false;
  return std::memcmp(m.data(), flat.data(), flat.size() * sizeof(float)) == 0;
}

}  // namespace

TEST_CASE("integral matrix matches the straight-line reference bit for bit") {
  for (const auto& [F, bin_hz] : {std::pair<int, double>{129, 62.5}, {257, 31.25}}) {
    const auto U = build_integral_matrix(F, bin_hz);
    REQUIRE(U.values.rows() == kCandidates);
    REQUIRE(U.values.cols() == F);
    CHECK(U.bin_hz == bin_hz);
    const auto ref = oracles::integral_matrix(F, bin_hz);
    CHECK(bitwise_equal(U.values, ref));
  }
}

TEST_CASE("integral matrix is deterministic") {
  const auto a = build_integral_matrix(257, 31.25);
  const auto b = build_integral_matrix(257, 31.25);
  CHECK(std::memcmp(a.values.data(), b.values.data(), sizeof(float) * a.values.size()) == 0);
}

TEST_CASE("integral matrix pinned values") {
  const auto U = build_integral_matrix(257, 31.25);
  // 60.0 Hz fundamental: first peak at round(60/31.25) = bin 2, height 1.
  CHECK(U.values(0, 2) == 1.0f);
  // Wide-spaced rows keep 1/sqrt(k) at the k-th harmonic bin.
  for (int j : {1400, 3599}) {
    const double f0 = candidate_hz(j);
    for (int k = 1; k <= 3; ++k) {
      const int loc = static_cast<int>(std::llround(f0 * k / 31.25));
      REQUIRE(loc < 257);
      CHECK(U.values(j, loc) == doctest::Approx(1.0 / std::sqrt(k)).epsilon(1e-6));
    }
  }
  CHECK(U.values.array().isFinite().all());
  CHECK(U.values.maxCoeff() <= 1.0f);
  CHECK(U.values.minCoeff() >= -1.0f);
}

TEST_CASE("integral matrix validation") {
  CHECK_THROWS_AS(build_integral_matrix(1, 31.25), UsageError);
  CHECK_THROWS_AS(build_integral_matrix(257, 0.0), UsageError);
  CHECK_THROWS_AS(build_integral_matrix(257, -1.0), UsageError);
}

TEST_CASE("significance") {
  const auto U = build_integral_matrix(257, 31.25);

  SUBCASE("zero magnitude gives zero significance") {
    const MatD mag = MatD::Zero(3, 257);
    const MatF Q = significance(mag, U);
    CHECK(Q.rows() == 3);
    CHECK(Q.cols() == kCandidates);
    CHECK(Q.cwiseAbs().maxCoeff() == 0.0f);
  }
  SUBCASE("matches the naive triple loop") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const int T = 5, F = 257;
    MatD mag = MatD::NullaryExpr(T, F, [&]() { return dist(rng); });
    const MatF Q = significance(mag, U);
    std::vector<double> flat(mag.data(), mag.data() + mag.size());
    std::vector<float> Uflat(U.values.data(), U.values.data() + U.values.size());
    const auto ref = oracles::significance_naive(flat, T, F, Uflat);
    double worst = 0.0;
    for (int t = 0; t < T; ++t)
      for (int j = 0; j < kCandidates; ++j)
        worst = std::max(worst,
                         std::abs(static_cast<double>(Q(t, j)) - ref[t * kCandidates + j]));
    CHECK(worst < 1e-3);
  }
  SUBCASE("homogeneity: scaling magnitude by c scales Q by sqrt(c)") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    MatD mag = MatD::NullaryExpr(4, 257, [&]() { return dist(rng); });
    const MatF q1 = significance(mag, U);
    const MatF q4 = significance(MatD(4.0 * mag), U);
    CHECK((q4 - 2.0f * q1).cwiseAbs().maxCoeff() < 1e-4f);
  }
  SUBCASE("a harmonic comb scores its own fundamental highest") {
    MatD mag = MatD::Zero(1, 257);
    for (int k = 1; k <= 39; ++k) {
      const int loc = static_cast<int>(std::llround(200.0 * k / 31.25));
      if (loc >= 257) break;
      mag(0, loc) = 1.0;
    }
    const MatF Q = significance(mag, U);
    Eigen::Index best = 0;
    Q.row(0).maxCoeff(&best);
    CHECK(std::abs(static_cast<double>(best) - 1400.0) <= 10.0);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(significance(MatD::Zero(3, 100), U), UsageError);
    MatD neg = MatD::Zero(1, 257);
    neg(0, 5) = -0.25;
    CHECK_THROWS_AS(significance(neg, U), NumericError);
  }
}

TEST_CASE("pitch selection") {
  SUBCASE("ties break toward the lowest candidate") {
    const MatF Q = MatF::Ones(2, kCandidates);
    const auto track = select_pitch(Q);
    REQUIRE(track.frames() == 2);
    CHECK(track.candidate[0] == 0);
    CHECK(track.candidate[1] == 0);
    CHECK(track.pitch_hz[0] == 60.0);
    CHECK(track.significance[0] == 1.0);
  }
  SUBCASE("one-hot row picks its candidate") {
    MatF Q = MatF::Zero(1, kCandidates);
    Q(0, 1400) = 3.5f;
    const auto track = select_pitch(Q);
    CHECK(track.candidate[0] == 1400);
    CHECK(track.pitch_hz[0] == 200.0);
    CHECK(track.significance[0] == doctest::Approx(3.5).epsilon(1e-7));
  }
  SUBCASE("positive rescaling does not change the argmax") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    MatF Q = MatF::NullaryExpr(6, kCandidates, [&]() { return dist(rng); });
    const auto a = select_pitch(Q);
    const auto b = select_pitch(MatF(2.0f * Q));
    CHECK(a.candidate == b.candidate);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(select_pitch(MatF::Zero(2, 100)), UsageError);
  }
  CHECK(candidate_hz(0) == 60.0);
  CHECK(candidate_hz(1400) == 200.0);
  CHECK(candidate_hz(3599) == 419.9);
}

TEST_CASE("unvoiced masking keeps significance but clears the pitch") {
  MatF Q = MatF::Zero(3, kCandidates);
  Q(0, 100) = 1.0f;
  Q(1, 200) = 2.0f;
  Q(2, 300) = 3.0f;
  const auto track = select_pitch(Q);
  VecD flags(3);
  flags << 1.0, 0.0, 1.0;
  const auto masked = mask_unvoiced(track, flags);
  CHECK(masked.candidate[0] == 100);
  CHECK(masked.candidate[1] == -1);
  CHECK(masked.candidate[2] == 300);
  CHECK(masked.pitch_hz[1] == 0.0);
  CHECK(masked.significance[1] == doctest::Approx(2.0));  // kept for inspection
  VecD wrong(2);
  wrong << 1.0, 1.0;
  CHECK_THROWS_AS(mask_unvoiced(track, wrong), UsageError);
}

TEST_CASE("binary harmonic template") {
  PitchTrack track;
  track.candidate = {1400, -1, 3599, 0};
  track.pitch_hz = {200.0, 0.0, 419.9, 60.0};
  track.significance = {1.0, 0.0, 1.0, 1.0};
  const MatD R = harmonic_template(track, 257, 31.25);
  REQUIRE(R.rows() == 4);
  REQUIRE(R.cols() == 257);

  // Independent reconstruction of each voiced row.
  for (int row : {0, 2, 3}) {
    std::set<int> expected;
    const double f0 = track.pitch_hz[row];
    const int kmax = static_cast<int>(std::llround(8000.0 / f0));
    for (int k = 1; k <= kmax; ++k) {
      const int loc = static_cast<int>(std::llround(f0 * k / 31.25));
      if (loc >= 257) break;
      expected.insert(loc);
    }
    int ones = 0;
    for (int f = 0; f < 257; ++f) {
      CHECK((R(row, f) == 0.0 || R(row, f) == 1.0));
      if (R(row, f) == 1.0) {
        ++ones;
        CHECK(expected.count(f) == 1);
      }
    }
    CHECK(ones == static_cast<int>(expected.size()));
  }
  // 419.9 Hz: 19 harmonics up to 8 kHz, all below bin 257 -> 19 ones.
  CHECK(R.row(2).sum() == 19.0);
  // 60 Hz: 133 harmonics, distinct bins.
  CHECK(R.row(3).sum() == 133.0);
  // Unvoiced row is all zero.
  CHECK(R.row(1).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(harmonic_template(track, 1, 31.25), UsageError);
  CHECK_THROWS_AS(harmonic_template(track, 257, 0.0), UsageError);
}

TEST_CASE("raw template rows come from the integral matrix") {
  const auto U = build_integral_matrix(257, 31.25);
  PitchTrack track;
  track.candidate = {1400, -1};
  track.pitch_hz = {200.0, 0.0};
  track.significance = {1.0, 0.0};
  const MatD R = harmonic_template_raw(track, U);
  REQUIRE(R.rows() == 2);
  for (int f = 0; f < 257; ++f)
    CHECK(R(0, f) == static_cast<double>(U.values(1400, f)));
  CHECK(R.row(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix file round trip is bitwise") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  MatF m = MatF::NullaryExpr(40, 17, [&]() { return dist(rng); });
  const std::string path = "roundtrip_test.hgm";
  write_matrix(path, m);
  const MatF back = read_matrix(path);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  CHECK(std::memcmp(m.data(), back.data(), sizeof(float) * m.size()) == 0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_matrix("does_not_exist.hgm"), FormatError);
}
