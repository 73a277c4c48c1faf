#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fcssk/errors.hpp"
#include "fcssk/sigcore.hpp"

using namespace fcssk;

TEST_CASE("derive_params computes the standard operating point") {
  const ChirpParams p = derive_params(1024.0, 4.0, 65536.0);
  CHECK(p.n == 16384);
  CHECK(p.k0 == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(p.t0 == doctest::Approx(0.25));
  CHECK(p.k0 * static_cast<double>(p.n) == doctest::Approx(p.b0).epsilon(1e-15));
}

TEST_CASE("derive_params at the lower bandwidth limit") {
  const ChirpParams p = derive_params(700.0, 2.0, 44800.0);
  CHECK(p.n == 22400);
  CHECK(p.k0 == doctest::Approx(0.03125).epsilon(1e-15));
}

TEST_CASE("derive_params rejects invalid configurations") {
  CHECK_THROWS_AS(derive_params(1024.0, 4.0, 65537.0), ConfigError);
  CHECK_THROWS_AS(derive_params(40000.0, 4.0, 65536.0), AliasingError);
  CHECK_THROWS_AS(derive_params(0.0, 4.0, 65536.0), ConfigError);
  CHECK_THROWS_AS(derive_params(1024.0, -1.0, 65536.0), ConfigError);
  CHECK_NOTHROW(derive_params(1024.0, 8.0, 65536.0));
  CHECK_THROWS_AS(derive_params(1024.0, 8.0, 65536.0, true), ConfigError);
  CHECK_THROWS_AS(derive_params(512.0, 4.0, 65536.0, true), ConfigError);
  CHECK_NOTHROW(derive_params(1024.0, 4.0, 65536.0, true));
}

TEST_CASE("reference_chirp shape") {
  const ChirpParams p = derive_params(1024.0, 4.0, 65536.0);
  const IqBuffer one = reference_chirp(p, 1);
  REQUIRE(one.size() == 16384);
  CHECK(one.samples[0].real() == 1.0);
  CHECK(one.samples[0].imag() == 0.0);
  for (const Complex& z : one.samples) {
    REQUIRE(std::abs(z) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const IfTrack f = instantaneous_frequency(reference_chirp(p, 2));
  // values[i] is the IF of sample i + 1.
  CHECK(f.values[8191] == doctest::Approx(512.0).epsilon(1e-9));
  CHECK(std::abs(f.values[16383]) < 1e-6);
  CHECK(f.values[16382] == doctest::Approx(1024.0 - 0.0625).epsilon(1e-9));

  CHECK_THROWS_AS(reference_chirp(p, 0), ConfigError);
}

TEST_CASE("reference_chirp IF is a monotone ramp of slope k0 per sample within a period") {
  const ChirpParams p = derive_params(1024.0, 4.0, 65536.0);
  const IfTrack f = instantaneous_frequency(reference_chirp(p, 1));
  double sum_inc = f.values[0];  // IF of sample 0 is zero
  for (std::size_t i = 1; i < f.size(); ++i) {
    const double inc = f.values[i] - f.values[i - 1];
    REQUIRE(inc >= 0.0);
    REQUIRE(inc == doctest::Approx(p.k0).epsilon(1e-6));
    sum_inc += inc;
  }
  // The final increment back to zero closes the sweep over b0.
  sum_inc += p.k0;
  CHECK(sum_inc == doctest::Approx(p.b0).epsilon(1e-9));
}

TEST_CASE("reference_chirp is deterministic") {
  const ChirpParams p = derive_params(700.0, 2.0, 44800.0);
  const IqBuffer a = reference_chirp(p, 2);
  const IqBuffer b = reference_chirp(p, 2);
  CHECK(a.samples == b.samples);
}

TEST_CASE("instantaneous_frequency of a constant tone") {
  IqBuffer tone;
  tone.fs = 65536.0;
  for (int i = 0; i < 4096; ++i) {
    tone.samples.push_back(std::polar(1.0, 2.0 * std::numbers::pi * 100.0 * i / tone.fs));
  }
  const IfTrack f = instantaneous_frequency(tone);
  REQUIRE(f.size() == 4095);
  for (double v : f.values) {
    REQUIRE(v == doctest::Approx(100.0).epsilon(1e-8));
  }
}

TEST_CASE("instantaneous_frequency rejects degenerate input") {
  IqBuffer b;
  b.fs = 1.0;
  b.samples = {Complex{1.0, 0.0}};
  CHECK_THROWS_AS(instantaneous_frequency(b), SignalError);
  b.samples = {Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  CHECK_THROWS_AS(instantaneous_frequency(b), SignalError);
}
