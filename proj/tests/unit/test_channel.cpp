#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fcssk/channel.hpp"
#include "fcssk/errors.hpp"
#include "fcssk/sigcore.hpp"

using namespace fcssk;

namespace {

IqBuffer zeros(std::size_t n) {
  IqBuffer b;
  b.fs = 65536.0;
  b.samples.assign(n, Complex{});
  return b;
}

}  // namespace

TEST_CASE("noiseless sentinel leaves the buffer unchanged") {
  const ChirpParams p = derive_params(1024.0, 4.0, 65536.0);
  const IqBuffer ref = reference_chirp(p, 1);
  CHECK(apply_awgn(ref, std::nullopt, 7).samples == ref.samples);
}

TEST_CASE("AWGN at 0 dB has unit total variance and zero mean") {
  const std::size_t n = 1000000;
  const IqBuffer noise = apply_awgn(zeros(n), 0.0, 123);
  Complex mean{};
  double power = 0.0;
  double power_i = 0.0;
  for (const Complex& z : noise.samples) {
    mean += z;
    power += std::norm(z);
    power_i += z.real() * z.real();
  }
  mean /= static_cast<double>(n);
  power /= static_cast<double>(n);
  power_i /= static_cast<double>(n);
  CHECK(std::abs(power - 1.0) < 0.01);
  CHECK(std::abs(power_i - 0.5) < 0.01);
  CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("AWGN variance follows the SNR") {
  const IqBuffer noise = apply_awgn(zeros(200000), 20.0, 5);
  double power = 0.0;
  for (const Complex& z : noise.samples) power += std::norm(z);
  power /= static_cast<double>(noise.size());
  CHECK(power == doctest::Approx(0.01).epsilon(0.02));
}

TEST_CASE("AWGN is deterministic in the seed") {
  const IqBuffer a = apply_awgn(zeros(1000), 3.0, 42);
  const IqBuffer b = apply_awgn(zeros(1000), 3.0, 42);
  const IqBuffer c = apply_awgn(zeros(1000), 3.0, 43);
  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(rng.below(17) < 17);
    const double u = rng.uniform();
    REQUIRE((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("apply_delay") {
  const ChirpParams p = derive_params(1024.0, 4.0, 65536.0);
  const IqBuffer ref = reference_chirp(p, 2);
  CHECK(apply_delay(ref, 0, p.n).samples == ref.samples);
  CHECK_THROWS_AS(apply_delay(ref, ref.size(), p.n), ConfigError);

  const IqBuffer d = apply_delay(ref, 1024, p.n);
  REQUIRE(d.size() == ref.size() + 1024);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    REQUIRE(d.samples[1024 + i] == ref.samples[i]);
  }
  // The prefix continues the chirp: IF climbs to just below b0 and wraps.
  const IfTrack f = instantaneous_frequency(d);
  CHECK(f.values[1022] == doctest::Approx(1024.0 - 0.0625).epsilon(1e-9));
  CHECK(std::abs(f.values[1023]) < 1e-6);
}

TEST_CASE("delayed chirp mixed with the reference beats at b0 tau / n") {
  const ChirpParams p = derive_params(1024.0, 4.0, 65536.0);
  const IqBuffer d = apply_delay(reference_chirp(p, 2), 1024, p.n);
  const IqBuffer ref = reference_samples(p, d.size());
  IqBuffer beat = d;
  for (std::size_t i = 0; i < d.size(); ++i) beat.samples[i] *= std::conj(ref.samples[i]);
  // Beyond the delay the received IF trails the reference by 1024 k0 = 64 Hz.
  const IfTrack f = instantaneous_frequency(beat);
  CHECK(std::abs(f.values[5000]) == doctest::Approx(64.0).epsilon(1e-6));
  CHECK(std::abs(f.values[10000]) == doctest::Approx(64.0).epsilon(1e-6));
}

TEST_CASE("gaussian variates have unit variance per component") {
  Rng rng(77);
  double s = 0.0;
  double s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = rng.gaussian_pair();
    s += a + b;
    s2 += a * a + b * b;
  }
  CHECK(std::abs(s / (2.0 * n)) < 0.01);
  CHECK(s2 / (2.0 * n) == doctest::Approx(1.0).epsilon(0.01));
}
