#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "fcssk/channel.hpp"
#include "fcssk/codec.hpp"
#include "fcssk/errors.hpp"
#include "fcssk/sync.hpp"
#include "fcssk/txmod.hpp"

using namespace fcssk;

namespace {

const ChirpParams kChirp = derive_params(1024.0, 4.0, 65536.0);

IqBuffer delayed_reference(std::size_t tau, std::size_t periods = 2) {
  return apply_delay(reference_chirp(kChirp, periods), tau, kChirp.n);
}

long offset_error(std::size_t tau_hat, std::size_t tau) {
  // Plain distance: an estimate that wraps to the other end of the period
  // misaligns the symbol grid and counts as a miss.
  return std::labs(static_cast<long>(tau_hat) - static_cast<long>(tau));
}

IqBuffer modulated_burst(CodeName code, double rate, std::size_t tau, double snr_db,
                         std::uint64_t seed) {
  const ModParams mp = make_mod_params(kChirp, code, rate);
  const std::size_t p = mp.info_bits_per_symbol();
  const std::size_t symbols = 16 * kChirp.n / mp.symbol_len();
  Rng rng(derive_seed(seed, {1}));
  Bits info(symbols * p);
  for (auto& b : info) b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
  ChannelConfig ch;
  ch.delay = tau;
  ch.snr_db = snr_db;
  ch.seed = derive_seed(seed, {2});
  return apply_channel(modulate(encode(code, info, mp.m), mp), ch, kChirp.n);
}

}  // namespace

TEST_CASE("zero offset is recovered from the DC beat line") {
  const IqBuffer rx = reference_chirp(kChirp, 2);
  CHECK(spectral_timing(rx, kChirp).tau_hat == 0);
  CHECK(estimate_timing(rx, kChirp).tau_hat == 0);
}

TEST_CASE("spectral timing at tau = 1024") {
  const SyncEstimate est = spectral_timing(delayed_reference(1024), kChirp);
  CHECK(est.tau_hat >= 1022);
  CHECK(est.tau_hat <= 1026);
  // One bin is rep_rate = 4 Hz.
  CHECK(std::abs(est.delta_f1 - 64.0) <= 4.0);
  CHECK(std::abs(est.delta_f1 + est.delta_f2 - kChirp.b0) <= 4.0);
  CHECK(est.confidence > 1.0);
}

TEST_CASE("spectral timing resolves the ambiguity beyond half a period") {
  const IqBuffer rx = delayed_reference(12288);
  const SyncEstimate est = spectral_timing(rx, kChirp);
  CHECK(est.tau_hat >= 12286);
  CHECK(est.tau_hat <= 12290);
  CHECK(std::abs(est.delta_f1 + est.delta_f2 - kChirp.b0) <= 4.0);

  // Brute force over both readings of the same beat line: only the true
  // offset turns the received stream back into a single tone.
  auto residual_if_spread = [&](std::size_t cand) {
    const IqBuffer aligned = align(rx, SyncEstimate{cand, 0.0, 0.0, 0.0});
    const IqBuffer ref = reference_samples(kChirp, aligned.size());
    IqBuffer beat = aligned;
    for (std::size_t i = 0; i < beat.size(); ++i) beat.samples[i] *= std::conj(ref.samples[i]);
    const IfTrack f = instantaneous_frequency(beat);
    double lo = f.values[0];
    double hi = f.values[0];
    for (double v : f.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };
  CHECK(residual_if_spread(12288) < 1e-6);
  CHECK(residual_if_spread(4096) > 100.0);
}

TEST_CASE("estimate_timing on noiseless unmodulated offsets") {
  for (std::size_t tau : {1UL, 100UL, 512UL, 1024UL, 5000UL, 8192UL, 12288UL, 15872UL, 16383UL}) {
    CAPTURE(tau);
    const SyncEstimate est = estimate_timing(delayed_reference(tau), kChirp);
    CHECK(offset_error(est.tau_hat, tau) <= 2);
    CHECK(est.tau_hat < kChirp.n);
  }
}

TEST_CASE("estimate_timing on modulated bursts at 20 dB") {
  int good = 0;
  int total = 0;
  for (CodeName code : {CodeName::manchester, CodeName::b6b8}) {
    for (std::uint64_t trial = 0; trial < 6; ++trial) {
      Rng rng(derive_seed(99, {static_cast<std::uint64_t>(code), trial}));
      const std::size_t tau = static_cast<std::size_t>(rng.below(kChirp.n));
      const IqBuffer rx = modulated_burst(code, 128.0, tau, 20.0, trial + 10);
      const SyncEstimate est = estimate_timing(rx, kChirp);
      good += offset_error(est.tau_hat, tau) <= 2 ? 1 : 0;
      ++total;
    }
  }
  CHECK(good == total);
}

TEST_CASE("sync error paths") {
  IqBuffer short_rx = reference_samples(kChirp, kChirp.n - 1);
  CHECK_THROWS_AS(estimate_timing(short_rx, kChirp), ConfigError);

  IqBuffer noise;
  noise.fs = kChirp.fs;
  noise.samples.assign(2 * kChirp.n, Complex{});
  noise = apply_awgn(noise, 0.0, 3);
  CHECK_THROWS_AS(estimate_timing(noise, kChirp), SyncFailure);
  CHECK_THROWS_AS(spectral_timing(noise, kChirp), SyncFailure);
}

TEST_CASE("align drops the estimated offset") {
  const IqBuffer rx = delayed_reference(1024);
  CHECK(align(rx, SyncEstimate{}).samples == rx.samples);
  const IqBuffer a = align(rx, SyncEstimate{1024, 0.0, 0.0, 0.0});
  REQUIRE(a.size() == rx.size() - 1024);
  const IqBuffer ref = reference_chirp(kChirp, 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a.samples[i] == ref.samples[i]);
  }
  CHECK(align(rx, SyncEstimate{rx.size(), 0.0, 0.0, 0.0}).empty());
}
