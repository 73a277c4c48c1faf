#include <doctest.h>

#include <random>

#include "fcssk/codec.hpp"
#include "fcssk/detect.hpp"
#include "fcssk/errors.hpp"
#include "fcssk/simulate.hpp"
#include "fcssk/txmod.hpp"

using namespace fcssk;

namespace {

const ChirpParams kChirp = derive_params(1024.0, 4.0, 65536.0);

Bits random_bits(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(gen() & 1U);
  return b;
}

Bits info_of(std::size_t v) {
  Bits b(6);
  for (int i = 0; i < 6; ++i) b[i] = static_cast<std::uint8_t>((v >> (5 - i)) & 1U);
  return b;
}

}  // namespace

TEST_CASE("Manchester matched filter on noiseless triangles") {
  const ModParams mp = make_mod_params(kChirp, CodeName::manchester, 128.0);
  const IfTrack up = ideal_deviation_track(encode(mp.code, Bits{1}, mp.m), mp);
  const Decision d1 = detect_manchester(up, mp);
  REQUIRE(d1.bits == Bits{1});
  CHECK(d1.metrics[0] > 0.99);
  CHECK(d1.metrics[0] == doctest::Approx(1.0));

  const IfTrack down = ideal_deviation_track(encode(mp.code, Bits{0}, mp.m), mp);
  const Decision d0 = detect_manchester(down, mp);
  CHECK(d0.bits == Bits{0});
  CHECK(d0.metrics[0] == doctest::Approx(-1.0));

  // A zero track is a tie and decides 0.
  IfTrack zero = up;
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  CHECK(detect_manchester(zero, mp).bits == Bits{0});
}

TEST_CASE("Manchester detection inverts the ideal track for all short words") {
  for (double rate : {128.0, 256.0, 512.0}) {
    const ModParams mp = make_mod_params(kChirp, CodeName::manchester, rate);
    for (std::size_t len = 0; len <= 64; len += 7) {
      const Bits u = random_bits(len, static_cast<unsigned>(len + 1));
      const IfTrack t = ideal_deviation_track(encode(mp.code, u, mp.m), mp);
      REQUIRE(detect_manchester(t, mp).bits == u);
    }
  }
}

TEST_CASE("partial trailing symbols are dropped and counted") {
  const ModParams mp = make_mod_params(kChirp, CodeName::manchester, 128.0);
  IfTrack t = ideal_deviation_track(encode(mp.code, Bits{1, 0}, mp.m), mp);
  t.values.resize(t.size() + 100, 0.0);
  const Decision d = detect_manchester(t, mp);
  CHECK(d.bits == Bits{1, 0});
  CHECK(d.dropped_samples == 100);

  const ModParams b68 = make_mod_params(kChirp, CodeName::b6b8, 128.0);
  IfTrack c = ideal_deviation_track(encode(b68.code, info_of(9), b68.m), b68);
  c.values.resize(c.size() + b68.symbol_len() - 1, 0.0);
  const Decision e = detect_6b8b(c, b68, code_spec(CodeName::b6b8));
  CHECK(e.bits == info_of(9));
  CHECK(e.dropped_samples == b68.symbol_len() - 1);
}

TEST_CASE("6b8b template bank is the image of the ideal deviation track") {
  const ModParams mp = make_mod_params(kChirp, CodeName::b6b8, 256.0);
  const CodeSpec& spec = code_spec(CodeName::b6b8);
  const TemplateBank bank(mp, spec);
  REQUIRE(bank.size() == 64);
  CHECK(bank.symbol_len() == 6 * mp.m);
  for (std::size_t k = 0; k < 64; ++k) {
    const IfTrack t = ideal_deviation_track(encode(mp.code, info_of(k), mp.m), mp);
    REQUIRE(t.size() == bank.symbol_len());
    double e = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) e += bank.unit(k)[i] * bank.unit(k)[i];
    REQUIRE(e == doctest::Approx(1.0));
    for (std::size_t i = 0; i < t.size(); ++i) {
      REQUIRE(bank.unit(k)[i] * bank.norm(k) == doctest::Approx(t.values[i]));
    }
  }
}

TEST_CASE("6b8b detector recovers every noiseless codeword") {
  for (double rate : {128.0, 512.0}) {
    const ModParams mp = make_mod_params(kChirp, CodeName::b6b8, rate);
    Bits all;
    for (std::size_t k = 0; k < 64; ++k) {
      const Bits b = info_of(k);
      all.insert(all.end(), b.begin(), b.end());
    }
    const IfTrack t = ideal_deviation_track(encode(mp.code, all, mp.m), mp);
    const Decision d = detect(t, mp);
    CHECK(d.bits == all);
    CHECK(d.metrics.size() == 64);
  }
}

TEST_CASE("6b8b erased track ties to codebook index 0") {
  const ModParams mp = make_mod_params(kChirp, CodeName::b6b8, 128.0);
  IfTrack t;
  t.fs = kChirp.fs;
  t.values.assign(2 * mp.symbol_len(), 0.0);
  const Decision d = detect_6b8b(t, mp, code_spec(CodeName::b6b8));
  CHECK(d.bits == Bits(12, 0));
}

TEST_CASE("decisions are invariant to positive scaling of the track") {
  for (CodeName code : {CodeName::manchester, CodeName::b6b8}) {
    const ModParams mp = make_mod_params(kChirp, code, 256.0);
    const Bits u = random_bits(60, 5);
    IfTrack t = ideal_deviation_track(encode(code, u, mp.m), mp);
    std::mt19937 gen(3);
    std::normal_distribution<double> noise(0.0, 10.0);
    for (double& v : t.values) v += noise(gen);
    const Bits ref = detect(t, mp).bits;
    for (double scale : {0.001, 0.5, 7.0, 1e6}) {
      IfTrack s = t;
      for (double& v : s.values) v *= scale;
      REQUIRE(detect(s, mp).bits == ref);
    }
  }
}

TEST_CASE("detector input checks") {
  const ModParams mp = make_mod_params(kChirp, CodeName::manchester, 128.0);
  IfTrack t = ideal_deviation_track(encode(mp.code, Bits{1}, mp.m), mp);
  t.offset = 1;
  CHECK_THROWS_AS(detect_manchester(t, mp), ConfigError);
  const ModParams b68 = make_mod_params(kChirp, CodeName::b6b8, 128.0);
  t.offset = 0;
  CHECK_THROWS_AS(detect_manchester(t, b68), ConfigError);
  CHECK_THROWS_AS(detect_6b8b(t, mp, code_spec(CodeName::b6b8)), ConfigError);
}

TEST_CASE("end-to-end at 30 dB: Manchester DPLL 128 b/s, 10^4 bits") {
  RunConfig cfg;
  cfg.codes = {CodeName::manchester};
  cfg.bitrates = {128.0};
  cfg.estimators = {Estimator::dpll};
  cfg.snr_start = cfg.snr_stop = 30.0;
  cfg.bits = 10000;
  cfg.seed = 1;
  const std::vector<BerRecord> r = simulate(cfg);
  REQUIRE(r.size() == 1);
  CHECK(r[0].bits == 10000);
  CHECK(r[0].errors == 0);
}

TEST_CASE("end-to-end at 30 dB: 6b8b LLS 256 b/s, 6000 bits") {
  RunConfig cfg;
  cfg.codes = {CodeName::b6b8};
  cfg.bitrates = {256.0};
  cfg.estimators = {Estimator::lls};
  cfg.snr_start = cfg.snr_stop = 30.0;
  cfg.bits = 6000;
  cfg.seed = 1;
  const std::vector<BerRecord> r = simulate(cfg);
  REQUIRE(r.size() == 1);
  CHECK(r[0].bits == 6000);
  CHECK(r[0].errors == 0);
}
