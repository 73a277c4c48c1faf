#include "fcssk/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t t : tags) {
    h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  }
  return h;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    return 0;
  }
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = engine_();
  while (x >= limit) {
    x = engine_();
  }
  return x % bound;
}

std::pair<double, double> Rng::gaussian_pair() {
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

IqBuffer apply_awgn(const IqBuffer& buf, std::optional<double> snr_db, std::uint64_t seed) {
  if (!snr_db) {
    return buf;
  }
  IqBuffer out = buf;
  const double sigma = std::sqrt(std::pow(10.0, -*snr_db / 10.0) / 2.0);
  Rng rng(seed);
  for (auto& s : out.samples) {
    const auto [re, im] = rng.gaussian_pair();
    s += Complex{sigma * re, sigma * im};
  }
  return out;
}

IqBuffer apply_delay(const IqBuffer& buf, std::size_t delay, std::size_t period) {
  if (delay == 0) {
    return buf;
  }
  if (delay >= buf.size()) {
    throw ConfigError("delay " + std::to_string(delay) + " is not smaller than the buffer length " +
                      std::to_string(buf.size()));
  }
  const std::size_t span = std::min(period, buf.size());
  if (delay >= span) {
    throw ConfigError("delay " + std::to_string(delay) + " exceeds one chirp period");
  }
  // Rotate the tail so its last sample carries the phase of buf[0]; across a
  // period boundary the reference frequency resets to 0, i.e. no phase step.
  const Complex last = buf.samples[span - 1];
  Complex rot = buf.samples[0] * std::conj(last);
  const double mag = std::abs(rot);
  rot = mag > 0.0 ? rot / mag : Complex{1.0, 0.0};

  IqBuffer out;
  out.fs = buf.fs;
  out.samples.reserve(buf.size() + delay);
  for (std::size_t i = span - delay; i < span; ++i) {
    out.samples.push_back(buf.samples[i] * rot);
  }
  out.samples.insert(out.samples.end(), buf.samples.begin(), buf.samples.end());
  return out;
}

IqBuffer apply_channel(const IqBuffer& buf, const ChannelConfig& cfg, std::size_t period) {
  return apply_awgn(apply_delay(buf, cfg.delay, period), cfg.snr_db, cfg.seed);
}

}  // namespace fcssk
