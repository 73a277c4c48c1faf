#include "fcssk/sync.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "fcssk/errors.hpp"
#include "fft.hpp"

namespace fcssk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Peak-to-mean power ratio below which the spectrum counts as flat. White
// noise over 16k bins peaks near 10x the mean.
constexpr double kMinPeakToMean = 25.0;
constexpr std::size_t kMaxKinks = 4;
constexpr long kFineRange = 128;
constexpr long kFineHalfWindow = 192;
// Residual phase variance (rad^2) above which the break fit is distrusted.
constexpr double kMaxResidualVar = 0.3;

struct Spectrum {
  std::vector<double> power;
  double fs = 0.0;

  std::size_t size() const { return power.size(); }
  double bin_freq(double bin) const {
    const double n = static_cast<double>(power.size());
    if (bin > n / 2.0) {
      bin -= n;
    }
    return bin * fs / n;
  }
};

Spectrum beat_spectrum(const IqBuffer& rx, std::size_t start, const IqBuffer& ref, std::size_t n) {
  const std::size_t len = std::min(n, rx.size() - start);
  std::vector<Complex> z(len);
  for (std::size_t k = 0; k < len; ++k) {
    z[k] = rx.samples[start + k] * std::conj(ref.samples[k]);
  }
  const auto spec = detail::fft(z, n);
  Spectrum s;
  s.fs = rx.fs;
  s.power.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.power[k] = std::norm(spec[k]);
  }
  return s;
}

// Parabolic interpolation on the magnitude around bin k; returns fractional bin.
double interpolate_peak(const Spectrum& s, std::size_t k) {
  const std::size_t n = s.size();
  const double m0 = std::sqrt(s.power[k]);
  const double ml = std::sqrt(s.power[(k + n - 1) % n]);
  const double mr = std::sqrt(s.power[(k + 1) % n]);
  const double denom = ml - 2.0 * m0 + mr;
  const double delta = denom != 0.0 ? 0.5 * (ml - mr) / denom : 0.0;
  return static_cast<double>(k) + std::clamp(delta, -0.5, 0.5);
}

double spectral_spread(const Spectrum& s) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double f = s.bin_freq(static_cast<double>(k));
    num += s.power[k] * f * f;
    den += s.power[k];
  }
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

// Locates the strongest line within +-radius bins of `freq`; nullopt when it
// does not clear the noise floor.
std::optional<double> measure_line(const Spectrum& s, double freq, double mean_power) {
  const double n = static_cast<double>(s.size());
  long centre = std::lround(freq * n / s.fs);
  std::size_t best = 0;
  double best_p = -1.0;
  for (long d = -2; d <= 2; ++d) {
    const long idx = ((centre + d) % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n);
    if (s.power[static_cast<std::size_t>(idx)] > best_p) {
      best_p = s.power[static_cast<std::size_t>(idx)];
      best = static_cast<std::size_t>(idx);
    }
  }
  if (best_p < kMinPeakToMean * mean_power) {
    return std::nullopt;
  }
  return std::abs(s.bin_freq(interpolate_peak(s, best)));
}

// Least-squares location of the beat-phase slope break near each of the
// given centres. Within a window of half-width w the unwrapped beat phase is
// modelled as a quadratic plus g*min(i - delta, 0) with the known slope step
// g = 2 pi b0 / fs. Returns the best delta in [-range, range] and the mean
// residual variance, or nullopt if no centre has a full window.
struct BreakFit {
  long delta = 0;
  double residual_var = 0.0;
};

std::optional<BreakFit> fit_phase_break(const std::vector<Complex>& beat,
                                        const std::vector<long>& centres, long range, long w,
                                        double g, long period, double after_step, long smooth) {
  const long len = static_cast<long>(beat.size());
  const std::size_t win = static_cast<std::size_t>(2 * w);
  std::vector<Complex> zbuf(win + 2 * static_cast<std::size_t>(smooth));
  std::vector<Complex> csum(zbuf.size() + 1);

  // Orthonormal quadratic basis on i = -w .. w-1.
  std::array<std::vector<double>, 3> q;
  for (auto& col : q) {
    col.resize(win);
  }
  for (std::size_t j = 0; j < win; ++j) {
    const double i = static_cast<double>(static_cast<long>(j) - w) / static_cast<double>(w);
    q[0][j] = 1.0;
    q[1][j] = i;
    q[2][j] = i * i;
  }
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      double dot = 0.0;
      for (std::size_t j = 0; j < win; ++j) dot += q[a][j] * q[b][j];
      for (std::size_t j = 0; j < win; ++j) q[a][j] -= dot * q[b][j];
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < win; ++j) norm += q[a][j] * q[a][j];
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < win; ++j) q[a][j] /= norm;
  }
  // Prefix sums over the grid: s0[k][c] = sum_{j<c} q_k[j], s1[k][c] = sum_{j<c} i_j q_k[j].
  std::array<std::vector<double>, 3> s0;
  std::array<std::vector<double>, 3> s1;
  for (std::size_t k = 0; k < 3; ++k) {
    s0[k].assign(win + 1, 0.0);
    s1[k].assign(win + 1, 0.0);
    for (std::size_t j = 0; j < win; ++j) {
      const double i = static_cast<double>(static_cast<long>(j) - w);
      s0[k][j + 1] = s0[k][j] + q[k][j];
      s1[k][j + 1] = s1[k][j] + i * q[k][j];
    }
  }

  const std::size_t n_delta = static_cast<std::size_t>(2 * range + 1);
  std::vector<double> sse(n_delta, 0.0);
  std::size_t used = 0;
  std::vector<double> psi(win);
  std::vector<double> a0(win + 1);
  std::vector<double> a1(win + 1);
  for (long centre : centres) {
    if (centre - w < 0 || centre + w > len) {
      continue;
    }
    // Window plus smoothing margin. A reference wrap inside it raises the
    // beat frequency by b0; that known break is taken out first. The tones
    // left on either side of the received break are then f_b + b0 and f_b
    // (no wrap before the break) or f_b and f_b - b0 (wrap before it), and
    // are centred on zero so the moving sum passes both.
    const long base = centre - w;
    const long lo = std::max(0L, base - smooth);
    const long hi = std::min(len, base + static_cast<long>(win) + smooth);
    const long boundary = (lo + period - 1) / period * period;
    const bool wrap_first = boundary > 0 && boundary <= centre;
    const double shift = after_step + (wrap_first ? -0.5 : 0.5) * g;
    for (long k = lo; k < hi; ++k) {
      double rot = -shift * static_cast<double>(k - lo);
      if (boundary > 0 && k >= boundary) {
        rot -= g * static_cast<double>(k - boundary + 1);
      }
      zbuf[static_cast<std::size_t>(k - lo)] =
          beat[static_cast<std::size_t>(k)] * std::polar(1.0, std::fmod(rot, kTwoPi));
    }
    csum[0] = Complex{};
    for (long k = lo; k < hi; ++k) {
      csum[static_cast<std::size_t>(k - lo) + 1] = csum[static_cast<std::size_t>(k - lo)] + zbuf[static_cast<std::size_t>(k - lo)];
    }
    Complex prev{};
    for (std::size_t j = 0; j < win; ++j) {
      const long k = base + static_cast<long>(j);
      const long a = std::max(lo, k - smooth) - lo;
      const long b = std::min(hi, k + smooth + 1) - lo;
      const Complex z = csum[static_cast<std::size_t>(b)] - csum[static_cast<std::size_t>(a)];
      psi[j] = j == 0 ? 0.0 : psi[j - 1] + std::arg(z * std::conj(prev));
      prev = z;
    }
    const double ref = psi[static_cast<std::size_t>(w)];
    double energy = 0.0;
    std::array<double, 3> qp{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < win; ++j) {
      psi[j] -= ref;
      energy += psi[j] * psi[j];
      for (std::size_t k = 0; k < 3; ++k) qp[k] += q[k][j] * psi[j];
      const double i = static_cast<double>(static_cast<long>(j) - w);
      a0[j + 1] = a0[j] + psi[j];
      a1[j + 1] = a1[j] + i * psi[j];
    }
    for (std::size_t di = 0; di < n_delta; ++di) {
      const long delta = static_cast<long>(di) - range;
      // Samples with i < delta carry the ramp (i - delta).
      const std::size_t c = static_cast<std::size_t>(delta + w);
      const double d = static_cast<double>(delta);
      const double cnt = static_cast<double>(c);
      const double psi_r = a1[c] - d * a0[c];
      const double r_norm = cnt * (cnt + 1.0) * (2.0 * cnt + 1.0) / 6.0;
      double res = energy - 2.0 * g * psi_r + g * g * r_norm;
      for (std::size_t k = 0; k < 3; ++k) {
        const double proj = qp[k] - g * (s1[k][c] - d * s0[k][c]);
        res -= proj * proj;
      }
      sse[di] += res;
    }
    if (++used == kMaxKinks) {
      break;
    }
  }
  if (used == 0) {
    return std::nullopt;
  }
  const auto best = std::min_element(sse.begin(), sse.end());
  BreakFit fit;
  // The ramp ends at delta, so the first sample at the new slope is delta + 1.
  fit.delta = static_cast<long>(best - sse.begin()) - range + 1;
  fit.residual_var = *best / static_cast<double>(used * win);
  return fit;
}

std::vector<long> break_centres(long tau, long n, long len) {
  std::vector<long> centres;
  for (long c = tau; c < len; c += n) {
    centres.push_back(c);
  }
  return centres;
}


// Global change-point search for the offset. Within every period the beat is
// a tone at f_b = -tau*k0 after the received wrap and at f_b + b0 before it.
// Both tones are mixed to DC and smoothed by a boxcar of 2 fs/b0 samples,
// whose nulls fall on the other tone. The offset maximizes the energy
// captured when samples before tau' are read on the f_b + b0 channel and the
// rest on the f_b channel. The strongest spectral line is either f_b or
// f_b + b0; both readings are scored and the better one wins.
std::optional<long> energy_scan(const std::vector<Complex>& beat, long period, double fs,
                                double b0, double f_line) {
  const long len = static_cast<long>(beat.size());
  const long box = std::max(1L, std::lround(2.0 * fs / b0));
  if (len < period || len < 2 * box) {
    return std::nullopt;
  }
  // Cumulative boxcar power at tone f: c[k] = sum_{i<k} |mean of the window around i|^2.
  auto cumulative_power = [&](double f) {
    std::vector<Complex> csum(beat.size() + 1);
    const double step = -kTwoPi * f / fs;
    Complex rot{1.0, 0.0};
    const Complex inc = std::polar(1.0, step);
    for (long k = 0; k < len; ++k) {
      if (k % 1024 == 0) {
        rot = std::polar(1.0, std::fmod(step * static_cast<double>(k), kTwoPi));
      }
      const auto ku = static_cast<std::size_t>(k);
      csum[ku + 1] = csum[ku] + beat[ku] * rot;
      rot *= inc;
    }
    std::vector<double> c(beat.size() + 1, 0.0);
    const long half = box / 2;
    const double norm = 1.0 / static_cast<double>(box * box);
    for (long k = 0; k < len; ++k) {
      const long lo = std::max(0L, k - half);
      const long hi = std::min(len, k - half + box);
      const double pw = std::norm(csum[static_cast<std::size_t>(hi)] - csum[static_cast<std::size_t>(lo)]) * norm;
      c[static_cast<std::size_t>(k) + 1] = c[static_cast<std::size_t>(k)] + pw;
    }
    return c;
  };
  const std::array<std::vector<double>, 3> cum{cumulative_power(f_line - b0), cumulative_power(f_line),
                                               cumulative_power(f_line + b0)};
  auto at = [len](const std::vector<double>& c, long k) {
    return c[static_cast<std::size_t>(std::min(k, len))];
  };

  long best_tau = -1;
  double best_e = -1.0;
  // Reading h: the after-wrap tone f_b is cum[h], the before-wrap tone cum[h + 1].
  for (std::size_t h = 0; h < 2; ++h) {
    const std::vector<double>& ca = cum[h + 1];
    const std::vector<double>& cb = cum[h];
    for (long t = 0; t < period; ++t) {
      double e = 0.0;
      for (long j = 0; j * period < len; ++j) {
        const long start = j * period;
        e += at(ca, start + t) - at(ca, start) + at(cb, start + period) - at(cb, start + t);
      }
      if (e > best_e) {
        best_e = e;
        best_tau = t;
      }
    }
  }
  return best_tau;
}

struct SpectralStage {
  Spectrum first;
  double mean_power = 0.0;
  double f_line = 0.0;  // signed frequency of the strongest beat line, Hz
  SyncEstimate est;
};

void fill_beat_lines(SyncEstimate& est, const SpectralStage& st, const ChirpParams& params) {
  const double df1 = params.b0 * static_cast<double>(est.tau_hat) / static_cast<double>(params.n);
  const double df2 = params.b0 - df1;
  est.delta_f1 = measure_line(st.first, -df1, st.mean_power).value_or(df1);
  est.delta_f2 = measure_line(st.first, df2, st.mean_power).value_or(df2);
}

std::size_t wrap_index(long v, std::size_t n) {
  const long nn = static_cast<long>(n);
  return static_cast<std::size_t>(((v % nn) + nn) % nn);
}

SpectralStage spectral_stage(const IqBuffer& rx, const ChirpParams& params, const IqBuffer& ref) {
  const std::size_t n = params.n;
  SpectralStage st;
  st.first = beat_spectrum(rx, 0, ref, n);
  for (double p : st.first.power) st.mean_power += p;
  st.mean_power /= static_cast<double>(n);
  const auto peak_it = std::max_element(st.first.power.begin(), st.first.power.end());
  if (!(st.mean_power > 0.0) || *peak_it < kMinPeakToMean * st.mean_power) {
    throw SyncFailure("no beat line above the noise floor");
  }
  const std::size_t peak = static_cast<std::size_t>(peak_it - st.first.power.begin());
  st.f_line = st.first.bin_freq(interpolate_peak(st.first, peak));
  const double f_p = std::clamp(std::abs(st.f_line), 0.0, params.b0);

  // Both readings of the beat line, tau = T0 * f/B and tau = T0 * (1 - f/B).
  const double nd = static_cast<double>(n);
  std::array<std::size_t, 2> cand{wrap_index(std::lround(nd * f_p / params.b0), n),
                                  wrap_index(std::lround(nd * (1.0 - f_p / params.b0)), n)};
  if (cand[1] < cand[0]) {
    std::swap(cand[0], cand[1]);
  }
  std::array<double, 2> spread{};
  for (std::size_t i = 0; i < 2; ++i) {
    // Candidates leaving less than an eighth of a period cannot be judged.
    if (rx.size() - cand[i] < n / 8) {
      spread[i] = std::numeric_limits<double>::infinity();
    } else {
      spread[i] = spectral_spread(beat_spectrum(rx, cand[i], ref, n));
    }
  }
  const std::size_t pick = spread[1] < spread[0] ? 1 : 0;
  st.est.tau_hat = cand[pick];
  st.est.confidence = cand[0] == cand[1] ? 1.0 : spread[1 - pick] / spread[pick];
  fill_beat_lines(st.est, st, params);
  return st;
}

void check_length(const IqBuffer& rx, const ChirpParams& params) {
  if (rx.size() < params.n) {
    throw ConfigError("timing estimation needs at least one chirp period of samples");
  }
}

}  // namespace

SyncEstimate spectral_timing(const IqBuffer& rx, const ChirpParams& params) {
  check_length(rx, params);
  const IqBuffer ref = reference_samples(params, rx.size());
  return spectral_stage(rx, params, ref).est;
}

SyncEstimate estimate_timing(const IqBuffer& rx, const ChirpParams& params) {
  check_length(rx, params);
  const std::size_t n = params.n;
  const IqBuffer ref = reference_samples(params, rx.size());
  const SpectralStage st = spectral_stage(rx, params, ref);
  SyncEstimate est = st.est;
  long tau = static_cast<long>(est.tau_hat);

  std::vector<Complex> beat(rx.size());
  for (std::size_t k = 0; k < rx.size(); ++k) {
    beat[k] = rx.samples[k] * std::conj(ref.samples[k]);
  }
  const long nl = static_cast<long>(n);
  if (const auto scanned = energy_scan(beat, nl, params.fs, params.b0, st.f_line)) {
    tau = *scanned;
  }
  const double g = kTwoPi * params.b0 / params.fs;
  const long len = static_cast<long>(rx.size());
  // Beat tone after the received break, f_b = -tau k0, in rad/sample.
  const double after_step = -kTwoPi * static_cast<double>(wrap_index(tau, n)) * params.k0 / params.fs;
  const long smooth = std::max(0L, std::lround(params.fs / (5.0 * params.b0)));
  const auto fine = fit_phase_break(beat, break_centres(tau, nl, len), kFineRange, kFineHalfWindow, g,
                                    nl, after_step, smooth);
  if (fine && fine->residual_var < kMaxResidualVar) {
    tau += fine->delta;
  }
  est.tau_hat = wrap_index(tau, n);
  fill_beat_lines(est, st, params);
  return est;
}

IqBuffer align(const IqBuffer& rx, const SyncEstimate& est) {
  IqBuffer out;
  out.fs = rx.fs;
  if (est.tau_hat < rx.size()) {
    out.samples.assign(rx.samples.begin() + static_cast<std::ptrdiff_t>(est.tau_hat), rx.samples.end());
  }
  return out;
}

}  // namespace fcssk
