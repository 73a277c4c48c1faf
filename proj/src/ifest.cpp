#include "fcssk/ifest.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinCutoff = 64.0;
}  // namespace

double lowpass_cutoff(const ModParams& mp) {
  return std::max(4.0 * peak_deviation(mp), kMinCutoff);
}

std::vector<double> design_lowpass(double cutoff_hz, double fs, std::size_t taps) {
  if (taps % 2 == 0 || taps < 3) {
    throw ConfigError("lowpass needs an odd tap count");
  }
  if (!(cutoff_hz > 0.0) || cutoff_hz >= fs / 2.0) {
    throw ConfigError("lowpass cutoff must lie in (0, fs/2)");
  }
  const double fc = cutoff_hz / fs;
  const double mid = static_cast<double>(taps - 1) / 2.0;
  std::vector<double> h(taps);
  double sum = 0.0;
  for (std::size_t k = 0; k < taps; ++k) {
    const double x = static_cast<double>(k) - mid;
    const double sinc = x == 0.0 ? 2.0 * fc : std::sin(kTwoPi * fc * x) / (std::numbers::pi * x);
    const double window = 0.5 - 0.5 * std::cos(kTwoPi * (static_cast<double>(k) + 1.0) /
                                               (static_cast<double>(taps) + 1.0));
    h[k] = sinc * window;
    sum += h[k];
  }
  for (double& v : h) {
    v /= sum;
  }
  return h;
}

double fir_magnitude(std::span<const double> taps, double freq_hz, double fs) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < taps.size(); ++k) {
    acc += taps[k] * std::polar(1.0, -kTwoPi * freq_hz / fs * static_cast<double>(k));
  }
  return std::abs(acc);
}

IqBuffer downconvert(const IqBuffer& rx, const ChirpParams& params, double cutoff_hz) {
  const std::vector<double> h = design_lowpass(cutoff_hz, params.fs);
  const std::size_t taps = h.size();
  const std::size_t half = (taps - 1) / 2;
  const std::size_t len = rx.size();

  // Mixed signal with `half` zeros on both sides.
  std::vector<double> re(len + 2 * half, 0.0);
  std::vector<double> im(len + 2 * half, 0.0);
  ChirpSynthesizer ref(params);
  for (std::size_t i = 0; i < len; ++i) {
    const Complex z = rx.samples[i] * std::conj(ref.next(params.k0));
    re[i + half] = z.real();
    im[i + half] = z.imag();
  }

  IqBuffer out;
  out.fs = rx.fs;
  out.samples.resize(len);
  // Symmetric taps: y[i] = sum_k h[k] x[i + half - k] over the padded input
  // starting at i, so padded index i + (taps-1-k).
  for (std::size_t i = 0; i < len; ++i) {
    const double* xr = re.data() + i;
    const double* xi = im.data() + i;
    double ar = 0.0;
    double ai = 0.0;
    for (std::size_t k = 0; k < taps; ++k) {
      ar += h[k] * xr[taps - 1 - k];
      ai += h[k] * xi[taps - 1 - k];
    }
    out.samples[i] = Complex{ar, ai};
  }
  return out;
}

DpllParams make_dpll_params(double fs, double f_nat, double zeta) {
  if (!(zeta > 0.0) || !(f_nat > 0.0)) {
    throw ConfigError("DPLL needs positive damping and natural frequency");
  }
  if (fs < 50.0 * f_nat) {
    std::ostringstream os;
    os << "DPLL natural frequency " << f_nat << " Hz too high for fs = " << fs
       << " (need fs >= 50 f_nat)";
    throw ConfigError(os.str());
  }
  DpllParams p;
  p.zeta = zeta;
  p.f_nat = f_nat;
  p.fs = fs;
  const double w0 = kTwoPi * f_nat;
  p.c2 = 2.0 * zeta * w0 / fs;
  p.c1 = p.c2 * p.c2 / (4.0 * zeta * zeta);
  return p;
}

DpllParams default_dpll_params(const ModParams& mp) {
  return make_dpll_params(mp.chirp.fs, mp.chirp.fs / (2.0 * static_cast<double>(mp.coded_bit_len)));
}

std::complex<double> dpll_response(const DpllParams& p, double freq_hz) {
  const Complex zm1 = std::polar(1.0, kTwoPi * freq_hz / p.fs) - 1.0;
  return (p.c1 * zm1 + p.c2 * zm1 * zm1) / (zm1 * zm1 + p.c2 * zm1 + p.c1);
}

IfTrack dpll_track(const IqBuffer& bb, const DpllParams& p) {
  IfTrack track;
  track.fs = p.fs;
  track.offset = 0;
  track.values.resize(bb.size());
  if (bb.empty()) {
    return track;
  }
  const double scale = p.fs / kTwoPi;
  double phase_out = std::arg(bb.samples[0]);
  double integ = 0.0;
  for (std::size_t i = 0; i < bb.size(); ++i) {
    const double err = std::arg(bb.samples[i] * std::polar(1.0, -phase_out));
    const double omega = integ + p.c2 * err;
    track.values[i] = omega * scale;
    integ += p.c1 * err;
    phase_out += omega;
    if (phase_out > std::numbers::pi) {
      phase_out -= kTwoPi;
    } else if (phase_out <= -std::numbers::pi) {
      phase_out += kTwoPi;
    }
  }
  return track;
}

LlsParams default_lls_params(const ModParams& mp) {
  LlsParams p;
  p.lambda = 5;
  p.window_len = mp.coded_bit_len;
  p.stride = std::max<std::size_t>(1, mp.coded_bit_len / 4);
  return p;
}

std::vector<double> unwrap_phase(std::span<const Complex> bb) {
  std::vector<double> phase(bb.size());
  if (bb.empty()) {
    return phase;
  }
  phase[0] = std::arg(bb[0]);
  for (std::size_t i = 1; i < bb.size(); ++i) {
    phase[i] = phase[i - 1] + std::arg(bb[i] * std::conj(bb[i - 1]));
  }
  return phase;
}

IfTrack lls_track(const IqBuffer& bb, const LlsParams& p) {
  if (p.lambda < 2) {
    throw ConfigError("LLS polynomial degree must be at least 2");
  }
  const std::size_t order = static_cast<std::size_t>(p.lambda) + 1;
  const std::size_t len_w = p.window_len;
  if (len_w <= order) {
    throw ConfigError("LLS window must be longer than degree + 1");
  }
  if (p.stride == 0 || p.stride > len_w) {
    throw ConfigError("LLS stride must lie in [1, window length]");
  }
  if (bb.size() < len_w) {
    throw ConfigError("LLS window longer than the signal");
  }

  // Window-relative times scaled to [-1, 1]: t = (i - c) / h.
  const double centre = static_cast<double>(len_w - 1) / 2.0;
  const double h = centre;
  Eigen::MatrixXd vander(static_cast<Eigen::Index>(len_w), static_cast<Eigen::Index>(order));
  for (std::size_t i = 0; i < len_w; ++i) {
    const double t = (static_cast<double>(i) - centre) / h;
    double v = 1.0;
    for (std::size_t k = 0; k < order; ++k) {
      vander(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
      v *= t;
    }
  }
  // Row-major (order x len_w) least-squares projector.
  const Eigen::MatrixXd projector =
      vander.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(len_w),
                                                                   static_cast<Eigen::Index>(len_w)));
  std::vector<double> proj(order * len_w);
  for (std::size_t k = 0; k < order; ++k) {
    for (std::size_t i = 0; i < len_w; ++i) {
      proj[k * len_w + i] = projector(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
    }
  }

  const std::vector<double> phase = unwrap_phase(bb.samples);
  const std::size_t len = bb.size();
  const std::size_t lead = (len_w - p.stride) / 2;
  const double hz_per_unit = bb.fs / (kTwoPi * h);

  IfTrack track;
  track.fs = bb.fs;
  track.offset = 0;
  track.values.resize(len);

  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + len_w <= len; s += p.stride) {
    starts.push_back(s);
  }
  if (starts.back() + len_w < len) {
    starts.push_back(len - len_w);
  }

  std::vector<double> coeff(order);
  std::size_t next = 0;
  for (std::size_t w = 0; w < starts.size(); ++w) {
    const std::size_t s = starts[w];
    const std::size_t end = w + 1 == starts.size() ? len : std::min(len, s + lead + p.stride);
    if (end <= next) {
      continue;
    }
    const double base = phase[s];
    for (std::size_t k = 0; k < order; ++k) {
      const double* row = proj.data() + k * len_w;
      double acc = 0.0;
      for (std::size_t i = 0; i < len_w; ++i) {
        acc += row[i] * (phase[s + i] - base);
      }
      coeff[k] = acc;
    }
    for (std::size_t i = next; i < end; ++i) {
      const double t = (static_cast<double>(i - s) - centre) / h;
      // d/dt of sum a_k t^k by Horner.
      double d = 0.0;
      for (std::size_t k = order - 1; k >= 1; --k) {
        d = d * t + static_cast<double>(k) * coeff[k];
      }
      track.values[i] = d * hz_per_unit;
    }
    next = end;
  }
  return track;
}

}  // namespace fcssk
