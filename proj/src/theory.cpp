#include "fcssk/theory.hpp"

#include <cmath>
#include <numbers>

#include "fcssk/errors.hpp"
#include "fcssk/txmod.hpp"

namespace fcssk {

double crb_variance(double snr_linear, std::size_t n_obs, double fs) {
  if (n_obs < 2) {
    throw ConfigError("CRB needs at least two observed samples");
  }
  if (!(snr_linear > 0.0)) {
    throw ConfigError("CRB needs a positive SNR");
  }
  const double n = static_cast<double>(n_obs);
  const double two_pi = 2.0 * std::numbers::pi;
  return 12.0 * fs * fs / (two_pi * two_pi * snr_linear * n * (n * n - 1.0));
}

std::size_t observation_length(CodeName code, std::size_t m) {
  return coded_bit_length(code, m);
}

double bit_energy(CodeName code, const ChirpParams& params, std::size_t m) {
  const double md = static_cast<double>(m);
  const double man = params.b0 * md * md / (2.0 * static_cast<double>(params.n));
  return code == CodeName::manchester ? man : 2.25 * man;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double pe_crb(double e_b, double var_f) {
  if (!(var_f > 0.0) || e_b < 0.0) {
    throw ConfigError("pe_crb needs var_f > 0 and e_b >= 0");
  }
  return q_function(std::sqrt(2.0 * e_b / var_f));
}

std::vector<TheoryPoint> theory_curve(CodeName code, double bitrate, const ChirpParams& params,
                                      std::span<const double> snr_grid_db) {
  if (snr_grid_db.empty()) {
    throw ConfigError("theory curve needs a nonempty SNR grid");
  }
  const ModParams mp = make_mod_params(params, code, bitrate);
  const std::size_t n_obs = observation_length(code, mp.m);
  const double e_b = bit_energy(code, params, mp.m);
  std::vector<TheoryPoint> out;
  out.reserve(snr_grid_db.size());
  for (double snr : snr_grid_db) {
    TheoryPoint p;
    p.snr_db = snr;
    p.code = code;
    p.bitrate = bitrate;
    p.n_obs = n_obs;
    p.var_f = crb_variance(std::pow(10.0, snr / 10.0), n_obs, params.fs);
    p.e_b = e_b;
    p.pe = pe_crb(e_b, p.var_f);
    out.push_back(p);
  }
  return out;
}

double snr_at_pe(CodeName code, double bitrate, const ChirpParams& params, double pe,
                 double lo_db, double hi_db) {
  auto eval = [&](double snr) {
    const double grid[] = {snr};
    return theory_curve(code, bitrate, params, grid).front().pe;
  };
  if (eval(lo_db) < pe || eval(hi_db) > pe) {
    throw ConfigError("target error probability not bracketed by the SNR range");
  }
  for (int it = 0; it < 200 && hi_db - lo_db > 1e-12; ++it) {
    const double mid = 0.5 * (lo_db + hi_db);
    if (eval(mid) > pe) {
      lo_db = mid;
    } else {
      hi_db = mid;
    }
  }
  return 0.5 * (lo_db + hi_db);
}

}  // namespace fcssk
