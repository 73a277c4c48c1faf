#include "fcssk/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

#include "fcssk/channel.hpp"
#include "fcssk/errors.hpp"
#include "fcssk/ifest.hpp"
#include "fcssk/theory.hpp"
#include "fcssk/txmod.hpp"

namespace fcssk {

namespace {

enum Purpose : std::uint64_t { kBits = 1, kDelay = 2, kNoise = 3 };

ChirpParams chirp_of(const RunConfig& cfg) {
  return derive_params(cfg.b0, cfg.rep_rate, cfg.fs, cfg.strict);
}

std::uint64_t stream_seed(const RunConfig& cfg, CodeName code, double bitrate, double snr,
                          std::uint64_t burst, Purpose purpose) {
  return derive_seed(cfg.seed, {static_cast<std::uint64_t>(code), std::bit_cast<std::uint64_t>(bitrate),
                                std::bit_cast<std::uint64_t>(snr), burst,
                                static_cast<std::uint64_t>(purpose)});
}

struct Tally {
  std::size_t bits = 0;
  std::size_t errors = 0;
};

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.snr_step > 0.0)) {
    throw ConfigError("--snr-step must be positive");
  }
  if (cfg.snr_stop < cfg.snr_start) {
    throw ConfigError("--snr-stop must not be below --snr-start");
  }
  if (cfg.codes.empty() || cfg.bitrates.empty() || cfg.estimators.empty()) {
    throw ConfigError("code, bitrate and estimator lists must be nonempty");
  }
  if (cfg.burst_periods == 0) {
    throw ConfigError("burst length must be at least one period");
  }
  const ChirpParams chirp = chirp_of(cfg);
  for (CodeName code : cfg.codes) {
    for (double rate : cfg.bitrates) {
      const ModParams mp = make_mod_params(chirp, code, rate);
      default_dpll_params(mp);
    }
  }
}

std::vector<double> snr_grid(const RunConfig& cfg) {
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double snr = cfg.snr_start + static_cast<double>(i) * cfg.snr_step;
    if (snr > cfg.snr_stop + 1e-9) {
      break;
    }
    grid.push_back(snr);
  }
  return grid;
}

void sort_records(std::vector<BerRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const BerRecord& a, const BerRecord& b) {
    return std::make_tuple(to_string(a.code), a.bitrate, std::string_view(a.estimator), a.snr_db) <
           std::make_tuple(to_string(b.code), b.bitrate, std::string_view(b.estimator), b.snr_db);
  });
}

std::vector<BerRecord> simulate(const RunConfig& cfg) {
  validate(cfg);
  const ChirpParams chirp = chirp_of(cfg);
  const std::vector<double> grid = snr_grid(cfg);
  std::vector<BerRecord> records;

  for (CodeName code : cfg.codes) {
    for (double rate : cfg.bitrates) {
      const ModParams mp = make_mod_params(chirp, code, rate);
      const std::size_t p = mp.info_bits_per_symbol();
      const std::size_t sym_len = mp.symbol_len();
      const std::size_t total_symbols = cfg.bits / p;
      const std::size_t burst_symbols =
          std::max<std::size_t>(1, cfg.burst_periods * chirp.n / sym_len);

      for (double snr : grid) {
        std::vector<Tally> tally(cfg.estimators.size());
        std::size_t done = 0;
        for (std::uint64_t burst = 0; done < total_symbols; ++burst) {
          const std::size_t syms = std::min(burst_symbols, total_symbols - done);
          done += syms;

          Rng bit_rng(stream_seed(cfg, code, rate, snr, burst, kBits));
          Bits info(syms * p);
          for (auto& b : info) {
            b = static_cast<std::uint8_t>(bit_rng.next_u64() >> 63);
          }
          const IqBuffer tx = modulate(encode(code, info, mp.m), mp);

          Rng delay_rng(stream_seed(cfg, code, rate, snr, burst, kDelay));
          ChannelConfig ch;
          ch.snr_db = snr;
          ch.delay = static_cast<std::size_t>(delay_rng.below(std::min(chirp.n, tx.size())));
          ch.seed = stream_seed(cfg, code, rate, snr, burst, kNoise);
          const IqBuffer rx = apply_channel(tx, ch, chirp.n);

          FrontEnd fe;
          try {
            fe = front_end(rx, mp, cfg.sync, syms);
          } catch (const SyncFailure&) {
            fe = front_end(rx, mp, false, syms);
          }
          for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
            const Decision d = detect(estimate_if(fe.baseband, mp, cfg.estimators[e]), mp);
            std::size_t errors = 0;
            for (std::size_t i = 0; i < info.size(); ++i) {
              errors += d.bits[i] != info[i] ? 1U : 0U;
            }
            tally[e].bits += info.size();
            tally[e].errors += errors;
          }
        }
        for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
          BerRecord r;
          r.snr_db = snr;
          r.code = code;
          r.bitrate = rate;
          r.estimator = std::string(to_string(cfg.estimators[e]));
          r.bits = tally[e].bits;
          r.errors = tally[e].errors;
          r.ber = r.bits > 0 ? static_cast<double>(r.errors) / static_cast<double>(r.bits) : 0.0;
          records.push_back(std::move(r));
        }
      }
    }
  }
  sort_records(records);
  return records;
}

std::vector<BerRecord> theory_records(const RunConfig& cfg) {
  validate(cfg);
  const ChirpParams chirp = chirp_of(cfg);
  const std::vector<double> grid = snr_grid(cfg);
  std::vector<BerRecord> records;
  for (CodeName code : cfg.codes) {
    for (double rate : cfg.bitrates) {
      for (const TheoryPoint& tp : theory_curve(code, rate, chirp, grid)) {
        BerRecord r;
        r.snr_db = tp.snr_db;
        r.code = code;
        r.bitrate = rate;
        r.estimator = "crb";
        r.ber = tp.pe;
        records.push_back(std::move(r));
      }
    }
  }
  sort_records(records);
  return records;
}

}  // namespace fcssk
