#include "fcssk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>

#include "fcssk/channel.hpp"
#include "fcssk/errors.hpp"
#include "fcssk/fileio.hpp"
#include "fcssk/receiver.hpp"
#include "fcssk/report.hpp"
#include "fcssk/simulate.hpp"
#include "fcssk/txmod.hpp"

namespace fcssk {

namespace {

struct Options {
  std::vector<std::string> codes{"manchester"};
  std::vector<double> bitrates{128.0};
  std::vector<std::string> estimators{"dpll"};
  double b0 = 1024.0;
  double rep_rate = 4.0;
  double fs = 65536.0;
  double snr_start = -30.0;
  double snr_stop = 30.0;
  double snr_step = 2.0;
  std::optional<std::size_t> bits;
  std::uint64_t seed = 1;
  bool no_sync = false;
  bool with_theory = false;
  bool strict = false;
  bool quick = false;
  std::vector<std::string> in;
  std::string out;
  // modulate extras
  std::size_t delay = 0;
  std::optional<double> snr;
};

RunConfig run_config(const Options& o) {
  RunConfig cfg;
  cfg.b0 = o.b0;
  cfg.rep_rate = o.rep_rate;
  cfg.fs = o.fs;
  cfg.strict = o.strict;
  cfg.codes.clear();
  for (const auto& c : o.codes) {
    cfg.codes.push_back(parse_code(c));
  }
  cfg.bitrates = o.bitrates;
  cfg.estimators.clear();
  for (const auto& e : o.estimators) {
    cfg.estimators.push_back(parse_estimator(e));
  }
  cfg.snr_start = o.snr_start;
  cfg.snr_stop = o.snr_stop;
  cfg.snr_step = o.snr_step;
  cfg.bits = o.bits ? *o.bits : (o.quick ? kQuickBits : kDefaultBits);
  cfg.seed = o.seed;
  cfg.sync = !o.no_sync;
  return cfg;
}

ModParams single_mod_params(const Options& o) {
  if (o.codes.size() != 1 || o.bitrates.size() != 1) {
    throw ConfigError("modulate/demodulate take exactly one --code and one --bitrate");
  }
  const ChirpParams chirp = derive_params(o.b0, o.rep_rate, o.fs, o.strict);
  return make_mod_params(chirp, parse_code(o.codes.front()), o.bitrates.front());
}

const std::string& single_input(const Options& o) {
  if (o.in.size() != 1) {
    throw ConfigError("exactly one --in file is required");
  }
  return o.in.front();
}

void emit(const Options& o, std::string_view data, std::ostream& out) {
  if (o.out.empty() || o.out == "-") {
    out << data;
  } else {
    write_file(o.out, data);
  }
}

void cmd_modulate(const Options& o, std::ostream& out) {
  const ModParams mp = single_mod_params(o);
  const Bits info = parse_bits(read_file(single_input(o)));
  IqBuffer tx = modulate(encode(mp.code, info, mp.m), mp);
  if (o.delay > 0 || o.snr) {
    ChannelConfig ch;
    ch.snr_db = o.snr;
    ch.delay = o.delay;
    ch.seed = derive_seed(o.seed, {0});
    tx = apply_channel(tx, ch, mp.chirp.n);
  }
  emit(o, encode_cf32(tx), out);
}

void cmd_demodulate(const Options& o, std::ostream& out) {
  const ModParams mp = single_mod_params(o);
  if (o.estimators.size() != 1) {
    throw ConfigError("demodulate takes exactly one --estimator");
  }
  const IqBuffer rx = decode_cf32(read_file(single_input(o)), mp.chirp.fs);
  Bits bits;
  if (!rx.empty()) {
    bits = receive(rx, mp, parse_estimator(o.estimators.front()), !o.no_sync).decision.bits;
  }
  emit(o, format_bits(bits), out);
}

void cmd_simulate(const Options& o, std::ostream& out) {
  const RunConfig cfg = run_config(o);
  std::vector<BerRecord> records = simulate(cfg);
  if (o.with_theory) {
    const std::vector<BerRecord> theory = theory_records(cfg);
    records.insert(records.end(), theory.begin(), theory.end());
    sort_records(records);
  }
  emit(o, to_csv(records), out);
}

void cmd_theory(const Options& o, std::ostream& out) {
  emit(o, to_csv(theory_records(run_config(o))), out);
}

void cmd_plot(const Options& o, std::ostream& out) {
  if (o.in.empty()) {
    throw ConfigError("plot needs at least one --in CSV file");
  }
  std::vector<BerRecord> records;
  for (const auto& path : o.in) {
    const std::vector<BerRecord> part = parse_csv(read_file(path));
    records.insert(records.end(), part.begin(), part.end());
  }
  emit(o, render_svg(records), out);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--code", o.codes, "manchester or 6b8b (comma-separated list allowed)")
      ->delimiter(',');
  sub->add_option("--bitrate", o.bitrates, "info bits per second (list allowed)")->delimiter(',');
  sub->add_option("--estimator", o.estimators, "dpll or lls (list allowed)")->delimiter(',');
  sub->add_option("--b0", o.b0, "chirp bandwidth, Hz");
  sub->add_option("--rep-rate", o.rep_rate, "chirp repetitions per second");
  sub->add_option("--fs", o.fs, "sample rate, Hz");
  sub->add_option("--snr-start", o.snr_start, "first SNR grid point, dB");
  sub->add_option("--snr-stop", o.snr_stop, "last SNR grid point, dB");
  sub->add_option("--snr-step", o.snr_step, "SNR grid step, dB");
  sub->add_option("--bits", o.bits, "info bits per grid point");
  sub->add_option("--seed", o.seed, "base random seed");
  sub->add_flag("--no-sync", o.no_sync, "skip timing synchronization");
  sub->add_flag("--with-theory", o.with_theory, "append closed-form curve rows");
  sub->add_flag("--strict-spec", o.strict, "restrict parameters to the homing-beacon operating range");
  sub->add_flag("--quick", o.quick, "10^4 bits per grid point unless --bits is given");
  sub->add_option("--in", o.in, "input file(s)");
  sub->add_option("--out", o.out, "output file (default stdout)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FCSSK chirp modem: modulate, demodulate, simulate, theory, plot", "fcssk"};
  app.require_subcommand(1, 1);
  Options o;
  CLI::App* mod = app.add_subcommand("modulate", "info bits file -> cf32 IQ file");
  CLI::App* demod = app.add_subcommand("demodulate", "cf32 IQ file -> info bits file");
  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo BER sweep as CSV");
  CLI::App* theory = app.add_subcommand("theory", "closed-form BER curve as CSV");
  CLI::App* plot = app.add_subcommand("plot", "render CSV files as an SVG chart");
  for (CLI::App* sub : {mod, demod, sim, theory, plot}) {
    add_common(sub, o);
  }
  mod->add_option("--delay", o.delay, "prepend this many samples of channel delay");
  mod->add_option("--snr", o.snr, "add AWGN at this SNR, dB");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (mod->parsed()) {
      cmd_modulate(o, out);
    } else if (demod->parsed()) {
      cmd_demodulate(o, out);
    } else if (sim->parsed()) {
      cmd_simulate(o, out);
    } else if (theory->parsed()) {
      cmd_theory(o, out);
    } else if (plot->parsed()) {
      cmd_plot(o, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fcssk
