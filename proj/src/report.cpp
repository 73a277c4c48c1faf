#include "fcssk/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {

constexpr std::array<std::string_view, 7> kColumns = {"snr_db", "code",   "bitrate", "estimator",
                                                      "bits",   "errors", "ber"};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && s.front() == ' ') {
    s.remove_prefix(1);
  }
  return s;
}

double parse_double(std::string_view s, std::size_t line, std::size_t offset) {
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw ParseError("line " + std::to_string(line) + ": invalid number '" + tmp + "'", line, 1,
                     offset);
  }
  return v;
}

std::size_t parse_count(std::string_view s, std::size_t line, std::size_t offset) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": invalid count '" + std::string(s) + "'",
                     line, 1, offset);
  }
  return v;
}

}  // namespace

std::string to_csv(const std::vector<BerRecord>& records) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const BerRecord& r : records) {
    out += fmt("%.10g", r.snr_db);
    out.push_back(',');
    out += to_string(r.code);
    out.push_back(',');
    out += fmt("%.10g", r.bitrate);
    out.push_back(',');
    out += r.estimator;
    out.push_back(',');
    out += std::to_string(r.bits);
    out.push_back(',');
    out += std::to_string(r.errors);
    out.push_back(',');
    out += fmt("%.6g", r.ber);
    out.push_back('\n');
  }
  return out;
}

std::vector<BerRecord> parse_csv(std::string_view text) {
  const std::vector<std::string_view> lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]).empty()) {
    throw FormatError("CSV is empty (missing column 'snr_db')");
  }
  const std::vector<std::string_view> header = split(trim(lines[0]), ',');
  std::array<std::size_t, kColumns.size()> index{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    const auto it = std::find_if(header.begin(), header.end(),
                                 [&](std::string_view h) { return trim(h) == kColumns[c]; });
    if (it == header.end()) {
      throw FormatError("CSV is missing column '" + std::string(kColumns[c]) + "'");
    }
    index[c] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<BerRecord> records;
  std::size_t offset = lines[0].size() + 1;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const std::string_view line = trim(lines[ln]);
    const std::size_t line_no = ln + 1;
    if (!line.empty()) {
      const std::vector<std::string_view> cells = split(line, ',');
      if (cells.size() != header.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields",
                         line_no, 1, offset);
      }
      auto cell = [&](std::size_t c) { return trim(cells[index[c]]); };
      BerRecord r;
      r.snr_db = parse_double(cell(0), line_no, offset);
      try {
        r.code = parse_code(cell(1));
      } catch (const ConfigError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, 1, offset);
      }
      r.bitrate = parse_double(cell(2), line_no, offset);
      r.estimator = std::string(cell(3));
      r.bits = parse_count(cell(4), line_no, offset);
      r.errors = parse_count(cell(5), line_no, offset);
      r.ber = parse_double(cell(6), line_no, offset);
      records.push_back(std::move(r));
    }
    offset += lines[ln].size() + 1;
  }
  return records;
}

std::string render_svg(const std::vector<BerRecord>& records) {
  if (records.empty()) {
    throw FormatError("nothing to plot: no data rows");
  }
  using Key = std::tuple<std::string, double, std::string>;
  std::map<Key, std::vector<std::pair<double, double>>> series;
  double x_lo = -30.0;
  double x_hi = 30.0;
  double y_min = 1e-4;
  for (const BerRecord& r : records) {
    series[{std::string(to_string(r.code)), r.bitrate, r.estimator}].emplace_back(r.snr_db, r.ber);
    x_lo = std::min(x_lo, std::floor(r.snr_db / 10.0) * 10.0);
    x_hi = std::max(x_hi, std::ceil(r.snr_db / 10.0) * 10.0);
    if (r.ber > 0.0) {
      y_min = std::min(y_min, std::pow(10.0, std::floor(std::log10(r.ber))));
    }
  }
  const int decades = static_cast<int>(std::lround(-std::log10(y_min)));

  constexpr double kWidth = 720.0;
  constexpr double kHeight = 480.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 200.0;
  constexpr double kTop = 20.0;
  constexpr double kBottom = 50.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double ber) {
    return kTop + (-std::log10(ber)) / static_cast<double>(decades) * plot_h;
  };

  static constexpr std::array<std::string_view, 8> kColors = {
      "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" "
     << "font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";
  os << "<g class=\"grid\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (int d = 0; d <= decades; ++d) {
    const double y = py(std::pow(10.0, -d));
    os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
       << y << "\"/>\n";
  }
  for (double x = x_lo; x <= x_hi + 1e-9; x += 10.0) {
    os << "<line x1=\"" << px(x) << "\" y1=\"" << kTop << "\" x2=\"" << px(x) << "\" y2=\""
       << kTop + plot_h << "\"/>\n";
  }
  os << "</g>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = 0; d <= decades; ++d) {
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(std::pow(10.0, -d)) + 4
       << "\" text-anchor=\"end\">" << (d == 0 ? std::string("1") : "1e-" + std::to_string(d))
       << "</text>\n";
  }
  for (double x = x_lo; x <= x_hi + 1e-9; x += 10.0) {
    os << "<text x=\"" << px(x) << "\" y=\"" << kTop + plot_h + 16
       << "\" text-anchor=\"middle\">" << fmt("%g", x) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\">SNR (dB)</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + plot_h / 2 << ")\">BER</text>\n";

  std::size_t idx = 0;
  for (auto& [key, pts] : series) {
    std::sort(pts.begin(), pts.end());
    const std::string_view color = kColors[idx % kColors.size()];
    const bool dashed = std::get<2>(key) == "crb";
    // Split the polyline wherever a point cannot be drawn on the log axis.
    std::vector<std::vector<std::pair<double, double>>> runs(1);
    for (const auto& [x, ber] : pts) {
      if (ber > 0.0) {
        runs.back().emplace_back(px(x), py(ber));
      } else if (!runs.back().empty()) {
        runs.emplace_back();
      }
    }
    for (const auto& run : runs) {
      if (run.empty()) {
        continue;
      }
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
         << (dashed ? " stroke-dasharray=\"4 3\"" : "") << " points=\"";
      for (std::size_t i = 0; i < run.size(); ++i) {
        os << (i ? " " : "") << fmt("%.2f", run[i].first) << ',' << fmt("%.2f", run[i].second);
      }
      os << "\"/>\n";
    }
    const double ly = kTop + 10.0 + 18.0 * static_cast<double>(idx);
    const double lx = kLeft + plot_w + 12.0;
    os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
    os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << std::get<0>(key) << ' '
       << fmt("%g", std::get<1>(key)) << " b/s " << std::get<2>(key) << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fcssk
