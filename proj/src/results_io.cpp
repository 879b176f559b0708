#include "mimosic/results_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mimosic {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string curves_to_csv(const std::vector<BerCurve>& curves) {
  std::string out =
      "detector,snr_db,trials,total_bits,bit_errors,ber,ci_low,ci_high\n";
  for (const BerCurve& c : curves)
    for (const BerPoint& p : c.points) {
      out += detector_name(c.kind);
      out += ',';
      out += format_double(p.snr_db);
      out += ',';
      out += std::to_string(p.trials);
      out += ',';
      out += std::to_string(p.total_bits);
      out += ',';
      out += std::to_string(p.bit_errors);
      out += ',';
      out += format_double(p.ber);
      out += ',';
      out += format_double(p.ci_low);
      out += ',';
      out += format_double(p.ci_high);
      out += '\n';
    }
  return out;
}

std::vector<BerCurve> curves_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) ||
      line != "detector,snr_db,trials,total_bits,bit_errors,ber,ci_low,ci_high")
    throw std::runtime_error("curves_from_csv: bad header");
  std::vector<BerCurve> curves;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 8) throw std::runtime_error("curves_from_csv: bad row");
    DetectorKind kind;
    if (!parse_detector_name(f[0], kind))
      throw std::runtime_error("curves_from_csv: unknown detector " + f[0]);
    BerPoint p;
    p.snr_db = std::stod(f[1]);
    p.trials = std::stol(f[2]);
    p.total_bits = std::stol(f[3]);
    p.bit_errors = std::stol(f[4]);
    p.ber = std::stod(f[5]);
    p.ci_low = std::stod(f[6]);
    p.ci_high = std::stod(f[7]);
    if (curves.empty() || curves.back().kind != kind) {
      curves.push_back({kind, {}});
    }
    curves.back().points.push_back(p);
  }
  return curves;
}

namespace {

nlohmann::json config_to_json(const SweepConfig& cfg) {
  nlohmann::json dets = nlohmann::json::array();
  for (const DetectorConfig& d : cfg.detectors)
    dets.push_back({{"kind", detector_name(d.kind)},
                    {"d_th", d.d_th},
                    {"s", d.s},
                    {"l", d.l},
                    {"oimf_fixed_r", d.oimf_fixed_r}});
  return {{"nt", cfg.dims.nt},
          {"nr", cfg.dims.nr},
          {"mod", cfg.mod},
          {"detectors", dets},
          {"snr_grid_db", cfg.snr_grid_db},
          {"trials", cfg.trials},
          {"base_seed", cfg.base_seed},
          {"noiseless", cfg.noiseless}};
}

}  // namespace

std::string curves_to_json(const std::vector<BerCurve>& curves,
                           const RunManifest& manifest) {
  nlohmann::json jcurves = nlohmann::json::array();
  for (const BerCurve& c : curves) {
    nlohmann::json pts = nlohmann::json::array();
    for (const BerPoint& p : c.points)
      pts.push_back({{"snr_db", p.snr_db},
                     {"trials", p.trials},
                     {"total_bits", p.total_bits},
                     {"bit_errors", p.bit_errors},
                     {"ber", p.ber},
                     {"ci_low", p.ci_low},
                     {"ci_high", p.ci_high}});
    jcurves.push_back({{"detector", detector_name(c.kind)}, {"points", pts}});
  }
  nlohmann::json j = {
      {"manifest",
       {{"config", config_to_json(manifest.config)},
        {"tool_version", manifest.tool_version},
        {"timestamp", manifest.timestamp},
        {"output_paths", manifest.output_paths},
        {"warnings", manifest.warnings}}},
      {"curves", jcurves}};
  return j.dump(2) + "\n";
}

std::string curves_to_svg(const std::vector<BerCurve>& curves) {
  const double w = 720, h = 540, ml = 70, mr = 160, mt = 30, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1.0, ymax = 1e-300;
  for (const BerCurve& c : curves)
    for (const BerPoint& p : c.points) {
      xmin = std::min(xmin, p.snr_db);
      xmax = std::max(xmax, p.snr_db);
      if (p.ber > 0.0) {
        ymin = std::min(ymin, p.ber);
        ymax = std::max(ymax, p.ber);
      }
    }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (!(ymin < 1.0)) ymin = 1e-5;
  const double ly_min = std::floor(std::log10(ymin));
  const double ly_max = 0.0;
  const auto px = [&](double snr) {
    return ml + (snr - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  const auto py = [&](double ber) {
    const double ly = std::log10(ber);
    return mt + (ly_max - ly) / (ly_max - ly_min) * (h - mt - mb);
  };
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2"};
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
    << "\" height=\"" << h << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes and decade grid
  for (int d = static_cast<int>(ly_min); d <= 0; ++d) {
    const double y = py(std::pow(10.0, d));
    s << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << w - mr
      << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n"
      << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
      << "\" text-anchor=\"end\" font-size=\"12\">1e" << d << "</text>\n";
  }
  for (double x = xmin; x <= xmax + 1e-9; x += 2.0) {
    s << "<line x1=\"" << px(x) << "\" y1=\"" << mt << "\" x2=\"" << px(x)
      << "\" y2=\"" << h - mb << "\" stroke=\"#eee\"/>\n"
      << "<text x=\"" << px(x) << "\" y=\"" << h - mb + 18
      << "\" text-anchor=\"middle\" font-size=\"12\">" << format_double(x)
      << "</text>\n";
  }
  s << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
    << "\" text-anchor=\"middle\" font-size=\"13\">SNR (dB)</text>\n";
  int ci = 0;
  for (const BerCurve& c : curves) {
    const char* col = palette[ci % 7];
    s << "<polyline fill=\"none\" stroke=\"" << col
      << "\" stroke-width=\"1.5\" points=\"";
    for (const BerPoint& p : c.points)
      if (p.ber > 0.0) s << px(p.snr_db) << "," << py(p.ber) << " ";
    s << "\"/>\n";
    for (const BerPoint& p : c.points)
      if (p.ber > 0.0)
        s << "<circle cx=\"" << px(p.snr_db) << "\" cy=\"" << py(p.ber)
          << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    s << "<text x=\"" << w - mr + 12 << "\" y=\"" << mt + 16 + 18 * ci
      << "\" font-size=\"13\" fill=\"" << col << "\">"
      << detector_name(c.kind) << "</text>\n";
    ++ci;
  }
  s << "</svg>\n";
  return s.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << contents;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace mimosic
