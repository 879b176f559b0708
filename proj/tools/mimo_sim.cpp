// Command-line front end: configure a BER sweep, run it, write CSV/JSON
// results (plus manifest and optional SVG plot).
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimosic/harness.hpp"
#include "mimosic/results_io.hpp"

namespace {

constexpr const char* kVersion = "mimo-sic-lab 1.0.0";

std::vector<double> parse_snr_range(const std::string& spec) {
  double start, step, stop;
  char c1, c2;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' ||
      step <= 0.0 || stop < start)
    throw CLI::ValidationError("--snr", "expected start:step:stop with step > 0");
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
  return grid;
}

std::string utc_timestamp() {
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct FigurePreset {
  int nt, nr, mod;
  double d_th;
  int s, l;
  double oimf_d_th;
  int oimf_l;
  std::string snr;
  bool ml;
};

// Experiment setups of the five reference figures.
FigurePreset preset_of(const std::string& name) {
  if (name == "fig2") return {4, 4, 4, 0.2, 4, 2, 0.2, 2, "0:2:14", true};
  if (name == "fig3") return {8, 8, 4, 0.2, 4, 2, 0.2, 2, "0:2:16", true};
  if (name == "fig4") return {16, 16, 4, 0.2, 4, 2, 0.5, 3, "0:2:18", false};
  if (name == "fig5") return {4, 4, 16, 0.2, 8, 2, 0.2, 2, "0:2:24", true};
  if (name == "fig6") return {8, 8, 16, 0.2, 8, 2, 0.2, 3, "0:2:24", false};
  throw CLI::ValidationError("--figure", "unknown preset " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo BER laboratory for SIC-family MIMO detectors"};
  app.set_version_flag("--version", kVersion);

  int nt = 4, nr = 4, mod = 4;
  std::string detectors = "zf,mmse,sic,mf-sic,imf-sic,oimf-sic,ml";
  std::string snr = "0:2:14";
  long trials = 10000;
  double d_th = 0.2;
  int cand_s = 4, rec_l = 2;
  uint64_t seed = 1;
  std::string out = "results";
  std::string format = "csv";
  std::string figure;
  bool svg = false;
  bool oimf_fixed_r = false;

  app.add_option("--nt", nt, "transmit antennas");
  app.add_option("--nr", nr, "receive antennas");
  app.add_option("--mod", mod, "constellation order")
      ->check(CLI::IsMember({4, 16}));
  auto* det_opt = app.add_option("--detectors", detectors,
                                 "comma list of zf,mmse,sic,mf-sic,imf-sic,"
                                 "oimf-sic,ml");
  app.add_option("--snr", snr, "SNR grid start:step:stop in dB");
  app.add_option("--trials", trials, "Monte-Carlo trials per SNR point")
      ->check(CLI::PositiveNumber);
  auto* dth_opt = app.add_option("--dth", d_th, "shadow-area threshold");
  auto* s_opt = app.add_option("--S", cand_s, "feedback candidate count");
  auto* l_opt = app.add_option("--L", rec_l, "recursion budget");
  app.add_option("--seed", seed, "base RNG seed");
  app.add_option("--out", out, "output path prefix");
  app.add_option("--format", format, "result format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--figure", figure,
                 "experiment preset (fig2..fig6); explicit flags override")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6"}));
  app.add_flag("--svg", svg, "also write an SVG plot");
  app.add_flag("--oimf-fixed-r", oimf_fixed_r,
               "freeze the OIMF-SIC ordering matrix R at the full channel");

  CLI11_PARSE(app, argc, argv);

  mimosic::SweepConfig cfg;
  double oimf_d_th = d_th;
  int oimf_l = rec_l;
  try {
    if (!figure.empty()) {
      const FigurePreset p = preset_of(figure);
      if (!app.count("--nt")) nt = p.nt;
      if (!app.count("--nr")) nr = p.nr;
      if (!app.count("--mod")) mod = p.mod;
      if (!app.count("--snr")) snr = p.snr;
      if (!dth_opt->count()) d_th = p.d_th;
      if (!s_opt->count()) cand_s = p.s;
      if (!l_opt->count()) rec_l = p.l;
      oimf_d_th = dth_opt->count() ? d_th : p.oimf_d_th;
      oimf_l = l_opt->count() ? rec_l : p.oimf_l;
      if (!det_opt->count()) {
        detectors = "zf,mmse,sic,mf-sic,imf-sic,oimf-sic";
        if (p.ml) detectors += ",ml";
      }
    }

    cfg.dims = {nt, nr};
    cfg.mod = mod;
    cfg.snr_grid_db = parse_snr_range(snr);
    cfg.trials = trials;
    cfg.base_seed = seed;

    std::stringstream dl(detectors);
    std::string name;
    while (std::getline(dl, name, ',')) {
      mimosic::DetectorKind kind;
      if (!mimosic::parse_detector_name(name, kind)) {
        std::cerr << "error: unknown detector '" << name << "'\n";
        return 2;
      }
      mimosic::DetectorConfig d;
      d.kind = kind;
      d.d_th = d_th;
      d.s = cand_s;
      d.l = rec_l;
      if (kind == mimosic::DetectorKind::OimfSic) {
        d.d_th = oimf_d_th;
        d.l = oimf_l;
        d.oimf_fixed_r = oimf_fixed_r;
      }
      cfg.detectors.push_back(d);
    }

    int threads = 0;  // 0 = library default
    if (const char* env = std::getenv("MIMO_SIC_THREADS"))
      threads = std::atoi(env);

    const mimosic::SweepResult res = mimosic::run_sweep(cfg, threads);
    for (const std::string& w : res.warnings)
      std::cerr << "warning: " << w << "\n";

    mimosic::RunManifest manifest;
    manifest.config = cfg;
    manifest.tool_version = kVersion;
    manifest.timestamp = utc_timestamp();
    manifest.warnings = res.warnings;

    if (format == "csv") {
      manifest.output_paths = {out + ".csv", out + ".manifest.json"};
      mimosic::write_file(out + ".csv", mimosic::curves_to_csv(res.curves));
      mimosic::write_file(out + ".manifest.json",
                          mimosic::curves_to_json({}, manifest));
    } else {
      manifest.output_paths = {out + ".json"};
      mimosic::write_file(out + ".json",
                          mimosic::curves_to_json(res.curves, manifest));
    }
    if (svg)
      mimosic::write_file(out + ".svg", mimosic::curves_to_svg(res.curves));

    for (const mimosic::BerCurve& c : res.curves) {
      std::cout << mimosic::detector_name(c.kind) << ":";
      for (const mimosic::BerPoint& p : c.points)
        std::cout << " " << mimosic::format_double(p.ber);
      std::cout << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
