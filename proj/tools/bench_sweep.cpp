// Times the OpenMP sweep against the serial reference loop on a mid-size
// configuration and checks that both produce identical curves.
#include <chrono>
#include <iostream>

#include "mimosic/harness.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
  mimosic::SweepConfig cfg;
  cfg.dims = {4, 4};
  cfg.mod = 4;
  cfg.snr_grid_db = {4, 8, 12};
  cfg.trials = (argc > 1) ? std::atol(argv[1]) : 2000;
  cfg.base_seed = 7;
  cfg.detectors = {{mimosic::DetectorKind::SIC},
                   {mimosic::DetectorKind::MfSic},
                   {mimosic::DetectorKind::ImfSic},
                   {mimosic::DetectorKind::OimfSic}};

  auto t0 = Clock::now();
  const mimosic::SweepResult serial = mimosic::run_sweep_serial(cfg);
  const double ts = seconds_since(t0);

  t0 = Clock::now();
  const mimosic::SweepResult parallel = mimosic::run_sweep(cfg);
  const double tp = seconds_since(t0);

  bool same = serial.curves.size() == parallel.curves.size();
  for (std::size_t i = 0; same && i < serial.curves.size(); ++i)
    for (std::size_t p = 0; same && p < serial.curves[i].points.size(); ++p)
      same = serial.curves[i].points[p].bit_errors ==
             parallel.curves[i].points[p].bit_errors;

  std::cout << "trials/point: " << cfg.trials << "\n"
            << "serial:   " << ts << " s\n"
            << "openmp:   " << tp << " s\n"
            << "speedup:  " << ts / tp << "x\n"
            << "identical: " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}
