#include "ttr/lp_export.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ttr {

namespace {

std::string arr(int k, int i) { return "a_k" + std::to_string(k) + "_s" + std::to_string(i); }
std::string dep(int k, int i) { return "d_k" + std::to_string(k) + "_s" + std::to_string(i); }
std::string pen(int k, int i) { return "pen_k" + std::to_string(k) + "_s" + std::to_string(i); }
std::string prec(int i, int k1, int k2) {
  return "y_s" + std::to_string(i) + "_k" + std::to_string(k1) + "_k" + std::to_string(k2);
}
std::string trk(int i, int k, int p) {
  return "z_s" + std::to_string(i) + "_k" + std::to_string(k) + "_p" + std::to_string(p);
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void export_lp(const Instance& inst, const ObjectiveConfig& cfg,
               const LpExportConfig& lp, std::ostream& os,
               ValidationProfile profile) {
  const int K = inst.num_trains;
  const int I = inst.num_stations;
  const Minutes h = inst.headway;
  const Minutes M = lp.resolve(inst);
  const bool strict = profile == ValidationProfile::StrictMilp;

  os << "\\ train rescheduling model, " << K << " trains x " << I << " stations\n";
  os << "\\ big_m=" << M << " lambda=" << cfg.lambda
     << " profile=" << (strict ? "strict-milp" : "operational") << "\n";

  os << "Minimize\n obj:";
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < I; ++i)
      os << (k == 0 && i == 0 ? " " : " + ") << pen(k, i);
  os << "\n";

  os << "Subject To\n";
  // Penalty linearization: pen >= a - a* and pen >= lambda * (a* - a).
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      const Minutes a_star = inst.planned_arrival[k][i];
      os << " late_k" << k << "_s" << i << ": " << pen(k, i) << " - " << arr(k, i)
         << " >= " << -a_star << "\n";
      os << " early_k" << k << "_s" << i << ": " << pen(k, i) << " + "
         << num(cfg.lambda) << " " << arr(k, i) << " >= "
         << num(cfg.lambda * static_cast<double>(a_star)) << "\n";
    }
  }
  // Minimum run and dwell times.
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      os << " dwell_k" << k << "_s" << i << ": " << dep(k, i) << " - " << arr(k, i)
         << " >= " << inst.min_dwell[i] << "\n";
      if (i + 1 < I)
        os << " run_k" << k << "_s" << i << ": " << arr(k, i + 1) << " - "
           << dep(k, i) << " >= " << inst.min_run[k][i] << "\n";
    }
  }
  // Ordered headway. The precedence binary of station i also orders the
  // arrivals at station i+1, which forbids overtaking inside the section.
  for (int i = 0; i < I; ++i) {
    for (int k1 = 0; k1 < K; ++k1) {
      for (int k2 = k1 + 1; k2 < K; ++k2) {
        const std::string y = prec(i, k1, k2);
        os << " hd_d_s" << i << "_k" << k1 << "_k" << k2 << ": " << dep(k2, i)
           << " - " << dep(k1, i) << " - " << M << " " << y << " >= " << (h - M)
           << "\n";
        os << " hd_d_s" << i << "_k" << k2 << "_k" << k1 << ": " << dep(k1, i)
           << " - " << dep(k2, i) << " + " << M << " " << y << " >= " << h << "\n";
        if (i + 1 < I) {
          os << " hd_a_s" << i + 1 << "_k" << k1 << "_k" << k2 << ": "
             << arr(k2, i + 1) << " - " << arr(k1, i + 1) << " - " << M << " " << y
             << " >= " << (h - M) << "\n";
          os << " hd_a_s" << i + 1 << "_k" << k2 << "_k" << k1 << ": "
             << arr(k1, i + 1) << " - " << arr(k2, i + 1) << " + " << M << " " << y
             << " >= " << h << "\n";
        }
      }
    }
  }
  // Platform assignment and same-platform reuse gaps (origin untracked).
  for (int i = 1; i < I; ++i) {
    const int P = inst.track_capacity[i];
    for (int k = 0; k < K; ++k) {
      os << " assign_k" << k << "_s" << i << ":";
      for (int p = 0; p < P; ++p) os << (p == 0 ? " " : " + ") << trk(i, k, p);
      os << " = 1\n";
    }
    for (int k1 = 0; k1 < K; ++k1) {
      for (int k2 = k1 + 1; k2 < K; ++k2) {
        const std::string y = prec(i - 1, k1, k2);
        for (int p = 0; p < P; ++p) {
          // k1 into the platform first (y = 1), then the reverse direction.
          os << " reuse_s" << i << "_k" << k1 << "_k" << k2 << "_p" << p << ": "
             << arr(k2, i) << " - " << dep(k1, i) << " - " << M << " " << y
             << " - " << M << " " << trk(i, k1, p) << " - " << M << " "
             << trk(i, k2, p) << " >= " << (h - 3 * M) << "\n";
          os << " reuse_s" << i << "_k" << k2 << "_k" << k1 << "_p" << p << ": "
             << arr(k1, i) << " - " << dep(k2, i) << " + " << M << " " << y
             << " - " << M << " " << trk(i, k1, p) << " - " << M << " "
             << trk(i, k2, p) << " >= " << (h - 2 * M) << "\n";
        }
      }
    }
  }

  os << "Bounds\n";
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < I; ++i) {
      os << " " << dep(k, i) << " >= " << inst.planned_departure[k][i] << "\n";
      const Minutes occurred = inst.occurred_delay[k][i];
      if (strict || occurred > 0)
        os << " " << arr(k, i) << " >= " << inst.planned_arrival[k][i] + occurred
           << "\n";
    }
  }

  os << "Binaries\n";
  for (int i = 0; i < I; ++i)
    for (int k1 = 0; k1 < K; ++k1)
      for (int k2 = k1 + 1; k2 < K; ++k2) os << " " << prec(i, k1, k2) << "\n";
  for (int i = 1; i < I; ++i)
    for (int k = 0; k < K; ++k)
      for (int p = 0; p < inst.track_capacity[i]; ++p)
        os << " " << trk(i, k, p) << "\n";
  os << "End\n";
}

void export_lp_file(const Instance& inst, const ObjectiveConfig& cfg,
                    const LpExportConfig& lp, const std::string& path,
                    ValidationProfile profile) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  export_lp(inst, cfg, lp, os, profile);
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace ttr
