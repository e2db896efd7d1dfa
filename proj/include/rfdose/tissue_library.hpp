#pragma once

#include <memory>

#include "rfdose/dielectrics.hpp"

namespace rfdose {

// Built-in tissue set: Gabriel 1996 four-pole Cole-Cole parameters as served
// by the IFAC tissue-properties calculator, with conventional mass densities.
// Densities are engineering defaults, not measured values; override via a
// tissue table file when needed.
namespace tissue_ids {
inline constexpr TissueId kSkin = 1;
inline constexpr TissueId kFat = 2;
inline constexpr TissueId kMuscle = 3;
inline constexpr TissueId kBoneCortical = 4;
inline constexpr TissueId kTendon = 5;
inline constexpr TissueId kBlood = 6;
inline constexpr TissueId kBoneMarrow = 7;
}  // namespace tissue_ids

inline TissueTable default_tissue_table() {
  TissueTable t;
  auto cc = [](double eps_inf, double de1, double t1, double a1, double de2,
               double t2, double a2, double de3, double t3, double a3, double de4,
               double t4, double a4, double si) {
    ColeColeParameters p;
    p.eps_inf = eps_inf;
    p.delta_eps = {de1, de2, de3, de4};
    p.tau = {t1, t2, t3, t4};
    p.alpha = {a1, a2, a3, a4};
    p.sigma_ionic = si;
    return p;
  };

  t.add(tissue_ids::kSkin, "skin_dry",
        cc(4.0, 32.0, 7.234e-12, 0.00, 1100.0, 32.481e-9, 0.20, 0.0, 159.15e-6,
           0.20, 0.0, 15.915e-3, 0.20, 0.0002),
        1109.0);
  t.add(tissue_ids::kFat, "fat",
        cc(2.5, 3.0, 7.958e-12, 0.20, 15.0, 15.915e-9, 0.10, 3.3e4, 159.15e-6,
           0.05, 1.0e7, 7.958e-3, 0.01, 0.010),
        911.0);
  t.add(tissue_ids::kMuscle, "muscle",
        cc(4.0, 50.0, 7.234e-12, 0.10, 7000.0, 353.68e-9, 0.10, 1.2e6, 318.31e-6,
           0.10, 2.5e7, 2.274e-3, 0.00, 0.20),
        1090.0);
  t.add(tissue_ids::kBoneCortical, "bone_cortical",
        cc(2.5, 10.0, 13.263e-12, 0.20, 180.0, 79.577e-9, 0.20, 5.0e3, 159.15e-6,
           0.20, 1.0e5, 15.915e-3, 0.00, 0.020),
        1908.0);
  t.add(tissue_ids::kTendon, "tendon",
        cc(4.0, 42.0, 12.243e-12, 0.10, 60.0, 6.366e-9, 0.10, 6.0e4, 318.31e-6,
           0.22, 2.0e7, 1.326e-3, 0.00, 0.250),
        1142.0);
  t.add(tissue_ids::kBlood, "blood",
        cc(4.0, 56.0, 8.377e-12, 0.10, 5200.0, 132.63e-9, 0.10, 0.0, 159.15e-6,
           0.20, 0.0, 15.915e-3, 0.00, 0.700),
        1050.0);
  t.add(tissue_ids::kBoneMarrow, "bone_marrow",
        cc(2.5, 3.0, 7.958e-12, 0.20, 25.0, 15.915e-9, 0.10, 5.0e3, 159.15e-6,
           0.10, 2.0e6, 15.915e-3, 0.10, 0.0010),
        980.0);
  return t;
}

inline std::shared_ptr<const TissueTable> default_tissue_table_shared() {
  static const auto table =
      std::make_shared<const TissueTable>(default_tissue_table());
  return table;
}

}  // namespace rfdose
