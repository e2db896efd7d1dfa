#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rfdose/constants.hpp"
#include "rfdose/errors.hpp"

namespace rfdose {

// Four-pole Cole-Cole description of a tissue's complex permittivity:
//   eps(w) = eps_inf + sum_n delta_eps[n] / (1 + (j*w*tau[n])^(1 - alpha[n]))
//            + sigma_ionic / (j*w*eps0)
struct ColeColeParameters {
  double eps_inf = 1.0;
  std::array<double, 4> delta_eps{};  // dimensionless dispersion magnitudes
  std::array<double, 4> tau{};        // relaxation times, seconds
  std::array<double, 4> alpha{};      // broadening exponents in [0,1)
  double sigma_ionic = 0.0;           // S/m

  void validate() const {
    if (!(eps_inf >= 1.0)) throw ParameterDomainError("eps_inf must be >= 1");
    if (!(sigma_ionic >= 0.0)) throw ParameterDomainError("sigma_ionic must be >= 0");
    for (int n = 0; n < 4; ++n) {
      if (!(delta_eps[n] >= 0.0))
        throw ParameterDomainError("delta_eps must be >= 0");
      if (delta_eps[n] > 0.0 && !(tau[n] > 0.0))
        throw ParameterDomainError("tau must be > 0 for an active pole");
      if (!(alpha[n] >= 0.0 && alpha[n] < 1.0))
        throw ParameterDomainError("alpha must lie in [0,1)");
    }
  }
};

// Effective material pair handed to the solver at one frequency.
struct DielectricSample {
  double frequency = 0.0;     // Hz
  double eps_r = 1.0;         // real relative permittivity
  double sigma_eff = 0.0;     // total effective conductivity, S/m
  double loss_tangent = 0.0;  // sigma_eff / (w * eps0 * eps_r)
};

inline DielectricSample evaluate_cole_cole(const ColeColeParameters& params, double f) {
  if (!(f > 0.0)) throw ParameterDomainError("frequency must be > 0");
  params.validate();

  const double w = 2.0 * kPi * f;
  std::complex<double> eps(params.eps_inf, 0.0);
  for (int n = 0; n < 4; ++n) {
    if (params.delta_eps[n] == 0.0) continue;
    const std::complex<double> jwt(0.0, w * params.tau[n]);
    eps += params.delta_eps[n] / (1.0 + std::pow(jwt, 1.0 - params.alpha[n]));
  }
  eps += params.sigma_ionic / (std::complex<double>(0.0, w * kVacuumPermittivity));

  DielectricSample s;
  s.frequency = f;
  s.eps_r = eps.real();
  s.sigma_eff = -w * kVacuumPermittivity * eps.imag();
  if (!std::isfinite(s.eps_r) || !std::isfinite(s.sigma_eff))
    throw ParameterDomainError("Cole-Cole evaluation produced a non-finite value");
  s.loss_tangent = s.eps_r > 0.0
                       ? s.sigma_eff / (w * kVacuumPermittivity * s.eps_r)
                       : 0.0;
  return s;
}

using TissueId = std::uint8_t;
inline constexpr TissueId kFreeSpaceId = 0;

struct TissueEntry {
  std::string name;
  ColeColeParameters params;
  double density = 0.0;  // kg/m^3; free space carries 0
};

// Tissue ID -> name, Cole-Cole parameters, mass density. ID 0 is always
// free space and cannot be redefined. Lookups are memoized per (id, f).
class TissueTable {
 public:
  TissueTable() {
    TissueEntry fs;
    fs.name = "free_space";
    fs.params.eps_inf = 1.0;
    fs.density = 0.0;
    entries_[kFreeSpaceId] = fs;
  }

  void add(TissueId id, const std::string& name, const ColeColeParameters& params,
           double density) {
    if (id == kFreeSpaceId)
      throw ParseError("tissue id 0 is reserved for free space");
    if (entries_.count(id))
      throw ParseError("duplicate tissue id " + std::to_string(int(id)));
    if (!(density > 0.0))
      throw ParseError("tissue '" + name + "' must have density > 0");
    params.validate();
    entries_[id] = TissueEntry{name, params, density};
  }

  bool contains(TissueId id) const { return entries_.count(id) != 0; }

  const TissueEntry& entry(TissueId id) const {
    auto it = entries_.find(id);
    if (it == entries_.end())
      throw MissingTissueError("unknown tissue id " + std::to_string(int(id)));
    return it->second;
  }

  std::optional<TissueId> find_by_name(const std::string& name) const {
    for (const auto& [id, e] : entries_)
      if (e.name == name) return id;
    return std::nullopt;
  }

  double density(TissueId id) const { return entry(id).density; }
  std::size_t size() const { return entries_.size(); }

  const std::map<TissueId, TissueEntry>& entries() const { return entries_; }

  // Memoized dielectric lookup; identical inputs return bit-identical samples.
  DielectricSample lookup(TissueId id, double f) const {
    const auto& e = entry(id);
    if (id == kFreeSpaceId) {
      DielectricSample s;
      s.frequency = f;
      return s;
    }
    const Key key{id, f};
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    DielectricSample s = evaluate_cole_cole(e.params, f);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    return memo_.emplace(key, s).first->second;
  }

 private:
  using Key = std::pair<TissueId, double>;
  std::map<TissueId, TissueEntry> entries_;
  mutable std::mutex memo_mutex_;
  mutable std::map<Key, DielectricSample> memo_;
};

inline DielectricSample lookup_dielectrics(const TissueTable& table, TissueId id,
                                           double f) {
  return table.lookup(id, f);
}

// --- tissue table file format -----------------------------------------------
//
// One record per line, whitespace separated, '#' starts a comment:
//   id name eps_inf  de1 tau1 a1  de2 tau2 a2  de3 tau3 a3  de4 tau4 a4  sigma_ionic density
// tau in seconds, sigma in S/m, density in kg/m^3. ID 0 must not appear.

inline TissueTable parse_tissue_table(std::istream& in) {
  TissueTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int id;
    if (!(ls >> id)) continue;  // blank or comment-only line
    std::string name;
    ColeColeParameters p;
    double density;
    if (!(ls >> name >> p.eps_inf)) {
      throw ParseError("tissue table line " + std::to_string(lineno) +
                       ": expected name and eps_inf");
    }
    for (int n = 0; n < 4; ++n) {
      if (!(ls >> p.delta_eps[n] >> p.tau[n] >> p.alpha[n]))
        throw ParseError("tissue table line " + std::to_string(lineno) +
                         ": expected 4 (delta_eps, tau, alpha) triples");
    }
    if (!(ls >> p.sigma_ionic >> density))
      throw ParseError("tissue table line " + std::to_string(lineno) +
                       ": expected sigma_ionic and density");
    if (id < 1 || id > 255)
      throw ParseError("tissue table line " + std::to_string(lineno) +
                       ": id must be in [1,255]");
    table.add(static_cast<TissueId>(id), name, p, density);
  }
  return table;
}

inline void write_tissue_table(std::ostream& out, const TissueTable& table) {
  out << "# id name eps_inf  de1 tau1 a1  de2 tau2 a2  de3 tau3 a3  de4 tau4 a4"
         "  sigma_ionic density\n";
  for (const auto& [id, e] : table.entries()) {
    if (id == kFreeSpaceId) continue;
    out << int(id) << ' ' << e.name << ' ' << e.params.eps_inf;
    for (int n = 0; n < 4; ++n)
      out << "  " << e.params.delta_eps[n] << ' ' << e.params.tau[n] << ' '
          << e.params.alpha[n];
    out << "  " << e.params.sigma_ionic << ' ' << e.density << '\n';
  }
}

}  // namespace rfdose
