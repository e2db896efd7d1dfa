#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rfdose/dielectrics.hpp"
#include "rfdose/errors.hpp"
#include "rfdose/grid.hpp"

namespace rfdose {

// Uniform voxel grid of tissue IDs. The depth axis is z; for layered phantoms
// z = 0 is the surface the antenna mounts on (skin side).
struct VoxelPhantom {
  GridDims dims;
  double spacing = 2e-3;  // meters per voxel edge
  Array3<TissueId> ids;
  std::shared_ptr<const TissueTable> table;

  TissueId at(int i, int j, int k) const { return ids(i, j, k); }
  bool is_tissue(int i, int j, int k) const { return ids(i, j, k) != kFreeSpaceId; }

  void validate() const {
    if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1)
      throw GeometryError("phantom dims must all be >= 1");
    if (!(spacing > 0.0)) throw GeometryError("phantom spacing must be > 0");
    if (!table) throw GeometryError("phantom has no tissue table");
    if (ids.size() != dims.count())
      throw GeometryError("phantom id array does not match dims");
    for (TissueId id : ids.raw())
      if (!table->contains(id))
        throw MissingTissueError("phantom references unknown tissue id " +
                                 std::to_string(int(id)));
  }
};

enum class Site {
  Torso1,
  Torso2,
  Torso3,
  Arm1,
  Arm2,
  Thigh1,
  Thigh2,
  LowerLeg,
};

inline const char* site_name(Site s) {
  switch (s) {
    case Site::Torso1: return "Torso1";
    case Site::Torso2: return "Torso2";
    case Site::Torso3: return "Torso3";
    case Site::Arm1: return "Arm1";
    case Site::Arm2: return "Arm2";
    case Site::Thigh1: return "Thigh1";
    case Site::Thigh2: return "Thigh2";
    case Site::LowerLeg: return "LowerLeg";
  }
  return "?";
}

inline Site site_from_name(const std::string& name) {
  for (Site s : {Site::Torso1, Site::Torso2, Site::Torso3, Site::Arm1, Site::Arm2,
                 Site::Thigh1, Site::Thigh2, Site::LowerLeg})
    if (name == site_name(s)) return s;
  throw ParseError("unknown site '" + name + "'");
}

// Trunk/limb classification used by the compliance limits.
enum class BodyRegion { Trunk, Limb };

inline BodyRegion site_region(Site s) {
  switch (s) {
    case Site::Torso1:
    case Site::Torso2:
    case Site::Torso3:
      return BodyRegion::Trunk;
    default:
      return BodyRegion::Limb;
  }
}

struct PhantomLayer {
  std::string tissue;   // tissue name in the bound table
  double thickness_mm = 0.0;
};

// Planar slab stand-in for one antenna mounting site: ordered layers from the
// skin inward along +z.
struct LayeredPhantomSpec {
  Site site = Site::Torso1;
  std::vector<PhantomLayer> layers;   // first layer must be skin
  double lateral_mm = 120.0;          // slab extent in x and y
  double depth_mm = 0.0;              // 0 => sum of layer thicknesses

  double stack_mm() const {
    double s = 0.0;
    for (const auto& l : layers) s += l.thickness_mm;
    return s;
  }

  void validate() const {
    if (layers.empty()) throw GeometryError("layer stack is empty");
    if (layers.front().tissue.find("skin") == std::string::npos)
      throw GeometryError("first layer must be skin");
    for (const auto& l : layers)
      if (!(l.thickness_mm > 0.0))
        throw GeometryError("layer thickness must be > 0");
    if (depth_mm > 0.0 && stack_mm() > depth_mm + 1e-9)
      throw GeometryError("layer stack exceeds declared depth");
    if (!(lateral_mm > 0.0)) throw GeometryError("lateral extent must be > 0");
  }
};

// Default layer stacks per site. Thicknesses are engineering stand-ins chosen
// to reproduce the torso-vs-limb fat contrast; override freely.
inline LayeredPhantomSpec default_site_spec(Site site) {
  LayeredPhantomSpec spec;
  spec.site = site;
  switch (site) {
    case Site::Torso1:
    case Site::Torso2:
    case Site::Torso3:
      spec.layers = {{"skin_dry", 2.0}, {"fat", 12.0}, {"muscle", 40.0},
                     {"bone_cortical", 12.0}};
      break;
    case Site::Arm1:
    case Site::Arm2:
      spec.layers = {{"skin_dry", 2.0}, {"fat", 4.0}, {"muscle", 30.0},
                     {"bone_cortical", 16.0}};
      break;
    case Site::Thigh1:
    case Site::Thigh2:
      spec.layers = {{"skin_dry", 2.0}, {"fat", 8.0}, {"muscle", 50.0},
                     {"bone_cortical", 20.0}};
      break;
    case Site::LowerLeg:
      spec.layers = {{"skin_dry", 2.0}, {"fat", 4.0}, {"muscle", 35.0},
                     {"bone_cortical", 20.0}};
      break;
  }
  return spec;
}

inline VoxelPhantom build_layered_phantom(const LayeredPhantomSpec& spec,
                                          double spacing,
                                          std::shared_ptr<const TissueTable> table) {
  spec.validate();
  if (!(spacing > 0.0)) throw GeometryError("spacing must be > 0");

  const double spacing_mm = spacing * 1e3;
  std::vector<std::pair<TissueId, int>> layer_cells;
  int stack_cells = 0;
  for (const auto& l : spec.layers) {
    if (l.thickness_mm < spacing_mm - 1e-9)
      throw ResolutionError("layer '" + l.tissue + "' (" +
                            std::to_string(l.thickness_mm) +
                            " mm) is thinner than one voxel at " +
                            std::to_string(spacing_mm) + " mm spacing");
    auto id = table->find_by_name(l.tissue);
    if (!id)
      throw MissingTissueError("layer tissue '" + l.tissue + "' not in table");
    const int cells = round_half_up_cells(l.thickness_mm, spacing_mm);
    layer_cells.emplace_back(*id, cells);
    stack_cells += cells;
  }

  const double depth_mm = spec.depth_mm > 0.0 ? spec.depth_mm : spec.stack_mm();
  const int nz = std::max(stack_cells, round_half_up_cells(depth_mm, spacing_mm));
  const int nl = round_half_up_cells(spec.lateral_mm, spacing_mm);

  VoxelPhantom ph;
  ph.dims = {nl, nl, nz};
  ph.spacing = spacing;
  ph.table = std::move(table);
  ph.ids = Array3<TissueId>(ph.dims, kFreeSpaceId);
  int k = 0;
  for (const auto& [id, cells] : layer_cells) {
    for (int c = 0; c < cells; ++c, ++k)
      for (int j = 0; j < nl; ++j)
        for (int i = 0; i < nl; ++i) ph.ids(i, j, k) = id;
  }
  return ph;
}

// Per-tissue and total mass for one phantom.
struct MassLedger {
  std::map<TissueId, double> per_tissue_kg;
  double total_kg = 0.0;
};

inline MassLedger mass_ledger(const VoxelPhantom& ph) {
  ph.validate();
  const double voxel_volume = ph.spacing * ph.spacing * ph.spacing;
  std::map<TissueId, std::size_t> counts;
  for (TissueId id : ph.ids.raw())
    if (id != kFreeSpaceId) ++counts[id];
  MassLedger ledger;
  for (const auto& [id, n] : counts) {
    const double m = double(n) * voxel_volume * ph.table->density(id);
    ledger.per_tissue_kg[id] = m;
    ledger.total_kg += m;
  }
  return ledger;
}

// Sub-grid copy around `center` with the given half-extents (voxels).
// The output box is [center-h, center+h] per axis; parts outside the source
// grid are filled with free space.
inline VoxelPhantom crop_region(const VoxelPhantom& ph, Int3 center, Int3 half) {
  if (half.x < 0 || half.y < 0 || half.z < 0)
    throw BoundsError("half-extents must be >= 0");
  const int x0 = center.x - half.x, x1 = center.x + half.x;
  const int y0 = center.y - half.y, y1 = center.y + half.y;
  const int z0 = center.z - half.z, z1 = center.z + half.z;
  if (x1 < 0 || y1 < 0 || z1 < 0 || x0 >= ph.dims.nx || y0 >= ph.dims.ny ||
      z0 >= ph.dims.nz)
    throw BoundsError("crop box does not intersect the phantom");

  VoxelPhantom out;
  out.dims = {x1 - x0 + 1, y1 - y0 + 1, z1 - z0 + 1};
  out.spacing = ph.spacing;
  out.table = ph.table;
  out.ids = Array3<TissueId>(out.dims, kFreeSpaceId);
  for (int k = 0; k < out.dims.nz; ++k) {
    const int sk = z0 + k;
    if (sk < 0 || sk >= ph.dims.nz) continue;
    for (int j = 0; j < out.dims.ny; ++j) {
      const int sj = y0 + j;
      if (sj < 0 || sj >= ph.dims.ny) continue;
      for (int i = 0; i < out.dims.nx; ++i) {
        const int si = x0 + i;
        if (si < 0 || si >= ph.dims.nx) continue;
        out.ids(i, j, k) = ph.ids(si, sj, sk);
      }
    }
  }
  return out;
}

// --- voxel model import/export ----------------------------------------------
//
// Header: structured text with keys
//   dims <nx> <ny> <nz>
//   spacing_mm <s>
//   map <payload_id> <table_id>     (one line per used payload ID)
// Payload: raw unsigned 8-bit tissue IDs, x-fastest, then y, then z.

inline VoxelPhantom import_voxel_model(std::istream& header, std::istream& payload,
                                       std::shared_ptr<const TissueTable> table) {
  GridDims dims;
  double spacing_mm = 0.0;
  std::map<int, int> remap;
  bool have_dims = false;

  std::string line;
  int lineno = 0;
  while (std::getline(header, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "dims") {
      if (!(ls >> dims.nx >> dims.ny >> dims.nz))
        throw ParseError("voxel header line " + std::to_string(lineno) +
                         ": dims needs three integers");
      have_dims = true;
    } else if (key == "spacing_mm") {
      if (!(ls >> spacing_mm) || !(spacing_mm > 0.0))
        throw ParseError("voxel header line " + std::to_string(lineno) +
                         ": bad spacing_mm");
    } else if (key == "map") {
      int from, to;
      if (!(ls >> from >> to))
        throw ParseError("voxel header line " + std::to_string(lineno) +
                         ": map needs two integers");
      remap[from] = to;
    } else {
      throw ParseError("voxel header line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
  if (!have_dims || !(spacing_mm > 0.0))
    throw ParseError("voxel header must declare dims and spacing_mm");
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1)
    throw ParseError("voxel header dims must all be >= 1");

  std::vector<char> bytes((std::istreambuf_iterator<char>(payload)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() != dims.count())
    throw TruncatedPayloadError(
        "truncated payload: expected " + std::to_string(dims.count()) +
        " bytes, got " + std::to_string(bytes.size()));

  VoxelPhantom ph;
  ph.dims = dims;
  ph.spacing = spacing_mm * 1e-3;
  ph.table = std::move(table);
  ph.ids = Array3<TissueId>(dims, kFreeSpaceId);

  std::vector<int> offenders;
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    const int raw = static_cast<unsigned char>(bytes[n]);
    auto it = remap.find(raw);
    int mapped = raw;
    if (it != remap.end()) {
      mapped = it->second;
    } else if (raw != 0) {
      if (std::find(offenders.begin(), offenders.end(), raw) == offenders.end())
        offenders.push_back(raw);
      continue;
    }
    if (!ph.table->contains(static_cast<TissueId>(mapped))) {
      if (std::find(offenders.begin(), offenders.end(), raw) == offenders.end())
        offenders.push_back(raw);
      continue;
    }
    ph.ids.raw()[n] = static_cast<TissueId>(mapped);
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "payload contains unmapped tissue ids:";
    for (int id : offenders) msg << ' ' << id;
    throw MissingTissueError(msg.str());
  }
  return ph;
}

inline void export_voxel_model(const VoxelPhantom& ph, std::ostream& header,
                               std::ostream& payload) {
  header << "dims " << ph.dims.nx << ' ' << ph.dims.ny << ' ' << ph.dims.nz << '\n';
  header << "spacing_mm " << ph.spacing * 1e3 << '\n';
  std::vector<bool> used(256, false);
  for (TissueId id : ph.ids.raw()) used[id] = true;
  for (int id = 0; id < 256; ++id)
    if (used[id]) header << "map " << id << ' ' << id << '\n';
  payload.write(reinterpret_cast<const char*>(ph.ids.data()),
                static_cast<std::streamsize>(ph.ids.size()));
}

inline VoxelPhantom import_voxel_model_files(const std::string& header_path,
                                             const std::string& payload_path,
                                             std::shared_ptr<const TissueTable> table) {
  std::ifstream h(header_path);
  if (!h) throw ParseError("cannot open voxel header '" + header_path + "'");
  std::ifstream p(payload_path, std::ios::binary);
  if (!p) throw ParseError("cannot open voxel payload '" + payload_path + "'");
  return import_voxel_model(h, p, std::move(table));
}

}  // namespace rfdose
