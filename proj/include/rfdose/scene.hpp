#pragma once

#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "rfdose/antenna.hpp"
#include "rfdose/dielectrics.hpp"
#include "rfdose/errors.hpp"
#include "rfdose/grid.hpp"
#include "rfdose/phantom.hpp"

namespace rfdose {

// Merged material world handed to the solver: phantom tissue IDs plus antenna
// cell kinds on one grid. Tissue dielectrics are resolved per run frequency;
// the scene itself is frequency-agnostic.
struct SimulationScene {
  GridDims dims;
  double spacing = 2e-3;
  Array3<TissueId> tissue;
  Array3<AntennaCell> antenna;
  std::shared_ptr<const TissueTable> table;
  SlotAntennaSpec antenna_spec;
  bool has_antenna = false;

  bool has_port = false;
  PortLocation port;

  std::string site_label;

  CellMaterial material_at(int i, int j, int k, double f) const {
    const AntennaCell kind = has_antenna ? antenna(i, j, k) : AntennaCell::None;
    if (kind != AntennaCell::None && kind != AntennaCell::Cavity) {
      RasterizedAntenna helper;
      helper.spacing = spacing;
      helper.frequency = f;
      helper.spec = antenna_spec;
      return helper.material(kind);
    }
    const TissueId id = tissue(i, j, k);
    if (id != kFreeSpaceId) {
      const DielectricSample s = table->lookup(id, f);
      return {s.eps_r, s.sigma_eff, false};
    }
    return {};
  }

  bool is_tissue(int i, int j, int k) const {
    return tissue(i, j, k) != kFreeSpaceId;
  }

  // Empty scene of the given size (free space everywhere); used by tests and
  // calibration runs that build their own material layouts.
  static SimulationScene empty(GridDims dims, double spacing,
                               std::shared_ptr<const TissueTable> tb) {
    SimulationScene sc;
    sc.dims = dims;
    sc.spacing = spacing;
    sc.tissue = Array3<TissueId>(dims, kFreeSpaceId);
    sc.antenna = Array3<AntennaCell>(dims, AntennaCell::None);
    sc.table = std::move(tb);
    return sc;
  }
};

// Mount a rasterized antenna on a phantom face. The phantom's z=0 face is the
// mounting surface; the scene z axis runs from the antenna's outer face into
// the body. Off-body variants sit with the full box flush on the skin and the
// slot facing away; in-body variants press the slot face onto the skin.
inline SimulationScene place_on_phantom(const RasterizedAntenna& ant,
                                        const VoxelPhantom& ph,
                                        const std::string& site_label) {
  ph.validate();
  if (std::abs(ant.spacing - ph.spacing) > 1e-12)
    throw PlacementError("antenna and phantom grid spacings differ");
  if (ant.dims.nx > ph.dims.nx || ant.dims.ny > ph.dims.ny)
    throw PlacementError("antenna footprint exceeds the phantom lateral extent");

  const int ah = ant.dims.nz;
  SimulationScene sc;
  sc.dims = {ph.dims.nx, ph.dims.ny, ah + ph.dims.nz};
  sc.spacing = ph.spacing;
  sc.table = ph.table;
  sc.tissue = Array3<TissueId>(sc.dims, kFreeSpaceId);
  sc.antenna = Array3<AntennaCell>(sc.dims, AntennaCell::None);
  sc.antenna_spec = ant.spec;
  sc.has_antenna = true;
  sc.site_label = site_label;

  for (int k = 0; k < ph.dims.nz; ++k)
    for (int j = 0; j < ph.dims.ny; ++j)
      for (int i = 0; i < ph.dims.nx; ++i)
        sc.tissue(i, j, ah + k) = ph.ids(i, j, k);

  const int ox = (ph.dims.nx - ant.dims.nx) / 2;
  const int oy = (ph.dims.ny - ant.dims.ny) / 2;

  // Contact plane: shallowest tissue voxel under the antenna footprint.
  int surf = std::numeric_limits<int>::max();
  for (int j = 0; j < ant.dims.ny; ++j)
    for (int i = 0; i < ant.dims.nx; ++i)
      for (int k = 0; k < ph.dims.nz; ++k)
        if (ph.ids(ox + i, oy + j, k) != kFreeSpaceId) {
          surf = std::min(surf, k);
          break;
        }
  if (surf == std::numeric_limits<int>::max())
    throw PlacementError("no tissue under the antenna footprint");

  // slot_face_outward: local z-top (slot) maps toward scene z=0.
  const bool flip = ant.spec.slot_face_outward;
  const int mount = surf;  // scene z of the antenna's lowest cell = ah + surf - ah
  for (int k = 0; k < ah; ++k) {
    const int sk = mount + (flip ? (ah - 1 - k) : k);
    for (int j = 0; j < ant.dims.ny; ++j)
      for (int i = 0; i < ant.dims.nx; ++i) {
        const AntennaCell kind = ant.cells(i, j, k);
        if (kind == AntennaCell::None) continue;
        const int si = ox + i, sj = oy + j;
        if (sc.tissue(si, sj, sk) != kFreeSpaceId)
          throw PlacementError("antenna cell overlaps tissue at (" +
                               std::to_string(si) + "," + std::to_string(sj) +
                               "," + std::to_string(sk) + ")");
        sc.antenna(si, sj, sk) = kind;
      }
  }

  // Port edge in scene coordinates. Under the z flip a cell edge from node
  // z=p to p+1 maps to the edge from node ah-1-p to ah-p.
  Int3 node = ant.port.node;
  int pz = flip ? (ah - 1 - node.z) : node.z;
  sc.port.node = {ox + node.x, oy + node.y, mount + pz};
  sc.port.resistance = ant.port.resistance;
  sc.has_port = true;
  return sc;
}

}  // namespace rfdose
