#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rfdose/constants.hpp"
#include "rfdose/errors.hpp"
#include "rfdose/grid.hpp"

namespace rfdose {

enum class AntennaVariant { OffBody, InBody };

inline const char* variant_name(AntennaVariant v) {
  return v == AntennaVariant::OffBody ? "off_body" : "in_body";
}

inline AntennaVariant variant_from_name(const std::string& s) {
  if (s == "off_body") return AntennaVariant::OffBody;
  if (s == "in_body") return AntennaVariant::InBody;
  throw ParseError("unknown antenna variant '" + s + "'");
}

// Parametric description of one cavity-backed slot antenna. Local frame:
// x along the box length L, y along the width W, z along the height H with
// the slotted lid at z-top. The slot runs along y; when it is longer than
// the box width it folds down the two y-normal side walls.
struct SlotAntennaSpec {
  AntennaVariant variant = AntennaVariant::OffBody;

  double box_l_mm = 56.0, box_w_mm = 33.0, box_h_mm = 11.0;
  double slot_length_mm = 47.0, slot_width_mm = 9.0;
  double wall_mm = 1.5;

  double shell_eps_r = 4.0;        // PLA
  double shell_loss_tangent = 0.02;
  double coating_sigma = 4.3e6;    // silver paste, S/m
  bool coating_as_pec = false;

  double monopole_thickness_mm = 0.1;  // brass sheet (sub-cell; one cell on grid)
  double monopole_sigma = 1.57e7;
  double monopole_length_mm = 20.0;    // along the slot axis (y)
  double monopole_width_mm = 8.0;      // across the slot (x)
  double feed_offset_mm = 0.0;         // feed node offset along y from center

  bool slot_face_outward = true;   // off-body: slot away from skin

  double fold_length_mm() const {
    return std::max(0.0, (slot_length_mm - box_w_mm) / 2.0);
  }

  void validate() const {
    if (!(box_l_mm > 0 && box_w_mm > 0 && box_h_mm > 0))
      throw GeometryError("box dimensions must be > 0");
    if (!(slot_length_mm > 0 && slot_width_mm > 0))
      throw GeometryError("slot dimensions must be > 0");
    if (!(wall_mm > 0) || wall_mm >= std::min({box_l_mm, box_w_mm, box_h_mm}) / 2.0)
      throw GeometryError("wall thickness must be > 0 and < min box dim / 2");
    if (slot_width_mm >= box_l_mm - 2.0 * wall_mm)
      throw GeometryError("slot width does not fit on the lid");
    if (fold_length_mm() >= box_h_mm)
      throw GeometryError("slot fold exceeds the box height");
    if (!(coating_sigma > 0) || !(monopole_sigma > 0))
      throw GeometryError("conductivities must be > 0");
  }
};

// Paper geometry, off-body variant: 56 x 33 x 11 mm box, 47 x 9 mm slot folded
// 7 mm onto each side wall, slot facing away from the skin.
inline SlotAntennaSpec off_body_antenna_spec() {
  SlotAntennaSpec s;
  s.variant = AntennaVariant::OffBody;
  s.slot_face_outward = true;
  return s;
}

// Paper geometry, in-body variant: 33 x 33 x 11 mm box, 28 x 7 mm slot pressed
// against the skin.
inline SlotAntennaSpec in_body_antenna_spec() {
  SlotAntennaSpec s;
  s.variant = AntennaVariant::InBody;
  s.box_l_mm = 33.0;
  s.box_w_mm = 33.0;
  s.slot_length_mm = 28.0;
  s.slot_width_mm = 7.0;
  s.slot_face_outward = false;
  return s;
}

enum class AntennaCell : std::uint8_t { None = 0, Shell, Coating, Cavity, Monopole };

struct CellMaterial {
  double eps_r = 1.0;
  double sigma = 0.0;
  bool pec = false;
};

struct PortLocation {
  Int3 node;                  // z-directed edge from node.z to node.z+1
  double resistance = 50.0;   // source impedance, ohm
};

// Cell-level realization of one antenna on a uniform grid, plus its feed port.
struct RasterizedAntenna {
  GridDims dims;
  double spacing = 0.0;
  double frequency = 0.0;  // frequency the shell loss was converted at
  Array3<AntennaCell> cells;
  PortLocation port;
  SlotAntennaSpec spec;

  CellMaterial material(AntennaCell kind) const {
    switch (kind) {
      case AntennaCell::Shell: {
        const double sigma = 2.0 * kPi * frequency * kVacuumPermittivity *
                             spec.shell_eps_r * spec.shell_loss_tangent;
        return {spec.shell_eps_r, sigma, false};
      }
      case AntennaCell::Coating:
        return spec.coating_as_pec ? CellMaterial{1.0, 0.0, true}
                                   : CellMaterial{1.0, spec.coating_sigma, false};
      case AntennaCell::Monopole:
        return {1.0, spec.monopole_sigma, false};
      default:
        return {};
    }
  }
};

namespace detail {

// Centered run of `span` cells inside `total` cells; deterministic (low side
// gets the shorter margin when the slack is odd).
inline int centered_start(int total, int span) { return (total - span) / 2; }

}  // namespace detail

// Rasterize one antenna spec onto a cubic grid. `quarter_turns` rotates the
// antenna about the face normal (z) in 90-degree steps; the result is the
// exact cell permutation of the unrotated raster.
inline RasterizedAntenna rasterize(const SlotAntennaSpec& spec, double spacing,
                                   double f, int quarter_turns = 0) {
  spec.validate();
  if (!(f > 0.0)) throw GeometryError("frequency must be > 0");
  if (!(spacing > 0.0) || spacing > 2.0e-3 + 1e-12)
    throw GeometryError("rasterization requires spacing in (0, 2] mm");

  const double mm = spacing * 1e3;
  const int nx = round_half_up_cells(spec.box_l_mm, mm);
  const int ny = round_half_up_cells(spec.box_w_mm, mm);
  const int nz = round_half_up_cells(spec.box_h_mm, mm);
  const int nw = std::max(1, round_half_up_cells(spec.wall_mm, mm));
  const int slot_w = round_half_up_cells(spec.slot_width_mm, mm);
  const int slot_l = std::min(ny, round_half_up_cells(spec.slot_length_mm, mm));
  const int fold = round_half_up_cells(spec.fold_length_mm(), mm);
  if (slot_w < 1) throw ResolutionError("slot narrower than one cell");
  if (nz <= 2 * (nw + 1))
    throw GeometryError("box too flat: no cavity interior after shell+coating");

  const int slot_x0 = detail::centered_start(nx, slot_w);
  const int slot_y0 = detail::centered_start(ny, slot_l);

  // Aperture: where the conductive coating is absent (slot window).
  const int lid_k = nz - nw - 1;  // innermost cell layer of the lid (coating level)
  auto in_aperture = [&](int i, int j, int k) {
    if (i < slot_x0 || i >= slot_x0 + slot_w) return false;
    if (k >= lid_k && j >= slot_y0 && j < slot_y0 + slot_l) return true;
    if (fold > 0 && k >= nz - fold && (j <= nw || j >= ny - nw - 1)) return true;
    return false;
  };

  Array3<AntennaCell> cells({nx, ny, nz}, AntennaCell::None);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int depth = std::min({i, j, k, nx - 1 - i, ny - 1 - j, nz - 1 - k});
        AntennaCell kind;
        if (depth < nw)
          kind = AntennaCell::Shell;
        else if (depth == nw)
          kind = in_aperture(i, j, k) ? AntennaCell::Cavity : AntennaCell::Coating;
        else
          kind = AntennaCell::Cavity;
        cells(i, j, k) = kind;
      }

  // Monopole sheet in the air layer just under the lid coating, entirely
  // within the aperture footprint so it does not short to the lid.
  const int m_len = round_half_up_cells(spec.monopole_length_mm, mm);
  const int m_wid = round_half_up_cells(spec.monopole_width_mm, mm);
  const int mk = nz - nw - 2;
  const int mx0 = detail::centered_start(nx, m_wid);
  const int my0 = detail::centered_start(ny, m_len);
  if (m_len < 1 || m_wid < 1) throw ResolutionError("monopole thinner than one cell");
  for (int j = my0; j < my0 + m_len; ++j)
    for (int i = mx0; i < mx0 + m_wid; ++i) {
      if (!cells.dims().contains(i, j, mk) ||
          cells(i, j, mk) != AntennaCell::Cavity)
        throw GeometryError("monopole sheet does not fit in the cavity");
      cells(i, j, mk) = AntennaCell::Monopole;
    }

  // Feed: z-directed edge spanning the air gap between the cavity floor
  // coating and the monopole sheet. For gaps taller than one cell the rest
  // of the pin is filled with conductor cells.
  const int feed_cells = round_half_up_cells(std::abs(spec.feed_offset_mm), mm) *
                         (spec.feed_offset_mm < 0 ? -1 : 1);
  Int3 port_node{mx0 + m_wid / 2, my0 + m_len / 2 + feed_cells, nw + 1};
  for (int dj : {-1, 0})
    for (int di : {-1, 0}) {
      const int ci = port_node.x + di, cj = port_node.y + dj;
      if (!cells.dims().contains(ci, cj, port_node.z) ||
          cells(ci, cj, port_node.z) != AntennaCell::Cavity)
        throw GeometryError("feed gap cells are not air; adjust feed position");
    }
  for (int k = port_node.z + 1; k < mk; ++k)
    for (int dj : {-1, 0})
      for (int di : {-1, 0}) {
        const int ci = port_node.x + di, cj = port_node.y + dj;
        if (cells(ci, cj, k) != AntennaCell::Cavity)
          throw GeometryError("feed pin blocked inside the cavity");
        cells(ci, cj, k) = AntennaCell::Monopole;
      }

  RasterizedAntenna out;
  out.spacing = spacing;
  out.frequency = f;
  out.spec = spec;

  if (quarter_turns % 4 == 0) {
    out.dims = {nx, ny, nz};
    out.cells = std::move(cells);
    out.port = {port_node, 50.0};
    return out;
  }

  // Apply the in-plane rotation as an exact permutation of cells and nodes.
  const int q = ((quarter_turns % 4) + 4) % 4;
  GridDims rd = (q % 2 == 0) ? GridDims{nx, ny, nz} : GridDims{ny, nx, nz};
  Array3<AntennaCell> rot(rd, AntennaCell::None);
  auto map_cell = [&](int i, int j) -> std::pair<int, int> {
    // rotated (i,j) -> canonical (i,j)
    switch (q) {
      case 1: return {j, ny - 1 - i};
      case 2: return {nx - 1 - i, ny - 1 - j};
      default: return {nx - 1 - j, i};  // q == 3
    }
  };
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < rd.ny; ++j)
      for (int i = 0; i < rd.nx; ++i) {
        auto [ci, cj] = map_cell(i, j);
        rot(i, j, k) = cells(ci, cj, k);
      }
  auto map_node_inv = [&](int ci, int cj) -> Int3 {
    // canonical node -> rotated node
    switch (q) {
      case 1: return {ny - cj, ci, 0};
      case 2: return {nx - ci, ny - cj, 0};
      default: return {cj, nx - ci, 0};  // q == 3
    }
  };
  Int3 rp = map_node_inv(port_node.x, port_node.y);
  rp.z = port_node.z;
  out.dims = rd;
  out.cells = std::move(rot);
  out.port = {rp, 50.0};
  return out;
}

// --- antenna spec file -------------------------------------------------------
// key value lines mirroring SlotAntennaSpec (mm / S/m), '#' comments.

inline SlotAntennaSpec parse_antenna_spec(std::istream& in) {
  SlotAntennaSpec s;
  std::string line;
  int lineno = 0;
  bool have_variant = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto num = [&](double& dst) {
      if (!(ls >> dst))
        throw ParseError("antenna spec line " + std::to_string(lineno) +
                         ": expected a number after '" + key + "'");
    };
    if (key == "variant") {
      std::string v;
      ls >> v;
      s = (variant_from_name(v) == AntennaVariant::OffBody)
              ? off_body_antenna_spec()
              : in_body_antenna_spec();
      have_variant = true;
    } else if (key == "box_mm") {
      num(s.box_l_mm);
      num(s.box_w_mm);
      num(s.box_h_mm);
    } else if (key == "slot_mm") {
      num(s.slot_length_mm);
      num(s.slot_width_mm);
    } else if (key == "wall_mm") {
      num(s.wall_mm);
    } else if (key == "shell_eps_r") {
      num(s.shell_eps_r);
    } else if (key == "shell_loss_tangent") {
      num(s.shell_loss_tangent);
    } else if (key == "coating_sigma") {
      num(s.coating_sigma);
    } else if (key == "coating_as_pec") {
      std::string v;
      ls >> v;
      s.coating_as_pec = (v == "true" || v == "1");
    } else if (key == "monopole_mm") {
      num(s.monopole_length_mm);
      num(s.monopole_width_mm);
    } else if (key == "monopole_thickness_mm") {
      num(s.monopole_thickness_mm);
    } else if (key == "monopole_sigma") {
      num(s.monopole_sigma);
    } else if (key == "feed_offset_mm") {
      num(s.feed_offset_mm);
    } else {
      throw ParseError("antenna spec line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
  if (!have_variant) throw ParseError("antenna spec must declare a variant");
  s.validate();
  return s;
}

inline void write_antenna_spec(std::ostream& out, const SlotAntennaSpec& s) {
  out << "variant " << variant_name(s.variant) << '\n'
      << "box_mm " << s.box_l_mm << ' ' << s.box_w_mm << ' ' << s.box_h_mm << '\n'
      << "slot_mm " << s.slot_length_mm << ' ' << s.slot_width_mm << '\n'
      << "wall_mm " << s.wall_mm << '\n'
      << "shell_eps_r " << s.shell_eps_r << '\n'
      << "shell_loss_tangent " << s.shell_loss_tangent << '\n'
      << "coating_sigma " << s.coating_sigma << '\n'
      << "coating_as_pec " << (s.coating_as_pec ? "true" : "false") << '\n'
      << "monopole_mm " << s.monopole_length_mm << ' ' << s.monopole_width_mm << '\n'
      << "monopole_thickness_mm " << s.monopole_thickness_mm << '\n'
      << "monopole_sigma " << s.monopole_sigma << '\n'
      << "feed_offset_mm " << s.feed_offset_mm << '\n';
}

}  // namespace rfdose
