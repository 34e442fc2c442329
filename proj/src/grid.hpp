#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace polyspec {

/// Uniform-lattice discretization of a domain in 1-d or 2-d. Interior nodes
/// are the lattice points strictly inside the domain (cell midpoints for
/// masks); grid functions live on them and are extended by zero outside.
struct GridDomain {
  int dim = 1;
  double h = 0.0;
  std::string domain_label;

  // Lattice index window [lo, hi] per axis covering all interior nodes.
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> hi{0, 0};
  std::array<double, 2> origin{};  // physical position of lattice index 0

  std::vector<std::int32_t> ordinal;           // lattice -> interior ordinal, -1 outside
  std::vector<std::array<int, 2>> node_index;  // ordinal -> lattice index

  std::size_t size() const { return node_index.size(); }
  int span(int axis) const { return hi[axis] - lo[axis] + 1; }

  std::array<double, 2> position(std::size_t node) const {
    const auto& ix = node_index[node];
    return {origin[0] + ix[0] * h, dim > 1 ? origin[1] + ix[1] * h : 0.0};
  }

  std::int32_t ordinal_at(int i, int j) const {
    if (i < lo[0] || i > hi[0] || j < lo[1] || j > hi[1]) return -1;
    return ordinal[static_cast<std::size_t>(j - lo[1]) * span(0) + (i - lo[0])];
  }

  /// 2n-neighbour connectivity of the interior node set.
  bool connected() const;
};

/// Discretize a DomainSpec at cell size h. For interval/box domains the grid
/// is snapped so an integer number of cells spans each edge; the realized h
/// is stored on the result. Mask domains require the mask cell to be an
/// integer multiple of h.
GridDomain make_grid(const DomainSpec& domain, double h);

}  // namespace polyspec
