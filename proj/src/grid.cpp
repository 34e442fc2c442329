#include "grid.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace polyspec {

namespace {

void finalize(GridDomain& g, const std::vector<std::array<int, 2>>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("make_grid: no interior nodes at this resolution");
  g.lo = {nodes[0][0], nodes[0][1]};
  g.hi = g.lo;
  for (const auto& ix : nodes) {
    for (int a = 0; a < 2; ++a) {
      g.lo[a] = std::min(g.lo[a], ix[a]);
      g.hi[a] = std::max(g.hi[a], ix[a]);
    }
  }
  g.node_index = nodes;
  g.ordinal.assign(static_cast<std::size_t>(g.span(0)) * g.span(1), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& ix = nodes[k];
    g.ordinal[static_cast<std::size_t>(ix[1] - g.lo[1]) * g.span(0) + (ix[0] - g.lo[0])] =
        static_cast<std::int32_t>(k);
  }
}

}  // namespace

bool GridDomain::connected() const {
  if (node_index.empty()) return false;
  std::vector<char> seen(size(), 0);
  std::vector<std::int32_t> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    const auto& ix = node_index[cur];
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    int ndirs = dim == 1 ? 2 : 4;
    for (int d = 0; d < ndirs; ++d) {
      auto nb = ordinal_at(ix[0] + di[d], ix[1] + dj[d]);
      if (nb >= 0 && !seen[nb]) {
        seen[nb] = 1;
        ++visited;
        stack.push_back(nb);
      }
    }
  }
  return visited == size();
}

GridDomain make_grid(const DomainSpec& domain, double h) {
  domain.validate();
  if (!(h > 0.0)) throw std::invalid_argument("make_grid: cell size must be positive");

  GridDomain g;
  g.dim = domain.dim;
  g.domain_label = domain.label();
  std::vector<std::array<int, 2>> nodes;

  switch (domain.kind) {
    case DomainKind::Interval: {
      long m = std::max<long>(2, std::lround(domain.length / h));
      g.h = domain.length / static_cast<double>(m);
      g.origin = {0.0, 0.0};
      for (long i = 1; i < m; ++i) nodes.push_back({static_cast<int>(i), 0});
      break;
    }
    case DomainKind::Box: {
      if (domain.dim != 2) throw std::invalid_argument("make_grid: box grids support dimension 2 only");
      long m0 = std::max<long>(2, std::lround(domain.lengths[0] / h));
      g.h = domain.lengths[0] / static_cast<double>(m0);
      g.origin = {0.0, 0.0};
      for (int j = 1; j * g.h < domain.lengths[1] - 1e-12 * domain.lengths[1]; ++j)
        for (int i = 1; i < m0; ++i) nodes.push_back({i, j});
      break;
    }
    case DomainKind::Ball: {
      if (domain.dim > 2) throw std::invalid_argument("make_grid: ball grids support dimension <= 2");
      long m = std::max<long>(2, std::lround(domain.radius / h));
      g.h = domain.radius / static_cast<double>(m);
      g.origin = {0.0, 0.0};
      double r2 = static_cast<double>(m) * m;  // radius^2 in lattice units
      if (domain.dim == 1) {
        for (long i = -(m - 1); i <= m - 1; ++i) nodes.push_back({static_cast<int>(i), 0});
      } else {
        for (long j = -(m - 1); j <= m - 1; ++j)
          for (long i = -(m - 1); i <= m - 1; ++i)
            if (static_cast<double>(i) * i + static_cast<double>(j) * j < r2)
              nodes.push_back({static_cast<int>(i), static_cast<int>(j)});
      }
      break;
    }
    case DomainKind::Mask: {
      const double cell = domain.mask.cell;
      long f = std::lround(cell / h);
      if (f < 1 || std::abs(f * h - cell) > 1e-9 * cell)
        throw std::invalid_argument("make_grid: mask cell size must be an integer multiple of h");
      g.h = cell / static_cast<double>(f);
      g.origin = {0.5 * g.h, 0.5 * g.h};  // nodes at subdivided cell midpoints
      for (int j = 0; j < domain.mask.height; ++j)
        for (int i = 0; i < domain.mask.width; ++i) {
          if (!domain.mask.at(i, j)) continue;
          for (long sj = 0; sj < f; ++sj)
            for (long si = 0; si < f; ++si)
              nodes.push_back({static_cast<int>(i * f + si), static_cast<int>(j * f + sj)});
        }
      break;
    }
  }

  finalize(g, nodes);
  return g;
}

}  // namespace polyspec
