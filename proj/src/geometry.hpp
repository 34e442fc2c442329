#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace polyspec {

inline constexpr int kMaxDim = 3;

/// Bitmap of interior cells, row-major, nonzero = interior. Cell (i,j) covers
/// [i*cell,(i+1)*cell] x [j*cell,(j+1)*cell] with j counted upward from row 0.
struct MaskBitmap {
  int width = 0;
  int height = 0;
  double cell = 1.0;
  std::vector<std::uint8_t> inside;

  bool at(int i, int j) const { return inside[static_cast<std::size_t>(j) * width + i] != 0; }
  std::size_t interior_count() const;
};

MaskBitmap read_pgm(const std::string& path);
void write_pgm(const MaskBitmap& mask, const std::string& path);

enum class DomainKind { Interval, Box, Ball, Mask };

/// A bounded domain: interval (0,L), box (0,a1)x...x(0,an), ball |x|<R, or a
/// 2-d cell mask.
struct DomainSpec {
  DomainKind kind = DomainKind::Interval;
  int dim = 1;
  double length = 0.0;            // interval
  std::vector<double> lengths;    // box
  double radius = 0.0;            // ball
  MaskBitmap mask;                // mask

  static DomainSpec interval(double L);
  static DomainSpec box(std::vector<double> edge_lengths);
  static DomainSpec ball(double R, int n);
  static DomainSpec from_mask(MaskBitmap m);

  void validate() const;
  bool analytic() const { return kind != DomainKind::Mask; }
  double diameter() const;
  std::string label() const;
};

/// Parse the DomainSpec JSON schema:
///   {"kind":"interval","length":L} | {"kind":"box","lengths":[...]} |
///   {"kind":"ball","radius":R,"dim":n} | {"kind":"mask","file":"m.pgm","cell":h}
/// Mask file paths are resolved relative to base_dir when not absolute.
DomainSpec domain_from_json_text(const std::string& text, const std::string& base_dir = "");
std::string domain_to_json_text(const DomainSpec& d);

struct GeometrySummary {
  double volume = 0.0;
  std::array<double, kMaxDim> centroid{};
  double inertia = 0.0;            // second moment about the centroid
  double rearranged_radius = 0.0;  // (V/B_n)^(1/n)
  double quad_tolerance = 0.0;     // 0 on the analytic path
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Rearrangement lower bound on the moment of inertia:
/// n/(n+2) * V * (V/B_n)^(2/n). Any domain of volume V has inertia >= this,
/// with equality for balls.
double inertia_floor(int n, double volume);

/// Exact V, centroid, inertia for interval/box/ball domains.
GeometrySummary measure(const DomainSpec& domain);

/// Midpoint-quadrature V, centroid, inertia at the given cell size. Works for
/// every domain kind; the only choice for masks (resolution must divide the
/// mask cell evenly). quad_tolerance = 5*h*diam^2*V.
GeometrySummary measure(const DomainSpec& domain, double resolution);

}  // namespace polyspec
