#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace polyspec {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

std::size_t MaskBitmap::interior_count() const {
  std::size_t n = 0;
  for (auto v : inside) n += (v != 0);
  return n;
}

MaskBitmap read_pgm(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open mask file: " + path);

  auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    fail("truncated PGM file: " + path);
  };

  if (next_token() != "P2") fail("mask file is not ASCII PGM (P2): " + path);
  MaskBitmap m;
  m.width = std::stoi(next_token());
  m.height = std::stoi(next_token());
  if (m.width <= 0 || m.height <= 0) fail("bad PGM dimensions in " + path);
  (void)next_token();  // maxval, unused: any nonzero sample is interior
  m.inside.resize(static_cast<std::size_t>(m.width) * m.height);
  // PGM rows run top to bottom; store them bottom-up so row j maps to
  // increasing y.
  for (int r = 0; r < m.height; ++r) {
    int j = m.height - 1 - r;
    for (int i = 0; i < m.width; ++i) {
      int v = std::stoi(next_token());
      m.inside[static_cast<std::size_t>(j) * m.width + i] = v != 0;
    }
  }
  return m;
}

void write_pgm(const MaskBitmap& mask, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write mask file: " + path);
  out << "P2\n" << mask.width << " " << mask.height << "\n1\n";
  for (int r = 0; r < mask.height; ++r) {
    int j = mask.height - 1 - r;
    for (int i = 0; i < mask.width; ++i) {
      out << (mask.at(i, j) ? 1 : 0) << (i + 1 == mask.width ? '\n' : ' ');
    }
  }
}

DomainSpec DomainSpec::interval(double L) {
  DomainSpec d;
  d.kind = DomainKind::Interval;
  d.dim = 1;
  d.length = L;
  d.validate();
  return d;
}

DomainSpec DomainSpec::box(std::vector<double> edge_lengths) {
  DomainSpec d;
  d.kind = DomainKind::Box;
  d.dim = static_cast<int>(edge_lengths.size());
  d.lengths = std::move(edge_lengths);
  d.validate();
  return d;
}

DomainSpec DomainSpec::ball(double R, int n) {
  DomainSpec d;
  d.kind = DomainKind::Ball;
  d.dim = n;
  d.radius = R;
  d.validate();
  return d;
}

DomainSpec DomainSpec::from_mask(MaskBitmap m) {
  DomainSpec d;
  d.kind = DomainKind::Mask;
  d.dim = 2;
  d.mask = std::move(m);
  d.validate();
  return d;
}

void DomainSpec::validate() const {
  if (dim < 1 || dim > kMaxDim) fail("domain dimension must be in [1," + std::to_string(kMaxDim) + "]");
  switch (kind) {
    case DomainKind::Interval:
      if (dim != 1) fail("interval domains are one-dimensional");
      if (!(length > 0.0)) fail("interval length must be positive");
      break;
    case DomainKind::Box:
      if (static_cast<int>(lengths.size()) != dim) fail("box lengths must match dimension");
      for (double a : lengths)
        if (!(a > 0.0)) fail("box edge lengths must be positive");
      break;
    case DomainKind::Ball:
      if (!(radius > 0.0)) fail("ball radius must be positive");
      break;
    case DomainKind::Mask:
      if (dim != 2) fail("mask domains are two-dimensional");
      if (!(mask.cell > 0.0)) fail("mask cell size must be positive");
      if (mask.interior_count() == 0) fail("mask has no interior cells");
      break;
  }
}

double DomainSpec::diameter() const {
  switch (kind) {
    case DomainKind::Interval:
      return length;
    case DomainKind::Box: {
      double s = 0.0;
      for (double a : lengths) s += a * a;
      return std::sqrt(s);
    }
    case DomainKind::Ball:
      return 2.0 * radius;
    case DomainKind::Mask:
      return mask.cell * std::hypot(static_cast<double>(mask.width), static_cast<double>(mask.height));
  }
  return 0.0;
}

std::string DomainSpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case DomainKind::Interval:
      os << "interval(L=" << length << ")";
      break;
    case DomainKind::Box:
      os << "box(";
      for (std::size_t i = 0; i < lengths.size(); ++i) os << (i ? "x" : "") << lengths[i];
      os << ")";
      break;
    case DomainKind::Ball:
      os << "ball(R=" << radius << ",n=" << dim << ")";
      break;
    case DomainKind::Mask:
      os << "mask(" << mask.width << "x" << mask.height << ",cell=" << mask.cell << ")";
      break;
  }
  return os.str();
}

DomainSpec domain_from_json_text(const std::string& text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("domain JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) fail("domain: missing field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval") {
    if (!j.contains("length")) fail("domain: interval requires field 'length'");
    return DomainSpec::interval(j.at("length").get<double>());
  }
  if (kind == "box") {
    if (!j.contains("lengths") || !j.at("lengths").is_array()) fail("domain: box requires array field 'lengths'");
    return DomainSpec::box(j.at("lengths").get<std::vector<double>>());
  }
  if (kind == "ball") {
    if (!j.contains("radius")) fail("domain: ball requires field 'radius'");
    int n = j.value("dim", 2);
    return DomainSpec::ball(j.at("radius").get<double>(), n);
  }
  if (kind == "mask") {
    if (!j.contains("file")) fail("domain: mask requires field 'file'");
    if (!j.contains("cell")) fail("domain: mask requires field 'cell'");
    std::string file = j.at("file").get<std::string>();
    if (!base_dir.empty() && !file.empty() && file[0] != '/') file = base_dir + "/" + file;
    MaskBitmap m = read_pgm(file);
    m.cell = j.at("cell").get<double>();
    return DomainSpec::from_mask(std::move(m));
  }
  fail("domain: unknown kind '" + kind + "'");
}

std::string domain_to_json_text(const DomainSpec& d) {
  nlohmann::json j;
  switch (d.kind) {
    case DomainKind::Interval:
      j = {{"kind", "interval"}, {"length", d.length}};
      break;
    case DomainKind::Box:
      j = {{"kind", "box"}, {"lengths", d.lengths}};
      break;
    case DomainKind::Ball:
      j = {{"kind", "ball"}, {"radius", d.radius}, {"dim", d.dim}};
      break;
    case DomainKind::Mask:
      j = {{"kind", "mask"}, {"width", d.mask.width}, {"height", d.mask.height}, {"cell", d.mask.cell}};
      break;
  }
  return j.dump();
}

double unit_ball_volume(int n) {
  if (n < 1) fail("unit_ball_volume: dimension must be >= 1");
  // B_n = pi^(n/2) / Gamma(n/2 + 1), evaluated in log space.
  return std::exp(0.5 * n * std::log(kPi) - std::lgamma(0.5 * n + 1.0));
}

double inertia_floor(int n, double volume) {
  if (n < 1) fail("inertia_floor: dimension must be >= 1");
  if (!(volume > 0.0)) fail("inertia_floor: volume must be positive");
  double ratio = volume / unit_ball_volume(n);
  return n / (n + 2.0) * volume * std::pow(ratio, 2.0 / n);
}

GeometrySummary measure(const DomainSpec& domain) {
  domain.validate();
  if (!domain.analytic()) fail("measure: analytic path is unavailable for mask domains");
  GeometrySummary g;
  switch (domain.kind) {
    case DomainKind::Interval:
      g.volume = domain.length;
      g.centroid[0] = 0.5 * domain.length;
      g.inertia = std::pow(domain.length, 3) / 12.0;
      break;
    case DomainKind::Box: {
      g.volume = 1.0;
      double second = 0.0;  // sum of a_i^2/12
      for (int i = 0; i < domain.dim; ++i) {
        g.volume *= domain.lengths[i];
        g.centroid[i] = 0.5 * domain.lengths[i];
        second += domain.lengths[i] * domain.lengths[i] / 12.0;
      }
      g.inertia = g.volume * second;
      break;
    }
    case DomainKind::Ball: {
      int n = domain.dim;
      double R = domain.radius;
      g.volume = unit_ball_volume(n) * std::pow(R, n);
      // int_ball |x|^2 dx = n B_n R^(n+2)/(n+2) = n/(n+2) V R^2
      g.inertia = n / (n + 2.0) * g.volume * R * R;
      break;
    }
    case DomainKind::Mask:
      break;  // unreachable
  }
  g.rearranged_radius = std::pow(g.volume / unit_ball_volume(domain.dim), 1.0 / domain.dim);
  g.quad_tolerance = 0.0;
  return g;
}

GeometrySummary measure(const DomainSpec& domain, double resolution) {
  domain.validate();
  if (!(resolution > 0.0)) fail("measure: resolution must be positive");
  const int n = domain.dim;
  double h = resolution;

  // Enumerate midpoints of cells whose midpoint lies inside the domain.
  std::vector<std::array<double, kMaxDim>> pts;
  if (domain.kind == DomainKind::Mask) {
    // Subdivide mask cells so midpoint quadrature can refine below the bitmap
    // resolution.
    const double cell = domain.mask.cell;
    int f = static_cast<int>(std::llround(cell / h));
    if (f < 1 || std::abs(f * h - cell) > 1e-9 * cell)
      fail("measure: mask resolution must evenly divide the mask cell size");
    h = cell / f;
    for (int j = 0; j < domain.mask.height; ++j)
      for (int i = 0; i < domain.mask.width; ++i) {
        if (!domain.mask.at(i, j)) continue;
        for (int sj = 0; sj < f; ++sj)
          for (int si = 0; si < f; ++si)
            pts.push_back({i * cell + (si + 0.5) * h, j * cell + (sj + 0.5) * h, 0.0});
      }
  } else {
    // Bounding box per kind; midpoint-in test.
    std::array<double, kMaxDim> lo{}, hi{};
    switch (domain.kind) {
      case DomainKind::Interval:
        lo[0] = 0.0;
        hi[0] = domain.length;
        break;
      case DomainKind::Box:
        for (int i = 0; i < n; ++i) hi[i] = domain.lengths[i];
        break;
      case DomainKind::Ball:
        for (int i = 0; i < n; ++i) {
          lo[i] = -domain.radius;
          hi[i] = domain.radius;
        }
        break;
      default:
        break;
    }
    std::array<int, kMaxDim> counts{1, 1, 1};
    for (int i = 0; i < n; ++i) counts[i] = std::max(1, static_cast<int>(std::ceil((hi[i] - lo[i]) / h)));
    std::array<int, kMaxDim> idx{};
    auto inside = [&](const std::array<double, kMaxDim>& x) {
      switch (domain.kind) {
        case DomainKind::Interval:
          return x[0] > 0.0 && x[0] < domain.length;
        case DomainKind::Box:
          for (int i = 0; i < n; ++i)
            if (x[i] <= 0.0 || x[i] >= domain.lengths[i]) return false;
          return true;
        case DomainKind::Ball: {
          double r2 = 0.0;
          for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
          return r2 < domain.radius * domain.radius;
        }
        default:
          return false;
      }
    };
    for (;;) {
      std::array<double, kMaxDim> x{};
      for (int i = 0; i < n; ++i) x[i] = lo[i] + (idx[i] + 0.5) * h;
      if (inside(x)) pts.push_back(x);
      int d = 0;
      while (d < n && ++idx[d] == counts[d]) idx[d++] = 0;
      if (d == n) break;
    }
  }

  if (pts.empty()) fail("measure: no quadrature cells fall inside the domain at this resolution");

  const double cell_vol = std::pow(h, n);
  GeometrySummary g;
  g.volume = cell_vol * static_cast<double>(pts.size());
  for (const auto& x : pts)
    for (int i = 0; i < n; ++i) g.centroid[i] += x[i];
  for (int i = 0; i < n; ++i) g.centroid[i] *= cell_vol / g.volume;
  // Second moment about the centroid.
  double second = 0.0;
  for (const auto& x : pts)
    for (int i = 0; i < n; ++i) {
      double d = x[i] - g.centroid[i];
      second += d * d;
    }
  g.inertia = second * cell_vol;
  g.rearranged_radius = std::pow(g.volume / unit_ball_volume(n), 1.0 / n);
  double diam = domain.diameter();
  g.quad_tolerance = 5.0 * h * diam * diam * g.volume;
  return g;
}

}  // namespace polyspec
