#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mlswe/lgl.hpp"

namespace mlswe {

/// Faces of the reference square: 0: xi = -1, 1: xi = +1, 2: eta = -1, 3: eta = +1.
/// Face node k runs along the increasing tangential reference coordinate.
inline constexpr int kFaces = 4;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using ElementMap = std::function<Point(double xi, double eta)>;

/// Nodal geometry of one curvilinear quadrilateral; node (i, j) is stored at
/// j * (N+1) + i with i along xi.
struct ElementGeometry {
  int n = 0;
  std::vector<double> x, y, J;
  std::vector<double> Ja1x, Ja1y, Ja2x, Ja2y;
  /// Outward normals scaled by the surface Jacobian, per face and face node.
  std::array<std::vector<Normal>, kFaces> normal;

  [[nodiscard]] int idx(int i, int j) const { return j * n + i; }

  /// Volume node that carries face node k of face f.
  [[nodiscard]] int face_node(int f, int k) const {
    switch (f) {
      case 0: return idx(0, k);
      case 1: return idx(n - 1, k);
      case 2: return idx(k, 0);
      default: return idx(k, n - 1);
    }
  }
};

inline ElementGeometry build_geometry(const std::vector<double>& x, const std::vector<double>& y,
                                      const LGLOperators& ops, int element_id = 0) {
  ElementGeometry g;
  const int n = ops.n();
  g.n = n;
  g.x = x;
  g.y = y;
  const int nn = n * n;
  // differences x_l - x_i remove the rounding of the zero row sums of D
  std::vector<double> xxi(nn, 0.0), xeta(nn, 0.0), yxi(nn, 0.0), yeta(nn, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int p = g.idx(i, j);
      for (int l = 0; l < n; ++l) {
        if (l == i && l == j) continue;
        if (l != i) {
          xxi[p] += ops.d(i, l) * (x[g.idx(l, j)] - x[p]);
          yxi[p] += ops.d(i, l) * (y[g.idx(l, j)] - y[p]);
        }
        if (l != j) {
          xeta[p] += ops.d(j, l) * (x[g.idx(i, l)] - x[p]);
          yeta[p] += ops.d(j, l) * (y[g.idx(i, l)] - y[p]);
        }
      }
    }
  g.J.resize(nn);
  g.Ja1x.resize(nn);
  g.Ja1y.resize(nn);
  g.Ja2x.resize(nn);
  g.Ja2y.resize(nn);
  for (int p = 0; p < nn; ++p) {
    g.Ja1x[p] = yeta[p];
    g.Ja1y[p] = -xeta[p];
    g.Ja2x[p] = -yxi[p];
    g.Ja2y[p] = xxi[p];
    g.J[p] = xxi[p] * yeta[p] - xeta[p] * yxi[p];
    if (!(g.J[p] > 0.0))
      throw MeshError("non-positive Jacobian in element " + std::to_string(element_id) + " at node " +
                      std::to_string(p));
  }
  for (int f = 0; f < kFaces; ++f) {
    g.normal[f].resize(n);
    for (int k = 0; k < n; ++k) {
      const int p = g.face_node(f, k);
      switch (f) {
        case 0: g.normal[f][k] = {-g.Ja1x[p], -g.Ja1y[p]}; break;
        case 1: g.normal[f][k] = {g.Ja1x[p], g.Ja1y[p]}; break;
        case 2: g.normal[f][k] = {-g.Ja2x[p], -g.Ja2y[p]}; break;
        default: g.normal[f][k] = {g.Ja2x[p], g.Ja2y[p]}; break;
      }
    }
  }
  return g;
}

inline ElementGeometry build_geometry(const ElementMap& map, const LGLOperators& ops, int element_id = 0) {
  const int n = ops.n();
  std::vector<double> x(n * n), y(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Point p = map(ops.xi[i], ops.xi[j]);
      x[j * n + i] = p.x;
      y[j * n + i] = p.y;
    }
  return build_geometry(x, y, ops, element_id);
}

/// Largest nodal residual of the discrete metric identities of one element.
inline double metric_identity_residual(const ElementGeometry& g, const LGLOperators& ops) {
  const int n = g.n;
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double rx = 0.0, ry = 0.0;
      for (int l = 0; l < n; ++l) {
        rx += ops.d(i, l) * g.Ja1x[g.idx(l, j)] + ops.d(j, l) * g.Ja2x[g.idx(i, l)];
        ry += ops.d(i, l) * g.Ja1y[g.idx(l, j)] + ops.d(j, l) * g.Ja2y[g.idx(i, l)];
      }
      worst = std::max({worst, std::abs(rx), std::abs(ry)});
    }
  return worst;
}

struct FaceLink {
  int element = -1;  ///< -1 marks a wall
  int face = -1;
  bool reversed = false;
};

struct Mesh2D {
  std::vector<ElementGeometry> geometry;
  std::vector<std::array<FaceLink, kFaces>> links;
  double area = 0.0;

  [[nodiscard]] int size() const { return static_cast<int>(geometry.size()); }
};

inline double mesh_area(const Mesh2D& m, const LGLOperators& ops) {
  double a = 0.0;
  for (const auto& g : m.geometry)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) a += g.J[g.idx(i, j)] * ops.w[i] * ops.w[j];
  return a;
}

/// Sinusoidal warp of a rectangle that keeps its boundary fixed.
struct Warp {
  double amplitude = 0.0;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  [[nodiscard]] Point operator()(double x, double y) const {
    const double Lx = x1 - x0, Ly = y1 - y0;
    const double d = amplitude * std::min(Lx, Ly) * sin_2pi((x - x0) / Lx) * sin_2pi((y - y0) / Ly);
    return {x + d, y - d};
  }

  /// sin(2 pi s) with the argument reduced first, so periodic images agree bitwise.
  static double sin_2pi(double s) {
    const double t = 2.0 * (s - std::round(s));
    return std::sin(std::numbers::pi * t);
  }
};

/// nx by ny elements on [x0,x1] x [y0,y1] with an optional warp; element
/// (ix, iy) has index iy * nx + ix.
inline Mesh2D structured_mesh(int nx, int ny, double x0, double x1, double y0, double y1, double warp,
                              bool periodic, const LGLOperators& ops) {
  if (nx < 1 || ny < 1) throw ConfigError("mesh needs at least one element per direction");
  if (periodic && (nx < 2 || ny < 2)) throw ConfigError("periodic meshes need at least two elements per direction");
  Mesh2D m;
  const Warp w{warp, x0, x1, y0, y1};
  const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      ElementMap map = [=](double xi, double eta) {
        return w(x0 + (ix + 0.5 * (xi + 1.0)) * hx, y0 + (iy + 0.5 * (eta + 1.0)) * hy);
      };
      m.geometry.push_back(build_geometry(map, ops, iy * nx + ix));
      std::array<FaceLink, kFaces> l;
      auto at = [&](int jx, int jy) { return jy * nx + jx; };
      if (ix > 0 || periodic) l[0] = {at((ix + nx - 1) % nx, iy), 1, false};
      if (ix < nx - 1 || periodic) l[1] = {at((ix + 1) % nx, iy), 0, false};
      if (iy > 0 || periodic) l[2] = {at(ix, (iy + ny - 1) % ny), 3, false};
      if (iy < ny - 1 || periodic) l[3] = {at(ix, (iy + 1) % ny), 2, false};
      m.links.push_back(l);
    }
  m.area = mesh_area(m, ops);
  return m;
}

/// Lagrange interpolant through equispaced samples on [-1, 1].
inline Point interpolate_curve(const std::vector<Point>& s, double t) {
  const int p = static_cast<int>(s.size()) - 1;
  Point r;
  for (int j = 0; j <= p; ++j) {
    double l = 1.0;
    const double tj = -1.0 + 2.0 * j / p;
    for (int k = 0; k <= p; ++k)
      if (k != j) l *= (t - (-1.0 + 2.0 * k / p)) / (tj - (-1.0 + 2.0 * k / p));
    r.x += l * s[j].x;
    r.y += l * s[j].y;
  }
  return r;
}

/// Transfinite (Gordon-Hall) map from four boundary curves. Curves follow the
/// face convention: 0 left and 1 right run bottom to top, 2 bottom and 3 top
/// run left to right.
inline ElementMap transfinite_map(std::array<std::vector<Point>, kFaces> edges) {
  return [edges = std::move(edges)](double xi, double eta) {
    const Point l = interpolate_curve(edges[0], eta), r = interpolate_curve(edges[1], eta);
    const Point b = interpolate_curve(edges[2], xi), t = interpolate_curve(edges[3], xi);
    const Point c00 = edges[2].front(), c10 = edges[2].back(), c01 = edges[3].front(), c11 = edges[3].back();
    const double a0 = 0.5 * (1.0 - xi), a1 = 0.5 * (1.0 + xi), e0 = 0.5 * (1.0 - eta), e1 = 0.5 * (1.0 + eta);
    auto blend = [&](double lv, double rv, double bv, double tv, double v00, double v10, double v01, double v11) {
      return a0 * lv + a1 * rv + e0 * bv + e1 * tv - (a0 * e0 * v00 + a1 * e0 * v10 + a0 * e1 * v01 + a1 * e1 * v11);
    };
    return Point{blend(l.x, r.x, b.x, t.x, c00.x, c10.x, c01.x, c11.x),
                 blend(l.y, r.y, b.y, t.y, c00.y, c10.y, c01.y, c11.y)};
  };
}

/// Connects faces whose end points coincide; unmatched faces become walls.
inline void connect_faces(Mesh2D& m, double tol) {
  const int K = m.size();
  auto ends = [&](int e, int f) {
    const auto& g = m.geometry[e];
    const int p0 = g.face_node(f, 0), p1 = g.face_node(f, g.n - 1);
    return std::array<Point, 2>{Point{g.x[p0], g.y[p0]}, Point{g.x[p1], g.y[p1]}};
  };
  auto same = [&](Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y) <= tol; };
  m.links.assign(K, {});
  for (int e = 0; e < K; ++e)
    for (int f = 0; f < kFaces; ++f) {
      const auto a = ends(e, f);
      for (int o = 0; o < K && m.links[e][f].element < 0; ++o)
        for (int g = 0; g < kFaces; ++g) {
          if (o == e && g == f) continue;
          const auto b = ends(o, g);
          if (same(a[0], b[0]) && same(a[1], b[1])) {
            m.links[e][f] = {o, g, false};
            break;
          }
          if (same(a[0], b[1]) && same(a[1], b[0])) {
            m.links[e][f] = {o, g, true};
            break;
          }
        }
    }
}

/// Text mesh format:
///   elements K
///   then per element:
///     x0 y0 x1 y1 x2 y2 x3 y3          corners counter-clockwise, starting bottom-left
///     optional lines "edge f p" followed by p+1 points "x y" (equispaced samples)
/// Lines starting with '#' are comments.
inline Mesh2D read_mesh(std::istream& in, const LGLOperators& ops) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    const auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  std::size_t cur = 0;
  auto next = [&]() -> std::istringstream {
    if (cur >= lines.size()) throw MeshError("unexpected end of mesh file");
    return std::istringstream(lines[cur++]);
  };
  std::string key;
  int K = 0;
  next() >> key >> K;
  if (key != "elements" || K < 1) throw MeshError("mesh file must start with 'elements K'");
  Mesh2D m;
  double scale = 0.0;
  for (int e = 0; e < K; ++e) {
    std::array<Point, 4> c;
    auto cl = next();
    for (auto& p : c)
      if (!(cl >> p.x >> p.y)) throw MeshError("element " + std::to_string(e) + ": expected 4 corners");
    // corners 0..3 CCW: bottom-left, bottom-right, top-right, top-left
    std::array<std::vector<Point>, kFaces> edges = {std::vector<Point>{c[0], c[3]}, std::vector<Point>{c[1], c[2]},
                                                    std::vector<Point>{c[0], c[1]}, std::vector<Point>{c[3], c[2]}};
    while (cur < lines.size()) {
      std::istringstream peek(lines[cur]);
      std::string word;
      peek >> word;
      if (word != "edge") break;
      ++cur;
      int f = -1, p = 0;
      peek >> f >> p;
      if (f < 0 || f >= kFaces || p < 1) throw MeshError("element " + std::to_string(e) + ": bad edge header");
      std::vector<Point> s(p + 1);
      for (auto& q : s) {
        auto pl = next();
        if (!(pl >> q.x >> q.y)) throw MeshError("element " + std::to_string(e) + ": bad edge sample");
      }
      edges[f] = s;
    }
    for (const auto& p : c) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    m.geometry.push_back(build_geometry(transfinite_map(edges), ops, e));
  }
  connect_faces(m, 1e-9 * std::max(scale, 1.0));
  m.area = mesh_area(m, ops);
  return m;
}

inline Mesh2D read_mesh_file(const std::string& path, const LGLOperators& ops) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path);
  return read_mesh(in, ops);
}

}  // namespace mlswe
