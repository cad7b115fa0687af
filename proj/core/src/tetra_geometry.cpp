#include "spherebounds/tetra_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "spherebounds/errors.hpp"
#include "spherebounds/parallel.hpp"

namespace spherebounds {
namespace {

constexpr double kCayleyMengerFloor = 1e-12;

std::string describe(const RadiiQuadruple& q) {
  std::ostringstream out;
  out.precision(17);
  out << "(" << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ")";
  return out.str();
}

// pi - arccos(n1 . n2) for unit outward normals, evaluated through atan2 so
// that angles near 0 or pi keep full precision.
double dihedral_between(const Vec3& outward1, const Vec3& outward2) {
  const Vec3 a = outward1.normalized();
  const Vec3 b = outward2.normalized();
  return std::numbers::pi - std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

RadiiQuadruple::RadiiQuadruple(std::array<double, 4> radii) : radii_(radii) {
  for (double r : radii_) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radii must be positive and finite");
  }
  std::sort(radii_.begin(), radii_.end());
}

double TangentTetrahedron::triple_product() const {
  return std::abs(vertices[1].dot(vertices[2].cross(vertices[3])));
}

double TangentTetrahedron::volume() const {
  const Vec3 a = vertices[1] - vertices[0];
  const Vec3 b = vertices[2] - vertices[0];
  const Vec3 c = vertices[3] - vertices[0];
  return std::abs(a.dot(b.cross(c))) / 6.0;
}

double TangentTetrahedron::tangency_residual() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      const double d = (vertices[a] - vertices[b]).norm();
      worst = std::max(worst, std::abs(d - (radii[a] + radii[b])));
    }
  }
  return worst;
}

double normalized_cayley_menger(const RadiiQuadruple& radii) {
  Eigen::Matrix<double, 5, 5> cm;
  cm.setZero();
  double longest = 0.0;
  for (int a = 0; a < 4; ++a) {
    cm(0, a + 1) = cm(a + 1, 0) = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const double e = radii[a] + radii[b];
      longest = std::max(longest, e);
    }
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const double e = (radii[a] + radii[b]) / longest;
      cm(a + 1, b + 1) = e * e;
    }
  }
  return cm.determinant();
}

TangentTetrahedron embed(const RadiiQuadruple& radii) {
  const double cm = normalized_cayley_menger(radii);
  if (!(cm > kCayleyMengerFloor)) {
    std::ostringstream msg;
    msg << "quadruple " << describe(radii) << " admits no mutually tangent embedding (normalized Cayley-Menger "
        << cm << ")";
    throw DegenerateSimplex(msg.str());
  }
  const auto d = [&](int a, int b) { return radii[a] + radii[b]; };
  const double dij = d(0, 1);
  const double dik = d(0, 2);
  const double dil = d(0, 3);
  const double djk = d(1, 2);
  const double djl = d(1, 3);
  const double dkl = d(2, 3);

  TangentTetrahedron tet{radii, {}};
  tet.vertices[0] = Vec3::Zero();
  tet.vertices[1] = Vec3(dij, 0.0, 0.0);

  const double xk = (dij * dij + dik * dik - djk * djk) / (2.0 * dij);
  const double yk = std::sqrt(std::max(0.0, dik * dik - xk * xk));
  tet.vertices[2] = Vec3(xk, yk, 0.0);

  const double xl = (dij * dij + dil * dil - djl * djl) / (2.0 * dij);
  const double yl = (dil * dil - dkl * dkl + xk * xk + yk * yk - 2.0 * xl * xk) / (2.0 * yk);
  const double zl2 = dil * dil - xl * xl - yl * yl;
  if (!(zl2 > 0.0)) {
    throw DegenerateSimplex("quadruple " + describe(radii) + " trilaterates to a flat tetrahedron");
  }
  tet.vertices[3] = Vec3(xl, yl, std::sqrt(zl2));
  return tet;
}

FaceNormals face_normals(const TangentTetrahedron& tet) {
  const Vec3& wi = tet.vertices[0];
  const Vec3& wj = tet.vertices[1];
  const Vec3& wk = tet.vertices[2];
  const Vec3& wl = tet.vertices[3];

  FaceNormals out;
  out.normals[0] = wj.cross(wk);                // U_ijk, opposite l
  out.normals[1] = wk.cross(wl);                // U_ikl, opposite j
  out.normals[2] = wj.cross(wl);                // U_ijl, opposite k
  out.normals[3] = (wk - wj).cross(wl - wj);    // U_jkl, opposite i

  // A point on each face and the vertex opposite it.
  const std::array<const Vec3*, 4> on_face{&wi, &wi, &wi, &wj};
  const std::array<const Vec3*, 4> opposite{&wl, &wj, &wk, &wi};

  double scale = 0.0;
  for (const Vec3& v : tet.vertices) scale = std::max(scale, v.norm());
  scale = std::max(scale, tet.radii[3]);
  if (!(std::abs(tet.triple_product()) > 1e-12 * scale * scale * scale)) {
    throw DegenerateSimplex("flat tetrahedron for quadruple " + describe(tet.radii));
  }
  for (std::size_t f = 0; f < 4; ++f) {
    if (!(out.normals[f].norm() > 1e-14 * scale * scale)) {
      throw DegenerateSimplex("face normal vanished for quadruple " + describe(tet.radii));
    }
    if (out.normals[f].dot(*opposite[f] - *on_face[f]) > 0.0) {
      out.normals[f] = -out.normals[f];
      out.flipped[f] = true;
    }
  }
  return out;
}

std::array<double, 3> DihedralAngles::at_vertex(std::size_t m) const {
  switch (m) {
    case 0: return {il, ij, ik};
    case 1: return {jk, ij, jl};
    case 2: return {jk, kl, ik};
    case 3: return {il, kl, jl};
    default: throw std::out_of_range("vertex index must be 0..3");
  }
}

DihedralAngles dihedral_angles(const FaceNormals& n) {
  DihedralAngles a;
  a.ij = dihedral_between(n[Face::IJK], n[Face::IJL]);
  a.ik = dihedral_between(n[Face::IJK], n[Face::IKL]);
  a.il = dihedral_between(n[Face::IKL], n[Face::IJL]);
  a.jk = dihedral_between(n[Face::IJK], n[Face::JKL]);
  a.jl = dihedral_between(n[Face::IJL], n[Face::JKL]);
  a.kl = dihedral_between(n[Face::IKL], n[Face::JKL]);
  return a;
}

DihedralAngles dihedral_angles(const TangentTetrahedron& tet) { return dihedral_angles(face_normals(tet)); }

SolidAngles solid_angles(const DihedralAngles& angles) {
  SolidAngles s;
  for (std::size_t m = 0; m < 4; ++m) {
    const auto [a, b, c] = angles.at_vertex(m);
    s.omega[m] = a + b + c - std::numbers::pi;
  }
  return s;
}

double wedge_volume(double radius, double omega) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::domain_error("wedge_volume: radius must be positive");
  if (!(omega >= 0.0) || omega > 4.0 * std::numbers::pi + 1e-12) {
    throw std::domain_error("wedge_volume: solid angle outside [0, 4 pi]");
  }
  return radius * radius * radius * omega / 3.0;
}

double simplicial_density(const TangentTetrahedron& tet) {
  const SolidAngles s = solid_angles(dihedral_angles(tet));
  double sum = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    const double r = tet.radii[m];
    sum += r * r * r * s[m];
  }
  return 2.0 * sum / tet.triple_product();
}

double simplicial_density(const RadiiQuadruple& radii) { return simplicial_density(embed(radii)); }

bool wedges_are_sectors(const TangentTetrahedron& tet) {
  for (std::size_t m = 0; m < 4; ++m) {
    std::array<Vec3, 3> face;
    std::size_t f = 0;
    for (std::size_t v = 0; v < 4; ++v) {
      if (v != m) face[f++] = tet.vertices[v];
    }
    const Vec3 normal = (face[1] - face[0]).cross(face[2] - face[0]).normalized();
    const double height = std::abs(normal.dot(tet.vertices[m] - face[0]));
    if (height < tet.radii[m] * (1.0 - 1e-12)) return false;
  }
  return true;
}

TetraReport analyze_tetrahedron(const RadiiQuadruple& radii) {
  TetraReport report{embed(radii), {}, {}, {}, {}, 0.0, 0.0, true};
  report.normals = face_normals(report.tet);
  report.dihedrals = dihedral_angles(report.normals);
  report.solid = solid_angles(report.dihedrals);
  for (std::size_t m = 0; m < 4; ++m) report.wedge_volumes[m] = wedge_volume(radii[m], report.solid[m]);
  report.volume = report.tet.volume();
  report.density = simplicial_density(report.tet);
  report.sectors = wedges_are_sectors(report.tet);
  return report;
}

std::vector<RadiiQuadruple> enumerate_quadruples(std::span<const double> radii) {
  std::vector<double> values(radii.begin(), radii.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<RadiiQuadruple> out;
  const std::size_t n = values.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        for (std::size_t d = c; d < n; ++d) out.emplace_back(values[a], values[b], values[c], values[d]);
  return out;
}

DensityBoundResult density_upper_bound(std::span<const double> radii, const DeltaMax& delta_max,
                                       const DensityOptions& options) {
  if (radii.empty()) throw std::invalid_argument("density_upper_bound: empty radius set");
  const std::vector<RadiiQuadruple> quads = enumerate_quadruples(radii);

  std::vector<QuadrupleValue> values;
  values.reserve(quads.size());
  for (const auto& q : quads) values.push_back({.radii = q});

  parallel_for(values.size(), options.threads, [&](std::size_t idx) {
    QuadrupleValue& v = values[idx];
    try {
      v.simplicial = simplicial_density(v.radii);
    } catch (const DegenerateSimplex&) {
      if (!options.skip_degenerate) throw;
      v.degenerate = true;
      return;
    }
    v.delta_max = delta_max ? delta_max(v.radii) : 1.0;
    if (!(v.delta_max > 0.0) || v.delta_max > 1.0) {
      throw std::invalid_argument("delta_max must lie in (0, 1] for quadruple " + describe(v.radii));
    }
    v.value = v.delta_max * v.simplicial;
  });

  DensityBoundResult result{0.0, quads.front(), quads.size(), 0, {}};
  bool found = false;
  for (const auto& v : values) {
    if (v.degenerate) {
      ++result.skipped;
      continue;
    }
    if (!found || v.value > result.bound) {
      result.bound = v.value;
      result.argmax = v.radii;
      found = true;
    }
  }
  if (!found) throw DegenerateSimplex("density_upper_bound: no quadruple of the radius set is realizable");
  result.evaluated = std::move(values);
  return result;
}

}  // namespace spherebounds
