#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace spherebounds {

using Vec3 = Eigen::Vector3d;

/// Four positive radii kept sorted ascending: r_i <= r_j <= r_k <= r_l.
class RadiiQuadruple {
 public:
  /// Sorts the input. Throws std::invalid_argument on nonpositive or
  /// non-finite radii.
  explicit RadiiQuadruple(std::array<double, 4> radii);
  RadiiQuadruple(double a, double b, double c, double d)
      : RadiiQuadruple(std::array<double, 4>{a, b, c, d}) {}

  [[nodiscard]] const std::array<double, 4>& radii() const { return radii_; }
  double operator[](std::size_t m) const { return radii_[m]; }
  bool operator==(const RadiiQuadruple&) const = default;

 private:
  std::array<double, 4> radii_;
};

/// Vertex order is (i, j, k, l) = (0, 1, 2, 3), matching the sorted radii.
struct TangentTetrahedron {
  RadiiQuadruple radii;
  std::array<Vec3, 4> vertices;  ///< vertices[0] is the origin

  [[nodiscard]] double volume() const;
  /// |omega_j . (omega_k x omega_l)|, six times the volume.
  [[nodiscard]] double triple_product() const;
  /// Largest |dist(a, b) - (r_a + r_b)| over the six edges.
  [[nodiscard]] double tangency_residual() const;
};

/// Cayley-Menger determinant of the six tangent distances, divided by the
/// sixth power of the longest edge; equals 288 V^2 / e_max^6.
double normalized_cayley_menger(const RadiiQuadruple& radii);

/// Places omega_i at the origin, omega_j on +x, omega_k in the upper xy
/// half-plane and omega_l at positive z, all six pairs mutually tangent.
/// Throws DegenerateSimplex when the normalized Cayley-Menger determinant is
/// <= 1e-12, which happens for real radii when a small sphere would have to
/// fall through the gap between the other three.
TangentTetrahedron embed(const RadiiQuadruple& radii);

/// Face labels of a tetrahedron (i, j, k, l).
enum class Face { IJK = 0, IKL = 1, IJL = 2, JKL = 3 };

struct FaceNormals {
  /// U_ijk = w_j x w_k, U_ikl = w_k x w_l, U_ijl = w_j x w_l,
  /// U_jkl = (w_k - w_j) x (w_l - w_j), each then flipped to point away
  /// from the vertex opposite its face.
  std::array<Vec3, 4> normals;
  std::array<bool, 4> flipped{};

  const Vec3& operator[](Face f) const { return normals[static_cast<std::size_t>(f)]; }
};

FaceNormals face_normals(const TangentTetrahedron& tet);

/// Interior dihedral angles along the six edges. Vertex m sees the three
/// edges incident to it: A_m, B_m, C_m with
///   B_i = B_j (edge ij), B_k = B_l (edge kl),
///   A_j = A_k (edge jk), A_i = A_l (edge il),
///   C_i = C_k (edge ik), C_j = C_l (edge jl).
struct DihedralAngles {
  double ij = 0.0;
  double ik = 0.0;
  double il = 0.0;
  double jk = 0.0;
  double jl = 0.0;
  double kl = 0.0;

  /// (A_m, B_m, C_m) for vertex m in {0, 1, 2, 3}.
  [[nodiscard]] std::array<double, 3> at_vertex(std::size_t m) const;
  [[nodiscard]] std::array<double, 6> as_array() const { return {ij, ik, il, jk, jl, kl}; }
};

/// Dihedrals as pi - arccos(n1 . n2) of outward unit normals.
DihedralAngles dihedral_angles(const TangentTetrahedron& tet);
DihedralAngles dihedral_angles(const FaceNormals& normals);

struct SolidAngles {
  std::array<double, 4> omega{};
  double operator[](std::size_t m) const { return omega[m]; }
};

/// Girard: Omega_m = A_m + B_m + C_m - pi.
SolidAngles solid_angles(const DihedralAngles& angles);

/// Volume r^3 Omega / 3 of the cone sector of a radius-r ball with solid
/// angle Omega. Throws std::domain_error unless r > 0 and 0 <= Omega <= 4 pi.
double wedge_volume(double radius, double omega);

/// 2 sum_m r_m^3 Omega_m / |omega_j . (omega_k x omega_l)|.
double simplicial_density(const RadiiQuadruple& radii);
double simplicial_density(const TangentTetrahedron& tet);

/// True when every ball stays on its side of the opposite face, so that
/// ball cap Delta is exactly the cone sector counted by wedge_volume.
bool wedges_are_sectors(const TangentTetrahedron& tet);

/// Full geometric breakdown for one quadruple.
struct TetraReport {
  TangentTetrahedron tet;
  FaceNormals normals;
  DihedralAngles dihedrals;
  SolidAngles solid;
  std::array<double, 4> wedge_volumes{};
  double volume = 0.0;
  double density = 0.0;
  bool sectors = true;
};

TetraReport analyze_tetrahedron(const RadiiQuadruple& radii);

using DeltaMax = std::function<double(const RadiiQuadruple&)>;

struct DensityOptions {
  unsigned threads = 1;
  /// Skip quadruples that cannot be realized by four mutually tangent
  /// spheres instead of throwing DegenerateSimplex.
  bool skip_degenerate = false;
};

struct QuadrupleValue {
  RadiiQuadruple radii;
  double simplicial = 0.0;
  double delta_max = 1.0;
  double value = 0.0;  ///< delta_max * simplicial
  bool degenerate = false;
};

struct DensityBoundResult {
  double bound = 0.0;
  RadiiQuadruple argmax;
  std::size_t quadruples = 0;
  std::size_t skipped = 0;
  std::vector<QuadrupleValue> evaluated;  ///< lexicographic enumeration order
};

/// All multisets r_i <= r_j <= r_k <= r_l of the distinct values in radii,
/// in lexicographic order.
std::vector<RadiiQuadruple> enumerate_quadruples(std::span<const double> radii);

/// max over quadruples of delta_max(q) * simplicial_density(q). delta_max
/// defaults to the constant 1. Ties keep the lexicographically first
/// quadruple. Throws std::invalid_argument for an empty set and
/// DegenerateSimplex (naming the quadruple) unless skip_degenerate is set.
DensityBoundResult density_upper_bound(std::span<const double> radii, const DeltaMax& delta_max = {},
                                       const DensityOptions& options = {});

}  // namespace spherebounds
