#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spherebounds/packing_bounds.hpp"
#include "spherebounds/tetra_geometry.hpp"

namespace spherebounds {

struct SphericalCode {
  std::vector<Vec3> points;
  double min_angle = 0.0;

  [[nodiscard]] std::size_t size() const { return points.size(); }
};

enum class KnownCode { Antipodal, Tetrahedron, Octahedron, Cube, Icosahedron, FccKissing };

/// Parses "antipodal", "tetrahedron", ... ; throws std::invalid_argument.
KnownCode parse_known_code(std::string_view name);
std::string_view to_string(KnownCode code);
std::vector<KnownCode> all_known_codes();

/// Exact-coordinate witnesses. FCC kissing configuration: the twelve
/// permutations of (+-1, +-1, 0) / sqrt 2.
SphericalCode known_code(KnownCode code);
SphericalCode known_code(std::string_view name);

/// Exhaustive pairwise scan of arccos(p . q). Throws std::invalid_argument
/// for fewer than two points.
double min_angle(std::span<const Vec3> points);

struct CodeSearchOptions {
  int iterations = 1500;
  /// Stop growing past this size.
  std::size_t max_points = 200;
};

/// Grows N = 2, 3, ... and for each N runs `restarts` seeded repulsion
/// (Riesz energy with increasing exponent) optimizations; keeps the first
/// configuration reaching min angle >= theta. Stops at the first N where
/// every restart fails. The result is a witness: min_angle >= theta.
SphericalCode greedy_code_search(double theta, int restarts, std::uint64_t seed,
                                 const CodeSearchOptions& options = {});

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::size_t hits = 0;
};

inline constexpr std::size_t kMonteCarloChunks = 16;

/// Uniform samples in Delta (Dirichlet(1,1,1,1) barycentric weights from
/// exponential spacings); a hit is a sample within r_m of some vertex m.
/// Samples are drawn in kMonteCarloChunks fixed streams so the result does
/// not depend on `threads`. Requires samples >= 1e4.
MonteCarloEstimate monte_carlo_tetra_density(const RadiiQuadruple& radii, std::size_t samples,
                                             std::uint64_t seed, unsigned threads = 1);

/// Dihedral angle along edge (a, b) from the angle between the projections
/// of the two remaining vertices onto the plane orthogonal to the edge.
double dihedral_by_projection(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);
/// All six edge dihedrals of tet via dihedral_by_projection.
DihedralAngles dihedral_angles_by_projection(const TangentTetrahedron& tet);

/// Solid angle at apex subtended by triangle (a, b, c) via
/// tan(Omega/2) = |a.(b x c)| / (|a||b||c| + (a.b)|c| + (a.c)|b| + (b.c)|a|)
/// with a, b, c relative to the apex.
double solid_angle_van_oosterom(const Vec3& apex, const Vec3& a, const Vec3& b, const Vec3& c);
SolidAngles solid_angles_van_oosterom(const TangentTetrahedron& tet);

struct PlacedSphere {
  Vec3 center;
  double radius = 1.0;
  std::size_t species = 0;
};

inline constexpr double kContactTolerance = 1e-9;

struct ContactPacking {
  std::vector<PlacedSphere> spheres;
  /// All pairs (a < b) with |dist - (r_a + r_b)| <= kContactTolerance.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  [[nodiscard]] std::size_t contact_number() const { return edges.size(); }
  [[nodiscard]] double average_kissing() const;
  /// Largest (r_a + r_b) - dist over all pairs; <= 1e-9 for a valid packing.
  [[nodiscard]] double max_overlap() const;
  /// Number of contacts incident to sphere a.
  [[nodiscard]] std::size_t degree(std::size_t a) const;
};

/// Recomputes the complete tangency edge list by an O(n^2) scan.
std::vector<std::pair<std::size_t, std::size_t>> contact_edges(std::span<const PlacedSphere> spheres,
                                                                double tolerance = kContactTolerance);

/// Sequential deposition. Spheres are inserted in a seeded shuffled order;
/// each is tested at `attempts` candidate positions tangent to one, two or
/// three placed spheres and put where it makes the most contacts without
/// overlapping anything (first candidate wins ties).
ContactPacking greedy_contact_packing(const PackingSpec& spec, std::uint64_t seed, int attempts = 400);

}  // namespace spherebounds
