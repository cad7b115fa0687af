#include "spherebounds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <Eigen/Geometry>

#include "spherebounds/parallel.hpp"
#include "spherebounds/rng.hpp"

namespace spherebounds {

KnownCode parse_known_code(std::string_view name) {
  for (KnownCode c : all_known_codes()) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown spherical code '" + std::string(name) + "'");
}

std::string_view to_string(KnownCode code) {
  switch (code) {
    case KnownCode::Antipodal: return "antipodal";
    case KnownCode::Tetrahedron: return "tetrahedron";
    case KnownCode::Octahedron: return "octahedron";
    case KnownCode::Cube: return "cube";
    case KnownCode::Icosahedron: return "icosahedron";
    case KnownCode::FccKissing: return "fcc_kissing";
  }
  return "unknown";
}

std::vector<KnownCode> all_known_codes() {
  return {KnownCode::Antipodal,  KnownCode::Tetrahedron, KnownCode::Octahedron,
          KnownCode::Cube,       KnownCode::Icosahedron, KnownCode::FccKissing};
}

SphericalCode known_code(KnownCode code) {
  std::vector<Vec3> pts;
  switch (code) {
    case KnownCode::Antipodal:
      pts = {Vec3(0, 0, 1), Vec3(0, 0, -1)};
      break;
    case KnownCode::Tetrahedron:
      pts = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
      break;
    case KnownCode::Octahedron:
      pts = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
      break;
    case KnownCode::Cube:
      for (int x : {-1, 1})
        for (int y : {-1, 1})
          for (int z : {-1, 1}) pts.emplace_back(x, y, z);
      break;
    case KnownCode::Icosahedron: {
      const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
      for (double a : {-1.0, 1.0}) {
        for (double b : {-phi, phi}) {
          pts.emplace_back(0.0, a, b);
          pts.emplace_back(a, b, 0.0);
          pts.emplace_back(b, 0.0, a);
        }
      }
      break;
    }
    case KnownCode::FccKissing:
      for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
          pts.emplace_back(a, b, 0.0);
          pts.emplace_back(a, 0.0, b);
          pts.emplace_back(0.0, a, b);
        }
      }
      break;
  }
  for (Vec3& p : pts) p.normalize();
  SphericalCode out{std::move(pts), 0.0};
  out.min_angle = min_angle(out.points);
  return out;
}

SphericalCode known_code(std::string_view name) { return known_code(parse_known_code(name)); }

double min_angle(std::span<const Vec3> points) {
  if (points.size() < 2) throw std::invalid_argument("min_angle: need at least two points");
  double largest_cos = -1.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const double c = points[a].dot(points[b]) / (points[a].norm() * points[b].norm());
      largest_cos = std::max(largest_cos, c);
    }
  }
  return std::acos(std::clamp(largest_cos, -1.0, 1.0));
}

namespace {

Vec3 random_unit(Rng& rng) {
  while (true) {
    Vec3 v(rng.normal(), rng.normal(), rng.normal());
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

double min_chord(const std::vector<Vec3>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::min(best, (pts[a] - pts[b]).squaredNorm());
  return std::sqrt(best);
}

// Riesz-energy descent on S^2 with the exponent ramped up so the last
// iterations act on the closest pairs only. Returns early once the target
// chord is met.
void repel(std::vector<Vec3>& pts, double target_chord, int iterations) {
  const std::size_t n = pts.size();
  std::vector<Vec3> force(n);
  for (int it = 0; it < iterations; ++it) {
    const double dmin = min_chord(pts);
    if (dmin >= target_chord) return;
    const double progress = static_cast<double>(it) / iterations;
    const double s = 2.0 + 78.0 * progress;
    for (auto& f : force) f.setZero();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const Vec3 diff = pts[a] - pts[b];
        const double d = std::max(diff.norm(), 1e-300);
        const double w = std::pow(dmin / d, s + 1.0) / d;
        force[a] += w * diff;
        force[b] -= w * diff;
      }
    }
    double fmax = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      force[a] -= force[a].dot(pts[a]) * pts[a];
      fmax = std::max(fmax, force[a].norm());
    }
    if (!(fmax > 0.0)) return;
    const double step = (0.2 * (1.0 - progress) + 0.01) * dmin / fmax;
    for (std::size_t a = 0; a < n; ++a) {
      pts[a] += step * force[a];
      pts[a].normalize();
    }
  }
}

}  // namespace

SphericalCode greedy_code_search(double theta, int restarts, std::uint64_t seed, const CodeSearchOptions& options) {
  if (!(theta > 0.0) || theta > std::numbers::pi + 1e-15) {
    throw std::invalid_argument("greedy_code_search: theta must lie in (0, pi]");
  }
  SphericalCode best = known_code(KnownCode::Antipodal);
  const double target_chord = 2.0 * std::sin(std::min(theta, std::numbers::pi) / 2.0);
  restarts = std::max(restarts, 1);
  for (std::size_t n = 3; n <= options.max_points; ++n) {
    bool found = false;
    for (int r = 0; r < restarts && !found; ++r) {
      Rng rng = Rng::derive(seed, n * 1000003ULL + static_cast<std::uint64_t>(r));
      std::vector<Vec3> pts(n);
      for (auto& p : pts) p = random_unit(rng);
      repel(pts, target_chord, options.iterations);
      const double angle = min_angle(pts);
      if (angle >= theta) {
        best = SphericalCode{std::move(pts), angle};
        found = true;
      }
    }
    if (!found) break;
  }
  return best;
}

MonteCarloEstimate monte_carlo_tetra_density(const RadiiQuadruple& radii, std::size_t samples, std::uint64_t seed,
                                             unsigned threads) {
  if (samples < 10000) throw std::invalid_argument("monte_carlo_tetra_density: need at least 1e4 samples");
  const TangentTetrahedron tet = embed(radii);
  std::array<std::size_t, kMonteCarloChunks> hits{};
  parallel_for(kMonteCarloChunks, threads, [&](std::size_t chunk) {
    const std::size_t count = samples / kMonteCarloChunks + (chunk < samples % kMonteCarloChunks ? 1 : 0);
    Rng rng = Rng::derive(seed, chunk);
    std::size_t local = 0;
    for (std::size_t s = 0; s < count; ++s) {
      std::array<double, 4> e;
      double total = 0.0;
      for (double& x : e) {
        x = rng.exponential();
        total += x;
      }
      Vec3 p = Vec3::Zero();
      for (std::size_t m = 0; m < 4; ++m) p += (e[m] / total) * tet.vertices[m];
      for (std::size_t m = 0; m < 4; ++m) {
        if ((p - tet.vertices[m]).squaredNorm() < radii[m] * radii[m]) {
          ++local;
          break;
        }
      }
    }
    hits[chunk] = local;
  });
  MonteCarloEstimate out;
  out.samples = samples;
  for (std::size_t h : hits) out.hits += h;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.stderr_ = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

double dihedral_by_projection(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 e = (b - a).normalized();
  const Vec3 u = (c - a) - (c - a).dot(e) * e;
  const Vec3 v = (d - a) - (d - a).dot(e) * e;
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

DihedralAngles dihedral_angles_by_projection(const TangentTetrahedron& tet) {
  const auto& w = tet.vertices;
  DihedralAngles out;
  out.ij = dihedral_by_projection(w[0], w[1], w[2], w[3]);
  out.ik = dihedral_by_projection(w[0], w[2], w[1], w[3]);
  out.il = dihedral_by_projection(w[0], w[3], w[1], w[2]);
  out.jk = dihedral_by_projection(w[1], w[2], w[0], w[3]);
  out.jl = dihedral_by_projection(w[1], w[3], w[0], w[2]);
  out.kl = dihedral_by_projection(w[2], w[3], w[0], w[1]);
  return out;
}

double solid_angle_van_oosterom(const Vec3& apex, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 r1 = a - apex;
  const Vec3 r2 = b - apex;
  const Vec3 r3 = c - apex;
  const double l1 = r1.norm();
  const double l2 = r2.norm();
  const double l3 = r3.norm();
  const double numerator = std::abs(r1.dot(r2.cross(r3)));
  const double denominator = l1 * l2 * l3 + r1.dot(r2) * l3 + r1.dot(r3) * l2 + r2.dot(r3) * l1;
  double omega = 2.0 * std::atan2(numerator, denominator);
  if (omega < 0.0) omega += 2.0 * std::numbers::pi;
  return omega;
}

SolidAngles solid_angles_van_oosterom(const TangentTetrahedron& tet) {
  const auto& w = tet.vertices;
  SolidAngles s;
  s.omega[0] = solid_angle_van_oosterom(w[0], w[1], w[2], w[3]);
  s.omega[1] = solid_angle_van_oosterom(w[1], w[0], w[2], w[3]);
  s.omega[2] = solid_angle_van_oosterom(w[2], w[0], w[1], w[3]);
  s.omega[3] = solid_angle_van_oosterom(w[3], w[0], w[1], w[2]);
  return s;
}

double ContactPacking::average_kissing() const {
  if (spheres.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges.size()) / static_cast<double>(spheres.size());
}

double ContactPacking::max_overlap() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < spheres.size(); ++a) {
    for (std::size_t b = a + 1; b < spheres.size(); ++b) {
      const double gap = (spheres[a].center - spheres[b].center).norm();
      worst = std::max(worst, spheres[a].radius + spheres[b].radius - gap);
    }
  }
  return worst;
}

std::size_t ContactPacking::degree(std::size_t a) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [a](const auto& e) { return e.first == a || e.second == a; }));
}

std::vector<std::pair<std::size_t, std::size_t>> contact_edges(std::span<const PlacedSphere> spheres,
                                                                double tolerance) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < spheres.size(); ++a) {
    for (std::size_t b = a + 1; b < spheres.size(); ++b) {
      const double gap = (spheres[a].center - spheres[b].center).norm();
      if (std::abs(gap - (spheres[a].radius + spheres[b].radius)) <= tolerance) edges.emplace_back(a, b);
    }
  }
  return edges;
}

namespace {

// Both points at distances d1, d2, d3 from p1, p2, p3.
std::optional<std::array<Vec3, 2>> trilaterate(const Vec3& p1, double d1, const Vec3& p2, double d2, const Vec3& p3,
                                               double d3) {
  const Vec3 ex_raw = p2 - p1;
  const double d = ex_raw.norm();
  if (!(d > 0.0)) return std::nullopt;
  const Vec3 ex = ex_raw / d;
  const Vec3 to3 = p3 - p1;
  const double i = ex.dot(to3);
  Vec3 ey = to3 - i * ex;
  const double ey_norm = ey.norm();
  if (!(ey_norm > 1e-12 * d)) return std::nullopt;
  ey /= ey_norm;
  const Vec3 ez = ex.cross(ey);
  const double j = ey.dot(to3);
  const double x = (d1 * d1 - d2 * d2 + d * d) / (2.0 * d);
  const double y = (d1 * d1 - d3 * d3 + i * i + j * j) / (2.0 * j) - (i / j) * x;
  const double z2 = d1 * d1 - x * x - y * y;
  if (z2 < 0.0) return std::nullopt;
  const double z = std::sqrt(z2);
  const Vec3 base = p1 + x * ex + y * ey;
  return std::array<Vec3, 2>{base + z * ez, base - z * ez};
}

struct Deposition {
  std::vector<PlacedSphere> placed;

  // Contacts made at `where`, or -1 if it overlaps a placed sphere.
  int score(const Vec3& where, double radius) const {
    int contacts = 0;
    for (const auto& s : placed) {
      const double gap = (s.center - where).norm();
      const double sum = s.radius + radius;
      if (gap < sum - 1e-10) return -1;
      if (std::abs(gap - sum) <= kContactTolerance) ++contacts;
    }
    return contacts;
  }

  std::vector<std::size_t> reachable(std::size_t a, double radius) const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < placed.size(); ++b) {
      if (b == a) continue;
      const double gap = (placed[a].center - placed[b].center).norm();
      if (gap < placed[a].radius + placed[b].radius + 2.0 * radius) out.push_back(b);
    }
    return out;
  }
};

}  // namespace

ContactPacking greedy_contact_packing(const PackingSpec& spec, std::uint64_t seed, int attempts) {
  spec.validate();
  attempts = std::max(attempts, 1);
  Rng rng(splitmix64(seed));

  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < spec.species.size(); ++s) {
    for (long long c = 0; c < spec.species[s].count; ++c) order.push_back(s);
  }
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);

  Deposition dep;
  for (std::size_t species : order) {
    const double r = spec.species[species].radius;
    if (dep.placed.empty()) {
      dep.placed.push_back({Vec3::Zero(), r, species});
      continue;
    }
    std::unordered_map<std::size_t, std::vector<std::size_t>> neighbours;
    std::optional<Vec3> best;
    int best_contacts = -1;
    const auto consider = [&](const Vec3& where) {
      const int contacts = dep.score(where, r);
      if (contacts > best_contacts) {
        best_contacts = contacts;
        best = where;
      }
    };

    for (int attempt = 0; attempt < attempts; ++attempt) {
      const std::size_t a = rng.uniform_index(dep.placed.size());
      auto it = neighbours.find(a);
      if (it == neighbours.end()) it = neighbours.emplace(a, dep.reachable(a, r)).first;
      const auto& nb = it->second;
      const PlacedSphere& sa = dep.placed[a];

      if (nb.size() >= 2 && rng.uniform() < 0.8) {
        const std::size_t b = nb[rng.uniform_index(nb.size())];
        std::size_t c = nb[rng.uniform_index(nb.size())];
        if (c == b) c = nb[(std::find(nb.begin(), nb.end(), b) - nb.begin() + 1) % nb.size()];
        const PlacedSphere& sb = dep.placed[b];
        const PlacedSphere& sc = dep.placed[c];
        if (auto sol = trilaterate(sa.center, sa.radius + r, sb.center, sb.radius + r, sc.center, sc.radius + r)) {
          consider((*sol)[0]);
          consider((*sol)[1]);
          continue;
        }
      }
      if (!nb.empty()) {
        const PlacedSphere& sb = dep.placed[nb[rng.uniform_index(nb.size())]];
        const Vec3 axis_raw = sb.center - sa.center;
        const double d = axis_raw.norm();
        const double d1 = sa.radius + r;
        const double d2 = sb.radius + r;
        const double x = (d * d + d1 * d1 - d2 * d2) / (2.0 * d);
        const double h2 = d1 * d1 - x * x;
        if (d > 0.0 && h2 > 0.0) {
          const Vec3 axis = axis_raw / d;
          const Vec3 helper = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
          const Vec3 v = axis.cross(helper).normalized();
          const Vec3 w = axis.cross(v);
          const double phi = 2.0 * std::numbers::pi * rng.uniform();
          consider(sa.center + x * axis + std::sqrt(h2) * (std::cos(phi) * v + std::sin(phi) * w));
          continue;
        }
      }
      Vec3 dir(rng.normal(), rng.normal(), rng.normal());
      if (dir.norm() < 1e-12) dir = Vec3::UnitZ();
      consider(sa.center + (sa.radius + r) * dir.normalized());
    }

    if (!best) {
      // Nothing fit: park the sphere beyond everything placed so far.
      double reach = 0.0;
      for (const auto& s : dep.placed) reach = std::max(reach, s.center.x() + s.radius);
      best = Vec3(reach + r + 1.0, 0.0, 0.0);
    }
    dep.placed.push_back({*best, r, species});
  }

  ContactPacking packing;
  packing.spheres = std::move(dep.placed);
  packing.edges = contact_edges(packing.spheres);
  return packing;
}

}  // namespace spherebounds
