#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bw/defining_tree.hpp"
#include "bw/errors.hpp"

namespace bw {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}

// Point of a curve in solid-torus tube coordinates: longitude angle theta and
// cross-section disk coordinates (u, v) with u^2 + v^2 < (1 - margin)^2.
struct ModelSample {
  double theta = 0, u = 0, v = 0;
};

struct ModelCurve {
  std::vector<ModelSample> samples;  // closed: last connects back to first

  double max_cross_radius() const;
};

// Metric context of the tube a model curve is drawn in: lambda = tube radius
// divided by core length per radian. Turnarounds are sized in real space
// (their radii proportional to the tube radius), so their angular width
// scales with lambda; the clasp layout itself is lambda-independent.
struct ModelMetric {
  double lambda = 0.3;
  std::uint32_t samples = 512;
};

// Null-homologous clasp: two longitudinal lanes at v = -h/+h wrap most of the
// way around; each end continues past the antipode and hairpins back, the
// right arm dodging in u (under on the way out, over on the way back) so the
// two hairpins hook through each other.
ModelCurve model_whitehead(const ModelMetric& metric = {});

// Two stadium loops, one flattened into the v = 0 plane of the cross-section
// and one into u = 0 half a turn away; each one's end caps pass between the
// other's lanes, giving two hooks of opposite sign.
std::pair<ModelCurve, ModelCurve> model_bing_pair(const ModelMetric& metric = {});

// Total theta degree of a closed model curve. Consecutive wrapped steps must
// stay below pi; raises step_too_large otherwise.
long long winding_number(const ModelCurve& curve);

// Degree of atan2(y, x) along a closed polyline, same step rule.
long long axis_winding(const std::vector<Vec3>& core);

struct LinkingResult {
  long long value = 0;
  double raw = 0;       // Gauss double sum before rounding
  double residual = 0;  // |raw - value|
};

// Discrete Gauss linking integral over the two closed polylines (midpoint
// rule per segment pair). Raises curves_too_close when the separation is not
// comfortably above the sample spacing.
LinkingResult linking_number(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2);

// Pairwise linking number of the model pair, frozen as a regression constant:
// the two hooks pierce each other's spanning disks once each with opposite
// signs, so the Gauss sum cancels to zero.
inline constexpr long long kBingPairLinking = 0;

enum class TorusRole { root, whitehead, bing_left, bing_right };

const char* torus_role_name(TorusRole role);

struct GeometryParams {
  double root_core_radius = 4.0;
  double root_tube_radius = 1.2;
  std::uint32_t samples_base = 512;
  std::uint32_t samples_cap = 4096;
  std::uint32_t ring_segments = 16;
  double clearance_fraction = 0.4;
  double safety_fraction = 0.05;
  double min_radius = 1e-9;
  std::uint32_t max_depth = 6;
  double margin = 0.2;

  void validate() const;
};

struct SolidTorusEmbedding {
  NodeAddress node;
  TorusRole role = TorusRole::root;
  std::uint32_t whitehead_level = 0;  // 1-based position in the node's chain
  int parent = -1;                    // index of the enclosing torus, -1 for root
  ModelCurve model;                   // in the parent's tube coordinates; empty for root
  std::vector<Vec3> core;
  std::vector<Vec3> tangent;
  std::vector<Vec3> normal;
  std::vector<Vec3> binormal;
  double radius = 0;

  std::string group_name() const;
};

// Realizes stages 0..depth of the labeled tree: the root torus, and inside
// every torus of depth < `depth` its label's worth of nested model clasps
// followed by the model pair carrying the two children. Radii are fractions
// of measured clearances (tube wall, self-reach, sibling separation, bend
// radius); raises resolution_too_coarse when a radius falls below the floor
// and depth_too_large past params.max_depth.
std::vector<SolidTorusEmbedding> embed_stage_tree(const DefiningSequenceSpec& spec,
                                                  std::uint32_t depth,
                                                  const GeometryParams& params = {});

struct CheckRecord {
  std::string name;
  bool pass = false;
  double margin = 0;  // measured slack; positive iff pass for metric checks
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  std::size_t failure_count() const;
};

struct VerifyParams {
  double frame_tol = 1e-9;
  double closure_tol = 1e-6;
  double safety_fraction = 0.05;
  double linking_residual_max = 0.1;
  long long bing_pair_linking = kBingPairLinking;
};

// Numerical certification of a build: frame orthonormality and closure,
// child-in-parent containment, pairwise disjointness of non-nested tubes,
// tube self-embeddedness, windings (root 1, every child 0), and the model
// pair linking constant. Failures are report entries, never exceptions.
VerificationReport verify_embedding(const std::vector<SolidTorusEmbedding>& tori,
                                    const VerifyParams& vp = {});

// OBJ tube meshes, one `g` group per torus, byte-identical for equal inputs.
std::string mesh_obj(const std::vector<SolidTorusEmbedding>& tori, std::uint32_t ring_segments);
void export_mesh(const std::vector<SolidTorusEmbedding>& tori, const std::string& path,
                 std::uint32_t ring_segments = 16);

// Core polylines, frames' radii and tree metadata as JSON.
std::string curves_json(const std::vector<SolidTorusEmbedding>& tori);
void export_curves(const std::vector<SolidTorusEmbedding>& tori, const std::string& path);

}  // namespace bw
