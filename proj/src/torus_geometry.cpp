#include "bw/torus_geometry.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace bw {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Clasp shape constants (cross-section units). Containment ceiling is
// sqrt(u_dodge^2 + lane_v^2) = 0.547, well inside the 0.8 wall at the default
// margin.
constexpr double kWhLaneV = 0.42;      // lane height
constexpr double kWhTheta = kPi - 0.9; // lane half-span
constexpr double kWhExcursion = 1.4;   // arm reach past the lane end
constexpr double kWhDodge = 0.35;      // u offset of the dodging arm
constexpr double kWhRamp = 0.3;        // theta width of the dodge ramp

// Stadium pair constants.
constexpr double kBingHalfU = 0.45;          // lane offset
constexpr double kBingTheta = kPi / 2 + 0.5; // lane half-span

double smoothstep01(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

struct Segment {
  double weight;  // approximate curve length in tube-radius units
  std::function<ModelSample(double)> f;  // t in [0, 1), endpoint excluded
};

ModelCurve sample_segments(const std::vector<Segment>& segs, std::uint32_t total) {
  double wsum = 0;
  for (const Segment& s : segs) wsum += s.weight;
  ModelCurve c;
  for (const Segment& s : segs) {
    auto n = static_cast<std::uint32_t>(std::lround(total * s.weight / wsum));
    n = std::max<std::uint32_t>(n, 24);
    for (std::uint32_t k = 0; k < n; ++k) c.samples.push_back(s.f(double(k) / double(n)));
  }
  return c;
}

std::uint32_t effective_samples(const ModelMetric& m) {
  return std::max<std::uint32_t>(m.samples, 64);
}

}  // namespace

double ModelCurve::max_cross_radius() const {
  double m = 0;
  for (const ModelSample& s : samples) m = std::max(m, std::hypot(s.u, s.v));
  return m;
}

ModelCurve model_whitehead(const ModelMetric& metric) {
  const double h = kWhLaneV, th = kWhTheta, ex = kWhExcursion, ud = kWhDodge;
  const double lam = metric.lambda;
  const double rho_v = lam * std::hypot(ud, h);  // dodging arm turn, theta half-width
  const double rho_h = lam * h;                  // plain arm turn
  auto dodge = [=](double theta) { return ud * smoothstep01((theta - th) / kWhRamp); };
  std::vector<Segment> segs;
  // bottom lane, left junction to right junction
  segs.push_back({2 * th / lam, [=](double t) {
                    return ModelSample{-th + 2 * th * t, 0.0, -h};
                  }});
  // dodging arm: out along the bottom, turn, back along the top
  segs.push_back({ex / lam, [=](double t) {
                    double theta = th + ex * t;
                    return ModelSample{theta, -dodge(theta), -h};
                  }});
  segs.push_back({kPi * std::hypot(ud, h), [=](double t) {
                    double s = kPi * t;
                    return ModelSample{th + ex + rho_v * std::sin(s), -ud * std::cos(s),
                                       -h * std::cos(s)};
                  }});
  segs.push_back({ex / lam, [=](double t) {
                    double theta = th + ex - ex * t;
                    return ModelSample{theta, dodge(theta), h};
                  }});
  // top lane, right junction to left junction
  segs.push_back({2 * th / lam, [=](double t) {
                    return ModelSample{th - 2 * th * t, 0.0, h};
                  }});
  // plain arm on the far side, no dodge
  segs.push_back({ex / lam, [=](double t) {
                    return ModelSample{-th - ex * t, 0.0, h};
                  }});
  segs.push_back({kPi * h, [=](double t) {
                    double s = kPi * t;
                    return ModelSample{-th - ex - rho_h * std::sin(s), 0.0, h * std::cos(s)};
                  }});
  segs.push_back({ex / lam, [=](double t) {
                    return ModelSample{-th - ex + ex * t, 0.0, -h};
                  }});
  return sample_segments(segs, effective_samples(metric));
}

namespace {

// One stadium loop in the v = 0 plane, centered at theta_center. swap_uv
// flattens it into the u = 0 plane instead.
ModelCurve model_stadium(const ModelMetric& metric, double theta_center, bool swap_uv) {
  const double a = kBingHalfU, th = kBingTheta;
  const double rho = metric.lambda * a;
  auto mk = [=](double theta, double w) {
    return swap_uv ? ModelSample{theta, 0.0, w} : ModelSample{theta, w, 0.0};
  };
  std::vector<Segment> segs;
  segs.push_back({2 * th / metric.lambda, [=](double t) {
                    return mk(theta_center - th + 2 * th * t, a);
                  }});
  segs.push_back({kPi * a, [=](double t) {
                    double s = kPi * t;
                    return mk(theta_center + th + rho * std::sin(s), a * std::cos(s));
                  }});
  segs.push_back({2 * th / metric.lambda, [=](double t) {
                    return mk(theta_center + th - 2 * th * t, -a);
                  }});
  segs.push_back({kPi * a, [=](double t) {
                    double s = kPi * t;
                    return mk(theta_center - th - rho * std::sin(s), -a * std::cos(s));
                  }});
  return sample_segments(segs, effective_samples(metric));
}

}  // namespace

std::pair<ModelCurve, ModelCurve> model_bing_pair(const ModelMetric& metric) {
  return {model_stadium(metric, 0.0, false), model_stadium(metric, kPi, true)};
}

long long winding_number(const ModelCurve& curve) {
  const std::size_t n = curve.samples.size();
  if (n < 3) fail(errc::validation, "winding needs a closed curve of at least 3 samples");
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::remainder(curve.samples[(i + 1) % n].theta - curve.samples[i].theta, kTwoPi);
    if (std::abs(d) >= kPi - 1e-9)
      fail(errc::step_too_large, "theta step of " + std::to_string(d) + " rad is ambiguous");
    total += d;
  }
  double w = total / kTwoPi;
  auto r = std::llround(w);
  if (std::abs(w - double(r)) > 1e-6) fail(errc::internal, "winding sum is not an integer");
  return r;
}

long long axis_winding(const std::vector<Vec3>& core) {
  const std::size_t n = core.size();
  if (n < 3) fail(errc::validation, "winding needs a closed curve of at least 3 samples");
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& p = core[i];
    const Vec3& q = core[(i + 1) % n];
    if (std::hypot(p.x, p.y) < 1e-12)
      fail(errc::step_too_large, "curve passes through the reference axis");
    double d = std::remainder(std::atan2(q.y, q.x) - std::atan2(p.y, p.x), kTwoPi);
    if (std::abs(d) >= kPi - 1e-9)
      fail(errc::step_too_large, "axis angle step of " + std::to_string(d) + " rad is ambiguous");
    total += d;
  }
  double w = total / kTwoPi;
  auto r = std::llround(w);
  if (std::abs(w - double(r)) > 1e-6) fail(errc::internal, "winding sum is not an integer");
  return r;
}

LinkingResult linking_number(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2) {
  const std::size_t n1 = c1.size(), n2 = c2.size();
  if (n1 < 3 || n2 < 3) fail(errc::validation, "linking needs closed curves of at least 3 samples");
  double max_step = 0;
  std::vector<Vec3> d1(n1), m1(n1), d2(n2), m2(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    d1[i] = c1[(i + 1) % n1] - c1[i];
    m1[i] = c1[i] + 0.5 * d1[i];
    max_step = std::max(max_step, norm(d1[i]));
  }
  for (std::size_t j = 0; j < n2; ++j) {
    d2[j] = c2[(j + 1) % n2] - c2[j];
    m2[j] = c2[j] + 0.5 * d2[j];
    max_step = std::max(max_step, norm(d2[j]));
  }
  double sum = 0;
  double min_sep2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      Vec3 r = m2[j] - m1[i];
      double r2 = dot(r, r);
      min_sep2 = std::min(min_sep2, r2);
      sum += dot(cross(d1[i], d2[j]), r) / (r2 * std::sqrt(r2));
    }
  }
  if (std::sqrt(min_sep2) < 3.0 * max_step)
    fail(errc::curves_too_close, "curve separation " + std::to_string(std::sqrt(min_sep2)) +
                                     " below 3x sample spacing " + std::to_string(max_step));
  LinkingResult lr;
  lr.raw = sum / (4.0 * kPi);
  lr.value = std::llround(lr.raw);
  lr.residual = std::abs(lr.raw - double(lr.value));
  return lr;
}

const char* torus_role_name(TorusRole role) {
  switch (role) {
    case TorusRole::root: return "root";
    case TorusRole::whitehead: return "whitehead";
    case TorusRole::bing_left: return "bing_left";
    case TorusRole::bing_right: return "bing_right";
  }
  return "?";
}

void GeometryParams::validate() const {
  if (!(root_core_radius > 0) || !(root_tube_radius > 0))
    fail(errc::validation, "torus radii must be positive");
  if (!(root_tube_radius < root_core_radius))
    fail(errc::validation, "tube radius must be below the core radius");
  if (samples_base < 64) fail(errc::validation, "samples_base below 64");
  if (samples_cap < samples_base) fail(errc::validation, "samples_cap below samples_base");
  if (ring_segments < 3) fail(errc::validation, "ring_segments below 3");
  if (!(clearance_fraction > 0) || clearance_fraction > 0.5)
    fail(errc::validation, "clearance_fraction outside (0, 0.5]");
  if (safety_fraction < 0) fail(errc::validation, "safety_fraction negative");
  if (!(min_radius > 0)) fail(errc::validation, "min_radius must be positive");
  if (max_depth > 10) fail(errc::validation, "max_depth above 10");
  if (!(margin > 0) || margin >= 0.9) fail(errc::validation, "margin outside (0, 0.9)");
}

std::string SolidTorusEmbedding::group_name() const {
  switch (role) {
    case TorusRole::root: return "root";
    case TorusRole::whitehead: {
      std::string base = node.depth() == 0 ? "root" : "n" + node.to_string();
      return base + "_wh" + std::to_string(whitehead_level);
    }
    case TorusRole::bing_left: return "n" + node.to_string() + "_bing_l";
    case TorusRole::bing_right: return "n" + node.to_string() + "_bing_r";
  }
  return "?";
}

namespace {

Vec3 lerp(const Vec3& a, const Vec3& b, double f) { return a + f * (b - a); }

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double ang) {
  double c = std::cos(ang), s = std::sin(ang);
  return c * v + s * cross(axis, v) + ((1 - c) * dot(axis, v)) * axis;
}

// Plane-orthogonal part, renormalized.
Vec3 orthonormal_to(const Vec3& v, const Vec3& t) { return normalized(v - dot(v, t) * t); }

// Position inside a framed tube at longitude theta and disk offset (u, v).
Vec3 tube_point(const SolidTorusEmbedding& e, double theta, double u, double v) {
  const std::size_t n = e.core.size();
  double t = theta / kTwoPi;
  t -= std::floor(t);
  double s = t * double(n);
  auto i0 = static_cast<std::size_t>(s);
  if (i0 >= n) i0 = n - 1;
  double f = s - double(i0);
  std::size_t i1 = (i0 + 1) % n;
  Vec3 c = lerp(e.core[i0], e.core[i1], f);
  Vec3 tg = normalized(lerp(e.tangent[i0], e.tangent[i1], f));
  Vec3 nm = orthonormal_to(lerp(e.normal[i0], e.normal[i1], f), tg);
  Vec3 bn = cross(tg, nm);
  return c + e.radius * (u * nm + v * bn);
}

// One rotation-minimizing transport step (double reflection).
Vec3 rmf_step(const Vec3& p0, const Vec3& p1, const Vec3& t0, const Vec3& t1, const Vec3& r0) {
  Vec3 v1 = p1 - p0;
  double c1 = dot(v1, v1);
  Vec3 rl = r0, tl = t0;
  if (c1 > 1e-300) {
    rl = r0 - (2.0 / c1 * dot(v1, r0)) * v1;
    tl = t0 - (2.0 / c1 * dot(v1, t0)) * v1;
  }
  Vec3 v2 = t1 - tl;
  double c2 = dot(v2, v2);
  if (c2 > 1e-300) rl = rl - (2.0 / c2 * dot(v2, rl)) * v2;
  return rl;
}

// Tangents by central difference, rotation-minimizing normals with the
// closure defect folded in as a uniform per-step twist, binormals to match.
void build_frames(SolidTorusEmbedding& e) {
  const std::size_t n = e.core.size();
  e.tangent.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    e.tangent[i] = normalized(e.core[(i + 1) % n] - e.core[(i + n - 1) % n]);
  Vec3 ref{1, 0, 0};
  double ax = std::abs(e.tangent[0].x), ay = std::abs(e.tangent[0].y),
         az = std::abs(e.tangent[0].z);
  if (ay <= ax && ay <= az) ref = {0, 1, 0};
  if (az <= ax && az <= ay) ref = {0, 0, 1};
  Vec3 r0 = orthonormal_to(ref, e.tangent[0]);

  Vec3 r = r0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    r = orthonormal_to(rmf_step(e.core[i], e.core[j], e.tangent[i], e.tangent[j], r),
                       e.tangent[j]);
  }
  double alpha = std::atan2(dot(e.tangent[0], cross(r, r0)), dot(r, r0));
  double per_step = alpha / double(n);

  e.normal.resize(n);
  e.binormal.resize(n);
  e.normal[0] = r0;
  r = r0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t j = i + 1;
    r = orthonormal_to(rmf_step(e.core[i], e.core[j], e.tangent[i], e.tangent[j], r),
                       e.tangent[j]);
    r = rotate_about(r, e.tangent[j], per_step);
    e.normal[j] = r;
  }
  for (std::size_t i = 0; i < n; ++i) e.binormal[i] = cross(e.tangent[i], e.normal[i]);
}

double polyline_length(const std::vector<Vec3>& c) {
  double len = 0;
  for (std::size_t i = 0; i < c.size(); ++i) len += norm(c[(i + 1) % c.size()] - c[i]);
  return len;
}

// Closest approach between samples more than a tenth of the loop apart.
double min_self_distance(const std::vector<Vec3>& c) {
  const std::size_t n = c.size();
  const std::size_t window = std::max<std::size_t>(2, n / 10);
  double best2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t gap = std::min(j - i, n - (j - i));
      if (gap <= window) continue;
      Vec3 d = c[j] - c[i];
      best2 = std::min(best2, dot(d, d));
    }
  }
  return std::sqrt(best2);
}

double min_pair_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double best2 = std::numeric_limits<double>::infinity();
  for (const Vec3& p : a)
    for (const Vec3& q : b) {
      Vec3 d = q - p;
      best2 = std::min(best2, dot(d, d));
    }
  return std::sqrt(best2);
}

// Smallest circumradius over consecutive sample triples.
double min_curvature_radius(const std::vector<Vec3>& c) {
  const std::size_t n = c.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& p = c[(i + n - 1) % n];
    const Vec3& q = c[i];
    const Vec3& r = c[(i + 1) % n];
    double area2 = norm(cross(q - p, r - p));
    if (area2 < 1e-30) continue;
    best = std::min(best, norm(q - p) * norm(r - q) * norm(r - p) / (2.0 * area2));
  }
  return best;
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double len2 = dot(ab, ab);
  double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + t * ab));
}

double point_polyline_distance(const Vec3& p, const std::vector<Vec3>& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i)
    best = std::min(best, point_segment_distance(p, c[i], c[(i + 1) % c.size()]));
  return best;
}

}  // namespace

std::vector<SolidTorusEmbedding> embed_stage_tree(const DefiningSequenceSpec& spec,
                                                  std::uint32_t depth,
                                                  const GeometryParams& params) {
  spec.validate();
  params.validate();
  if (depth > params.max_depth)
    fail(errc::depth_too_large, "depth " + std::to_string(depth) + " above limit " +
                                    std::to_string(params.max_depth));
  std::vector<SolidTorusEmbedding> out;

  SolidTorusEmbedding root;
  root.role = TorusRole::root;
  root.parent = -1;
  root.radius = params.root_tube_radius;
  const std::size_t n0 = params.samples_base;
  root.core.resize(n0);
  root.tangent.resize(n0);
  root.normal.resize(n0);
  root.binormal.resize(n0);
  for (std::size_t i = 0; i < n0; ++i) {
    double ang = kTwoPi * double(i) / double(n0);
    double c = std::cos(ang), s = std::sin(ang);
    root.core[i] = {params.root_core_radius * c, params.root_core_radius * s, 0.0};
    root.tangent[i] = {-s, c, 0.0};
    root.normal[i] = {c, s, 0.0};
    root.binormal[i] = cross(root.tangent[i], root.normal[i]);
  }
  out.push_back(std::move(root));

  auto metric_for = [&](int idx) {
    ModelMetric m;
    m.lambda = out[idx].radius / (polyline_length(out[idx].core) / kTwoPi);
    m.samples = static_cast<std::uint32_t>(
        std::min<std::size_t>(2 * out[idx].core.size(), params.samples_cap));
    return m;
  };

  auto choose_radius = [&](int parent_idx, const ModelCurve& model, const std::vector<Vec3>& core,
                           double sibling_dist) {
    double max_radial = model.max_cross_radius();
    if (max_radial >= 1.0 - params.margin)
      fail(errc::validation, "model curve leaves the margin shell of the cross-section");
    double wall = out[parent_idx].radius * (1.0 - max_radial);
    double self_half = min_self_distance(core) / 2.0;
    double curv = min_curvature_radius(core);
    double r = params.clearance_fraction *
               std::min(std::min(wall, self_half), std::min(curv, sibling_dist / 2.0));
    if (!(r >= params.min_radius))
      fail(errc::resolution_too_coarse, "clearance leaves tube radius " + std::to_string(r) +
                                            " below the floor " +
                                            std::to_string(params.min_radius));
    return r;
  };

  auto map_core = [&](int parent_idx, const ModelCurve& mc) {
    std::vector<Vec3> core;
    core.reserve(mc.samples.size());
    for (const ModelSample& s : mc.samples)
      core.push_back(tube_point(out[parent_idx], s.theta, s.u, s.v));
    return core;
  };

  std::function<void(int, const NodeAddress&, std::uint32_t)> build =
      [&](int host, const NodeAddress& node, std::uint32_t node_depth) {
        if (node_depth == depth) return;
        BigNat wlabel = label_at(spec, node);
        if (wlabel > 64)
          fail(errc::validation,
               "label " + to_decimal(wlabel) + " at node " + node.to_string() +
                   " is too large to realize as nested tubes");
        auto w = static_cast<std::uint32_t>(wlabel);
        int cur = host;
        for (std::uint32_t k = 1; k <= w; ++k) {
          ModelMetric m = metric_for(cur);
          SolidTorusEmbedding e;
          e.node = node;
          e.role = TorusRole::whitehead;
          e.whitehead_level = k;
          e.parent = cur;
          e.model = model_whitehead(m);
          e.core = map_core(cur, e.model);
          build_frames(e);
          e.radius =
              choose_radius(cur, e.model, e.core, std::numeric_limits<double>::infinity());
          out.push_back(std::move(e));
          cur = static_cast<int>(out.size()) - 1;
        }
        ModelMetric m = metric_for(cur);
        auto [ma, mb] = model_bing_pair(m);
        std::vector<Vec3> ca = map_core(cur, ma);
        std::vector<Vec3> cb = map_core(cur, mb);
        double sib = min_pair_distance(ca, cb);

        SolidTorusEmbedding ea;
        ea.node = node.child(0);
        ea.role = TorusRole::bing_left;
        ea.parent = cur;
        ea.model = std::move(ma);
        ea.core = std::move(ca);
        build_frames(ea);
        ea.radius = choose_radius(cur, ea.model, ea.core, sib);
        out.push_back(std::move(ea));
        int ia = static_cast<int>(out.size()) - 1;

        SolidTorusEmbedding eb;
        eb.node = node.child(1);
        eb.role = TorusRole::bing_right;
        eb.parent = cur;
        eb.model = std::move(mb);
        eb.core = std::move(cb);
        build_frames(eb);
        eb.radius = choose_radius(cur, eb.model, eb.core, sib);
        out.push_back(std::move(eb));
        int ib = static_cast<int>(out.size()) - 1;

        NodeAddress left = node.child(0);
        NodeAddress right = node.child(1);
        build(ia, left, node_depth + 1);
        build(ib, right, node_depth + 1);
      };
  build(0, NodeAddress{}, 0);
  return out;
}

bool VerificationReport::all_pass() const {
  for (const CheckRecord& c : checks)
    if (!c.pass) return false;
  return true;
}

std::size_t VerificationReport::failure_count() const {
  std::size_t n = 0;
  for (const CheckRecord& c : checks)
    if (!c.pass) ++n;
  return n;
}

namespace {

bool is_ancestor(const std::vector<SolidTorusEmbedding>& tori, int anc, int idx) {
  for (int p = tori[idx].parent; p >= 0; p = tori[p].parent)
    if (p == anc) return true;
  return false;
}

// Image of a model curve in one fixed round torus. Pairwise linking of
// winding-zero curves is an invariant of the model configuration (re-embedding
// the parent tube shifts linking by twist * winding * winding = 0), so the
// regression constant is checked here at a scale where sample spacing stays
// far below the pair separation at every nesting depth.
std::vector<Vec3> canonical_tube_image(const ModelCurve& mc) {
  constexpr double kR = 4.0, kr = 1.2;
  std::vector<Vec3> out;
  out.reserve(mc.samples.size());
  for (const ModelSample& s : mc.samples) {
    double ct = std::cos(s.theta), st = std::sin(s.theta);
    out.push_back({(kR + kr * s.u) * ct, (kR + kr * s.u) * st, -kr * s.v});
  }
  return out;
}

// Closest approach between samples whose circular arclength separation
// exceeds the given window.
double min_self_distance_arc(const std::vector<Vec3>& c, double arc_window) {
  const std::size_t n = c.size();
  std::vector<double> s(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + norm(c[(i + 1) % n] - c[i]);
  const double total = s[n];
  double best2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double arc = s[j] - s[i];
      arc = std::min(arc, total - arc);
      if (arc <= arc_window) continue;
      Vec3 d = c[j] - c[i];
      best2 = std::min(best2, dot(d, d));
    }
  }
  return std::sqrt(best2);
}

}  // namespace

VerificationReport verify_embedding(const std::vector<SolidTorusEmbedding>& tori,
                                    const VerifyParams& vp) {
  VerificationReport rep;
  if (tori.empty()) {
    rep.checks.push_back({"nonempty", false, -1.0, "no tori to verify"});
    return rep;
  }
  auto add = [&](std::string name, bool pass, double margin, std::string detail) {
    rep.checks.push_back({std::move(name), pass, margin, std::move(detail)});
  };

  for (std::size_t i = 0; i < tori.size(); ++i) {
    const SolidTorusEmbedding& e = tori[i];
    const std::string name = e.group_name();
    const std::size_t n = e.core.size();

    double dev = 0;
    for (std::size_t k = 0; k < n; ++k) {
      dev = std::max(dev, std::abs(norm(e.normal[k]) - 1.0));
      dev = std::max(dev, std::abs(norm(e.binormal[k]) - 1.0));
      dev = std::max(dev, std::abs(dot(e.normal[k], e.binormal[k])));
      dev = std::max(dev, std::abs(dot(e.normal[k], e.tangent[k])));
      dev = std::max(dev, std::abs(dot(e.binormal[k], e.tangent[k])));
    }
    add("frames:" + name, dev <= vp.frame_tol, vp.frame_tol - dev,
        "max orthonormality deviation " + std::to_string(dev));

    Vec3 r = e.normal[n - 1];
    r = orthonormal_to(rmf_step(e.core[n - 1], e.core[0], e.tangent[n - 1], e.tangent[0], r),
                       e.tangent[0]);
    double seam = std::abs(std::atan2(dot(e.tangent[0], cross(r, e.normal[0])),
                                      dot(r, e.normal[0])));
    double seam_bound = kPi / double(n) + vp.closure_tol;
    add("frame_closure:" + name, seam <= seam_bound, seam_bound - seam,
        "seam twist " + std::to_string(seam) + " rad against uniform-distribution bound " +
            std::to_string(seam_bound));

    double max_step = 0;
    for (std::size_t k = 0; k < n; ++k)
      max_step = std::max(max_step, norm(e.core[(k + 1) % n] - e.core[k]));
    double len = polyline_length(e.core);
    add("sampling:" + name, max_step <= len / 32.0, len / 32.0 - max_step,
        "max sample step " + std::to_string(max_step) + " of loop length " + std::to_string(len));

    double reach = min_self_distance_arc(e.core, 4.0 * e.radius);
    double need = 2.0 * e.radius * (1.0 + vp.safety_fraction);
    add("self_embedded:" + name, reach > need, reach - need,
        "self approach " + std::to_string(reach) + " against tube diameter " +
            std::to_string(need));

    if (e.parent >= 0) {
      const SolidTorusEmbedding& p = tori[static_cast<std::size_t>(e.parent)];
      double maxdist = 0;
      for (const Vec3& q : e.core) maxdist = std::max(maxdist, point_polyline_distance(q, p.core));
      double margin = (p.radius - e.radius) - maxdist;
      add("containment:" + name, margin > 0, margin,
          "max core offset " + std::to_string(maxdist) + " inside parent " + p.group_name() +
              " wall budget " + std::to_string(p.radius - e.radius));

      long long mw = winding_number(e.model);
      add("model_winding:" + name, mw == 0, 0.5 - std::abs(double(mw)),
          "lane degree " + std::to_string(mw) + ", expected 0");
      long long aw = axis_winding(e.core);
      add("axis_winding:" + name, aw == 0, 0.5 - std::abs(double(aw)),
          "degree about the root axis " + std::to_string(aw) + ", expected 0");
    } else {
      long long aw = axis_winding(e.core);
      add("axis_winding:" + name, aw == 1, 0.5 - std::abs(double(aw) - 1.0),
          "degree about the root axis " + std::to_string(aw) + ", expected 1");
    }
  }

  for (std::size_t i = 0; i < tori.size(); ++i) {
    for (std::size_t j = i + 1; j < tori.size(); ++j) {
      if (is_ancestor(tori, static_cast<int>(i), static_cast<int>(j)) ||
          is_ancestor(tori, static_cast<int>(j), static_cast<int>(i)))
        continue;
      double dist = min_pair_distance(tori[i].core, tori[j].core);
      double need = (tori[i].radius + tori[j].radius) * (1.0 + vp.safety_fraction);
      add("disjoint:" + tori[i].group_name() + "|" + tori[j].group_name(), dist > need,
          dist - need,
          "core separation " + std::to_string(dist) + " against tube sum " + std::to_string(need));
    }
  }

  for (std::size_t i = 0; i < tori.size(); ++i) {
    if (tori[i].role != TorusRole::bing_left) continue;
    for (std::size_t j = 0; j < tori.size(); ++j) {
      if (tori[j].role != TorusRole::bing_right || tori[j].parent != tori[i].parent) continue;
      std::string pname = tori[i].parent >= 0
                              ? tori[static_cast<std::size_t>(tori[i].parent)].group_name()
                              : "?";
      try {
        LinkingResult lr = linking_number(canonical_tube_image(tori[i].model),
                                          canonical_tube_image(tori[j].model));
        bool ok = lr.value == vp.bing_pair_linking && lr.residual < vp.linking_residual_max;
        add("linking:" + pname, ok, vp.linking_residual_max - lr.residual,
            "canonical-tube Gauss sum " + std::to_string(lr.raw) + " rounds to " +
                std::to_string(lr.value) + ", expected " +
                std::to_string(vp.bing_pair_linking));
      } catch (const error& err) {
        add("linking:" + pname, false, -1.0, err.what());
      }
    }
  }

  return rep;
}

}  // namespace bw
