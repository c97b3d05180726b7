#include "bw/json_io.hpp"

#include <algorithm>
#include <initializer_list>

namespace bw {

namespace {

void require_object(const json& j, const char* what) {
  if (!j.is_object()) fail(errc::validation, std::string(what) + " must be a JSON object");
}

// Strict schema gate: every listed required key present, no key outside
// required + optional.
void require_keys(const json& j, const char* what, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  require_object(j, what);
  for (const char* k : required)
    if (!j.contains(k))
      fail(errc::validation, std::string(what) + " is missing required key \"" + k + "\"");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = std::any_of(required.begin(), required.end(),
                             [&](const char* k) { return key == k; }) ||
                 std::any_of(optional.begin(), optional.end(),
                             [&](const char* k) { return key == k; });
    if (!known) fail(errc::validation, std::string(what) + " has unknown key \"" + key + "\"");
  }
}

std::string string_field(const json& j, const char* key, const char* what) {
  if (!j.at(key).is_string())
    fail(errc::validation, std::string(what) + " key \"" + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

std::uint64_t uint_field(const json& j, const char* key, const char* what) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned())
    fail(errc::validation,
         std::string(what) + " key \"" + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::vector<int> parse_bits(const std::string& s, const char* what) {
  std::vector<int> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      fail(errc::validation, std::string(what) + " must be a string of 0/1 bits, got \"" + s + "\"");
    bits.push_back(c - '0');
  }
  return bits;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<BigNat> bignat_list(const json& j, const char* what) {
  if (!j.is_array()) fail(errc::validation, std::string(what) + " must be an array");
  std::vector<BigNat> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(bignat_from_json(e, what));
  return out;
}

json bignat_list_json(const std::vector<BigNat>& v) {
  json arr = json::array();
  for (const BigNat& x : v) arr.push_back(bignat_json(x));
  return arr;
}

const char* divergence_kind_name(DivergenceVerdict::Kind k) {
  switch (k) {
    case DivergenceVerdict::Kind::diverges_certified: return "DivergesCertified";
    case DivergenceVerdict::Kind::partial_only: return "PartialOnly";
    case DivergenceVerdict::Kind::unknown: return "Unknown";
  }
  return "?";
}

}  // namespace

json bignat_json(const BigNat& v) { return to_decimal(v); }

BigNat bignat_from_json(const json& j, const char* what) {
  if (!j.is_string())
    fail(errc::validation,
         std::string(what) + " expects arbitrary-precision values as decimal strings");
  return parse_bignat(j.get<std::string>(), what);
}

RaySpec ray_from_literal(const std::string& s) {
  auto parts = split(s, '/');
  if (parts.size() != 2)
    fail(errc::validation, "ray literal must be \"<prefix>/<pattern>\", got \"" + s + "\"");
  RaySpec ray;
  ray.prefix = parse_bits(parts[0], "ray prefix");
  ray.pattern = parse_bits(parts[1], "ray pattern");
  ray.validate();
  return ray;
}

IncreasingSequenceSpec seed_from_literal(const std::string& s) {
  std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    fail(errc::validation, "seed literal must be \"<kind>:<args>\", got \"" + s + "\"");
  std::string kind = s.substr(0, colon);
  std::string args = s.substr(colon + 1);
  if (kind == "affine") {
    auto parts = split(args, ',');
    if (parts.size() != 2)
      fail(errc::validation, "affine seed literal must be \"affine:a,b\", got \"" + s + "\"");
    auto spec = IncreasingSequenceSpec::affine(parse_bignat(parts[0], "affine a"),
                                               parse_bignat(parts[1], "affine b"));
    spec.validate();
    return spec;
  }
  if (kind == "prefix") {
    auto parts = split(args, ',');
    if (parts.empty() || parts[0].empty())
      fail(errc::validation, "prefix seed literal needs at least one term");
    std::vector<BigNat> terms;
    terms.reserve(parts.size());
    for (const std::string& p : parts) terms.push_back(parse_bignat(p, "prefix term"));
    auto spec = IncreasingSequenceSpec::explicit_prefix(std::move(terms));
    spec.validate();
    return spec;
  }
  if (kind == "antichain") {
    auto spec = IncreasingSequenceSpec::antichain(ray_from_literal(args));
    spec.validate();
    return spec;
  }
  fail(errc::validation, "unknown seed literal kind \"" + kind + "\"");
}

json seed_json(const IncreasingSequenceSpec& seed) {
  json j;
  switch (seed.kind) {
    case IncreasingSequenceSpec::Kind::explicit_prefix:
      j["kind"] = "explicit_prefix";
      j["terms"] = bignat_list_json(seed.terms);
      break;
    case IncreasingSequenceSpec::Kind::affine:
      j["kind"] = "affine";
      j["a"] = bignat_json(seed.a);
      j["b"] = bignat_json(seed.b);
      break;
    case IncreasingSequenceSpec::Kind::antichain_ray:
      j["kind"] = "antichain_ray";
      j["ray"] = seed.ray.to_string();
      break;
  }
  return j;
}

IncreasingSequenceSpec seed_from_json(const json& j) {
  require_object(j, "seed");
  std::string kind = j.contains("kind") ? string_field(j, "kind", "seed") : "";
  if (kind == "explicit_prefix") {
    require_keys(j, "seed", {"kind", "terms"});
    auto spec = IncreasingSequenceSpec::explicit_prefix(bignat_list(j.at("terms"), "seed terms"));
    spec.validate();
    return spec;
  }
  if (kind == "affine") {
    require_keys(j, "seed", {"kind", "a", "b"});
    auto spec = IncreasingSequenceSpec::affine(bignat_from_json(j.at("a"), "seed a"),
                                               bignat_from_json(j.at("b"), "seed b"));
    spec.validate();
    return spec;
  }
  if (kind == "antichain_ray") {
    require_keys(j, "seed", {"kind", "ray"});
    auto spec = IncreasingSequenceSpec::antichain(ray_from_literal(string_field(j, "ray", "seed")));
    spec.validate();
    return spec;
  }
  fail(errc::validation, "seed kind must be explicit_prefix, affine, or antichain_ray");
}

json mspec_json(const MSpec& m) {
  json j;
  switch (m.kind) {
    case MSpec::Kind::list:
      j["kind"] = "list";
      j["terms"] = bignat_list_json(m.terms);
      break;
    case MSpec::Kind::constant:
      j["kind"] = "constant";
      j["value"] = bignat_json(m.value);
      break;
    case MSpec::Kind::prefix_then_zero:
      j["kind"] = "prefix_then_zero";
      j["terms"] = bignat_list_json(m.terms);
      break;
  }
  return j;
}

MSpec mspec_from_json(const json& j) {
  require_object(j, "m");
  std::string kind = j.contains("kind") ? string_field(j, "kind", "m") : "";
  MSpec m;
  if (kind == "list") {
    require_keys(j, "m", {"kind", "terms"});
    m.kind = MSpec::Kind::list;
    m.terms = bignat_list(j.at("terms"), "m terms");
  } else if (kind == "constant") {
    require_keys(j, "m", {"kind", "value"});
    m.kind = MSpec::Kind::constant;
    m.value = bignat_from_json(j.at("value"), "m value");
  } else if (kind == "prefix_then_zero") {
    require_keys(j, "m", {"kind", "terms"});
    m.kind = MSpec::Kind::prefix_then_zero;
    m.terms = bignat_list(j.at("terms"), "m terms");
  } else {
    fail(errc::validation, "m kind must be list, constant, or prefix_then_zero");
  }
  m.validate();
  return m;
}

json spec_json(const DefiningSequenceSpec& spec) {
  json j;
  switch (spec.kind) {
    case DefiningSequenceSpec::Kind::explicit_stages: {
      j["kind"] = "explicit_stages";
      json stages = json::array();
      for (const auto& st : spec.stages) stages.push_back(bignat_list_json(st));
      j["stages"] = std::move(stages);
      break;
    }
    case DefiningSequenceSpec::Kind::cs_family:
      if (spec.gap.name != "pow2")
        fail(errc::validation, "only the pow2 gap rule is serializable");
      j["kind"] = "cs_family";
      j["seed"] = seed_json(spec.seed);
      j["gap"] = "pow2";
      break;
    case DefiningSequenceSpec::Kind::standard_bw:
      j["kind"] = "standard_bw";
      j["m"] = mspec_json(spec.m);
      break;
  }
  return j;
}

DefiningSequenceSpec spec_from_json(const json& j) {
  require_object(j, "tree spec");
  std::string kind = j.contains("kind") ? string_field(j, "kind", "tree spec") : "";
  if (kind == "explicit_stages") {
    require_keys(j, "tree spec", {"kind", "stages"});
    if (!j.at("stages").is_array()) fail(errc::validation, "stages must be an array of arrays");
    std::vector<std::vector<BigNat>> stages;
    for (const json& st : j.at("stages")) stages.push_back(bignat_list(st, "stage labels"));
    auto spec = DefiningSequenceSpec::explicit_stages_spec(std::move(stages));
    spec.validate();
    return spec;
  }
  if (kind == "cs_family") {
    require_keys(j, "tree spec", {"kind", "seed"}, {"gap"});
    if (j.contains("gap") && string_field(j, "gap", "tree spec") != "pow2")
      fail(errc::validation, "only the pow2 gap rule is accepted on the wire");
    auto spec = cs_spec(seed_from_json(j.at("seed")));
    spec.validate();
    return spec;
  }
  if (kind == "standard_bw") {
    require_keys(j, "tree spec", {"kind", "m"});
    auto spec = DefiningSequenceSpec::standard_bw_spec(mspec_from_json(j.at("m")));
    spec.validate();
    return spec;
  }
  fail(errc::validation, "tree spec kind must be explicit_stages, cs_family, or standard_bw");
}

json geometry_params_json(const GeometryParams& p) {
  json j;
  j["root_core_radius"] = p.root_core_radius;
  j["root_tube_radius"] = p.root_tube_radius;
  j["samples_base"] = p.samples_base;
  j["samples_cap"] = p.samples_cap;
  j["ring_segments"] = p.ring_segments;
  j["clearance_fraction"] = p.clearance_fraction;
  j["safety_fraction"] = p.safety_fraction;
  j["min_radius"] = p.min_radius;
  j["max_depth"] = p.max_depth;
  j["margin"] = p.margin;
  return j;
}

GeometryParams geometry_params_from_json(const json& j) {
  require_keys(j, "geometry params", {},
               {"root_core_radius", "root_tube_radius", "samples_base", "samples_cap",
                "ring_segments", "clearance_fraction", "safety_fraction", "min_radius",
                "max_depth", "margin"});
  GeometryParams p;
  auto dbl = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number())
      fail(errc::validation, std::string("geometry params key \"") + key + "\" must be a number");
    slot = j.at(key).get<double>();
  };
  auto u32 = [&](const char* key, std::uint32_t& slot) {
    if (!j.contains(key)) return;
    std::uint64_t v = uint_field(j, key, "geometry params");
    if (v > 0xffffffffull)
      fail(errc::validation, std::string("geometry params key \"") + key + "\" is out of range");
    slot = static_cast<std::uint32_t>(v);
  };
  dbl("root_core_radius", p.root_core_radius);
  dbl("root_tube_radius", p.root_tube_radius);
  u32("samples_base", p.samples_base);
  u32("samples_cap", p.samples_cap);
  u32("ring_segments", p.ring_segments);
  dbl("clearance_fraction", p.clearance_fraction);
  dbl("safety_fraction", p.safety_fraction);
  dbl("min_radius", p.min_radius);
  u32("max_depth", p.max_depth);
  dbl("margin", p.margin);
  return p;
}

json schedule_json(const Schedule& s) {
  json j;
  j["gap_rule"] = s.gap_rule;
  json entries = json::array();
  for (const ScheduleEntry& e : s.entries) {
    json row;
    row["j"] = bignat_json(e.j);
    row["n"] = bignat_json(e.n);
    row["sigma"] = e.sigma ? bignat_json(*e.sigma) : json(nullptr);
    row["seed_start"] = bignat_json(e.seed_start);
    row["seed_end"] = e.seed_end ? bignat_json(*e.seed_end) : json(nullptr);
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

json stage_labeling_json(const DefiningSequenceSpec& spec, const StageLabeling& st,
                         std::uint64_t materialize_limit) {
  json j;
  j["stage"] = bignat_json(st.stage);
  switch (st.kind) {
    case StageLabeling::Kind::explicit_labels:
      j["kind"] = "explicit_labels";
      j["labels"] = bignat_list_json(st.labels);
      return j;
    case StageLabeling::Kind::all_zeros:
      j["kind"] = "all_zeros";
      j["labels"] = nullptr;
      return j;
    case StageLabeling::Kind::bing_block: {
      j["kind"] = "bing_block";
      j["block"] = bignat_json(st.block);
      j["seed_start"] = bignat_json(st.seed_start);
      j["seed_end"] = bignat_json(st.seed_end);
      j["labels"] = nullptr;
      BigNat width = st.seed_end - st.seed_start + 1;
      if (width <= materialize_limit) {
        try {
          json labels = json::array();
          for (BigNat k = 0; k < width; ++k)
            labels.push_back(bignat_json(seed_term(spec.seed, st.seed_start + k)));
          j["labels"] = std::move(labels);
        } catch (const error&) {
          j["labels"] = nullptr;
        }
      }
      return j;
    }
  }
  return j;
}

json dyadic_json(const Dyadic& d) {
  Dyadic c = d.canonical();
  json j;
  j["numerator"] = bignat_json(c.numerator());
  j["exp2"] = c.exp2();
  j["text"] = c.to_string();
  return j;
}

json series_state_json(const SeriesState& s) {
  json j;
  j["stage"] = bignat_json(s.stage);
  j["sigma"] = bignat_json(s.sigma);
  j["partial_sum"] = dyadic_json(s.partial_sum);
  return j;
}

json divergence_json(const DivergenceVerdict& v) {
  json j;
  j["verdict"] = divergence_kind_name(v.kind);
  j["reason"] = v.reason;
  j["state"] = v.state ? series_state_json(*v.state) : json(nullptr);
  j["note"] = v.note;
  return j;
}

json witness_json(const TailWitness& w) {
  json j;
  j["divergence_depth"] = w.divergence_depth;
  j["block"] = bignat_json(w.block);
  j["stage"] = bignat_json(w.stage);
  j["reason"] = w.reason;
  j["label_a"] = w.label_a ? bignat_json(*w.label_a) : json(nullptr);
  j["label_b"] = w.label_b ? bignat_json(*w.label_b) : json(nullptr);
  return j;
}

TailWitness witness_from_json(const json& j) {
  require_keys(j, "witness", {"divergence_depth", "block", "stage", "reason"},
               {"label_a", "label_b"});
  TailWitness w;
  w.divergence_depth = uint_field(j, "divergence_depth", "witness");
  w.block = bignat_from_json(j.at("block"), "witness block");
  w.stage = bignat_from_json(j.at("stage"), "witness stage");
  w.reason = string_field(j, "reason", "witness");
  if (j.contains("label_a") && !j.at("label_a").is_null())
    w.label_a = bignat_from_json(j.at("label_a"), "witness label_a");
  if (j.contains("label_b") && !j.at("label_b").is_null())
    w.label_b = bignat_from_json(j.at("label_b"), "witness label_b");
  return w;
}

json tail_verdict_json(const TailVerdict& v) {
  json j;
  j["verdict"] = tail_verdict_name(v.kind);
  j["witness"] = v.witness ? witness_json(*v.witness) : json(nullptr);
  if (v.kind == TailVerdict::Kind::refuted_up_to || v.kind == TailVerdict::Kind::inconclusive) {
    j["max_offset"] = v.max_offset;
    j["depth"] = v.depth;
  }
  j["note"] = v.note;
  return j;
}

json common_terms_json(const CommonTermsResult& r) {
  json j;
  j["kind"] = common_terms_kind_name(r.kind);
  j["count"] = r.kind == CommonTermsResult::Kind::infinite_terms ? json(nullptr)
                                                                 : bignat_json(r.count);
  j["bound"] = r.kind == CommonTermsResult::Kind::unknown_up_to ? bignat_json(r.bound)
                                                                : json(nullptr);
  j["description"] = r.description;
  return j;
}

json inequivalence_json(const InequivalenceCertificate& c) {
  json j;
  j["certified"] = c.certified;
  j["common"] = common_terms_json(c.common);
  j["note"] = c.note;
  return j;
}

json rigidity_json(const RigidityReport& r) {
  json j;
  j["divergence"] = divergence_json(r.divergence);
  json pairs = json::array();
  for (const RigidityPair& p : r.pairs) {
    json row;
    row["ray_a"] = p.a.to_string();
    row["ray_b"] = p.b.to_string();
    row["same_point"] = p.same_point;
    row["verdict"] = tail_verdict_json(p.verdict);
    pairs.push_back(std::move(row));
  }
  j["pairs"] = std::move(pairs);
  j["distinct_pair_count"] = r.distinct_pair_count;
  j["same_point_count"] = r.same_point_count;
  return j;
}

json supported_sequence_json(const SupportedSequence& s) {
  json j;
  json support = json::array();
  for (const SupportEntry& e : s.support) {
    json row;
    row["position"] = bignat_json(e.position);
    row["value"] = bignat_json(e.value);
    support.push_back(std::move(row));
  }
  j["support"] = std::move(support);
  return j;
}

json verification_json(const VerificationReport& r) {
  json j;
  j["all_pass"] = r.all_pass();
  j["failure_count"] = r.failure_count();
  json checks = json::array();
  for (const CheckRecord& c : r.checks) {
    json row;
    row["name"] = c.name;
    row["pass"] = c.pass;
    row["margin"] = c.margin;
    row["detail"] = c.detail;
    checks.push_back(std::move(row));
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::validation, std::string(what) + " is not valid JSON: " + e.what());
  }
}

}  // namespace bw
