#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "bw/cantor_criterion.hpp"
#include "bw/construction.hpp"
#include "bw/defining_tree.hpp"
#include "bw/sequence_logic.hpp"
#include "bw/torus_geometry.hpp"

namespace bw {

// Wire conventions: arbitrary-precision naturals travel as decimal strings,
// machine-width integers as JSON numbers, rays as "<prefix>/<pattern>"
// literals. Parsers reject unknown keys and only accept the pow2 gap rule.

using json = nlohmann::json;

json bignat_json(const BigNat& v);
BigNat bignat_from_json(const json& j, const char* what);

RaySpec ray_from_literal(const std::string& s);

// "affine:a,b" | "prefix:t1,t2,..." | "antichain:<prefix>/<pattern>"
IncreasingSequenceSpec seed_from_literal(const std::string& s);

json seed_json(const IncreasingSequenceSpec& seed);
IncreasingSequenceSpec seed_from_json(const json& j);

json mspec_json(const MSpec& m);
MSpec mspec_from_json(const json& j);

json spec_json(const DefiningSequenceSpec& spec);
DefiningSequenceSpec spec_from_json(const json& j);

json geometry_params_json(const GeometryParams& p);
GeometryParams geometry_params_from_json(const json& j);

json schedule_json(const Schedule& s);

// Stage row with the label list materialized when the stage width stays
// within `materialize_limit` and every label is evaluable.
json stage_labeling_json(const DefiningSequenceSpec& spec, const StageLabeling& st,
                         std::uint64_t materialize_limit);

json dyadic_json(const Dyadic& d);
json series_state_json(const SeriesState& s);
json divergence_json(const DivergenceVerdict& v);

json witness_json(const TailWitness& w);
TailWitness witness_from_json(const json& j);

json tail_verdict_json(const TailVerdict& v);
json common_terms_json(const CommonTermsResult& r);
json inequivalence_json(const InequivalenceCertificate& c);
json rigidity_json(const RigidityReport& r);
json supported_sequence_json(const SupportedSequence& s);
json verification_json(const VerificationReport& r);

// dump(2) with a trailing newline; the one rendering used for every output.
std::string pretty(const json& j);

// Parse with syntax errors mapped onto errc::validation.
json parse_json_text(const std::string& text, const char* what);

}  // namespace bw
