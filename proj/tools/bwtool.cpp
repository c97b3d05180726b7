#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bw/cantor_criterion.hpp"
#include "bw/construction.hpp"
#include "bw/defining_tree.hpp"
#include "bw/fsio.hpp"
#include "bw/geometric_index.hpp"
#include "bw/json_io.hpp"
#include "bw/sequence_logic.hpp"
#include "bw/torus_geometry.hpp"

namespace {

using bw::BigNat;
using bw::json;

// 0 ok / 2 validation-class / 3 unrepresentable / 4 verification failure.
int exit_code_for(bw::errc c) {
  switch (c) {
    case bw::errc::index_unrepresentable: return 3;
    case bw::errc::verification_failed: return 4;
    default: return 2;
  }
}

void emit(const json& doc, const std::string& out_path) {
  std::string text = bw::pretty(doc);
  if (!out_path.empty()) bw::write_file_atomic(out_path, text);
  std::fwrite(text.data(), 1, text.size(), stdout);
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    bw::fail(bw::errc::validation, std::string(what) + " must be a nonnegative integer");
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size())
    bw::fail(bw::errc::validation, std::string(what) + " is out of range");
  return v;
}

// Budget precedence: built-in default, then --config, then the env override.
void apply_global_setup(const std::string& config_path) {
  if (!config_path.empty()) {
    json cfg = bw::parse_json_text(bw::read_file(config_path), "config file");
    if (!cfg.is_object()) bw::fail(bw::errc::validation, "config file must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      if (key == "budget_bits") {
        if (!value.is_number_unsigned())
          bw::fail(bw::errc::validation, "config budget_bits must be a nonnegative integer");
        bw::set_bigint_budget_bits(value.get<std::uint64_t>());
      } else {
        bw::fail(bw::errc::validation, "config file has unknown key \"" + key + "\"");
      }
    }
  }
  if (const char* env = std::getenv("BW_BIGINT_BUDGET_BITS"))
    bw::set_bigint_budget_bits(parse_u64(env, "BW_BIGINT_BUDGET_BITS"));
}

bw::MSpec mspec_from_literal(const std::string& s) {
  std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    bw::fail(bw::errc::validation, "stage-label literal must be \"<kind>:<args>\", got \"" + s + "\"");
  std::string kind = s.substr(0, colon);
  std::string args = s.substr(colon + 1);
  auto parse_terms = [&](std::vector<BigNat>& out) {
    std::size_t start = 0;
    while (true) {
      std::size_t pos = args.find(',', start);
      std::string part = args.substr(start, pos == std::string::npos ? pos : pos - start);
      out.push_back(bw::parse_bignat(part, "stage label"));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  };
  bw::MSpec m;
  if (kind == "constant") {
    m.kind = bw::MSpec::Kind::constant;
    m.value = bw::parse_bignat(args, "stage label");
  } else if (kind == "list") {
    m.kind = bw::MSpec::Kind::list;
    parse_terms(m.terms);
  } else if (kind == "prefix") {
    m.kind = bw::MSpec::Kind::prefix_then_zero;
    parse_terms(m.terms);
  } else {
    bw::fail(bw::errc::validation, "stage-label literal kind must be constant, list, or prefix");
  }
  m.validate();
  return m;
}

void run_generate(const std::string& seed_lit, std::uint64_t blocks, std::uint64_t stages,
                  std::uint64_t materialize_limit, const std::string& out_path) {
  if (blocks == 0) bw::fail(bw::errc::validation, "--blocks must be at least 1");
  auto seed = bw::seed_from_literal(seed_lit);
  bw::Schedule sch = bw::schedule(seed, BigNat(blocks));
  json doc;
  doc["kind"] = "construction-schedule";
  doc["seed"] = bw::seed_json(seed);
  doc["schedule"] = bw::schedule_json(sch);
  if (stages > 0) {
    auto spec = bw::cs_spec(seed);
    json rows = json::array();
    for (std::uint64_t i = 1; i <= stages; ++i)
      rows.push_back(bw::stage_labeling_json(spec, bw::stage_labels(spec, BigNat(i)),
                                             materialize_limit));
    doc["stages"] = std::move(rows);
  }
  emit(doc, out_path);
}

void run_check_cantor(const std::string& seed_lit, const std::string& spec_path,
                      const std::string& m_lit, const std::string& state_stage,
                      const std::string& out_path) {
  int sources = (!seed_lit.empty()) + (!spec_path.empty()) + (!m_lit.empty());
  if (sources != 1)
    bw::fail(bw::errc::validation, "provide exactly one of --seed, --spec, --stage-labels");
  bw::DefiningSequenceSpec spec;
  if (!seed_lit.empty()) {
    spec = bw::cs_spec(bw::seed_from_literal(seed_lit));
  } else if (!spec_path.empty()) {
    spec = bw::spec_from_json(bw::parse_json_text(bw::read_file(spec_path), "tree spec file"));
  } else {
    spec = bw::DefiningSequenceSpec::standard_bw_spec(mspec_from_literal(m_lit));
  }
  json doc;
  doc["kind"] = "cantor-criterion";
  doc["spec"] = bw::spec_json(spec);
  doc["report"] = bw::divergence_json(bw::divergence_report(spec));
  doc["state"] = nullptr;
  if (!state_stage.empty()) {
    BigNat i = bw::parse_bignat(state_stage, "--state");
    doc["state"] = bw::series_state_json(bw::series_state(spec, i));
  }
  emit(doc, out_path);
}

void run_compare(const std::string& a_lit, const std::string& b_lit,
                 const std::string& out_path) {
  auto a = bw::seed_from_literal(a_lit);
  auto b = bw::seed_from_literal(b_lit);
  json doc;
  doc["kind"] = "seed-comparison";
  doc["seed_a"] = bw::seed_json(a);
  doc["seed_b"] = bw::seed_json(b);
  doc["certificate"] = bw::inequivalence_json(bw::inequivalence_certificate(a, b));
  emit(doc, out_path);
}

bw::RaySpec random_ray(std::mt19937_64& rng) {
  // rng() % k keeps the stream identical across standard libraries.
  auto bits = [&](std::uint64_t len) {
    std::vector<int> v;
    v.reserve(len);
    for (std::uint64_t i = 0; i < len; ++i) v.push_back(static_cast<int>(rng() % 2));
    return v;
  };
  bw::RaySpec ray;
  ray.prefix = bits(rng() % 9);
  ray.pattern = bits(1 + rng() % 4);
  ray.validate();
  return ray;
}

void run_rigidity(const std::string& seed_lit, const std::string& pairs_path,
                  std::uint64_t random_n, std::uint64_t rng_seed, const std::string& out_path) {
  auto seed = bw::seed_from_literal(seed_lit);
  if ((pairs_path.empty()) == (random_n == 0))
    bw::fail(bw::errc::validation, "provide exactly one of --pairs or --random");
  std::vector<std::pair<bw::RaySpec, bw::RaySpec>> pairs;
  if (!pairs_path.empty()) {
    json doc = bw::parse_json_text(bw::read_file(pairs_path), "pairs file");
    if (!doc.is_object() || !doc.contains("pairs") || !doc.at("pairs").is_array())
      bw::fail(bw::errc::validation, "pairs file must be {\"pairs\": [[rayA, rayB], ...]}");
    for (const auto& [key, value] : doc.items()) {
      (void)value;
      if (key != "pairs") bw::fail(bw::errc::validation, "pairs file has unknown key \"" + key + "\"");
    }
    for (const json& row : doc.at("pairs")) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_string() || !row[1].is_string())
        bw::fail(bw::errc::validation, "each pair must be two ray literals");
      pairs.emplace_back(bw::ray_from_literal(row[0].get<std::string>()),
                         bw::ray_from_literal(row[1].get<std::string>()));
    }
  } else {
    std::mt19937_64 rng(rng_seed);
    for (std::uint64_t i = 0; i < random_n; ++i)
      pairs.emplace_back(random_ray(rng), random_ray(rng));
  }
  bw::RigidityReport rep = bw::rigidity_report(seed, pairs);
  json doc;
  doc["kind"] = "rigidity-report";
  doc["seed"] = bw::seed_json(seed);
  doc["report"] = bw::rigidity_json(rep);
  emit(doc, out_path);
}

void run_mesh(const std::string& seed_lit, const std::string& spec_path, std::uint64_t depth,
              const std::string& params_path, const std::string& obj_path,
              const std::string& curves_path, std::uint64_t ring, bool no_verify,
              const std::string& out_path) {
  int sources = (!seed_lit.empty()) + (!spec_path.empty());
  if (sources != 1) bw::fail(bw::errc::validation, "provide exactly one of --seed or --spec");
  bw::DefiningSequenceSpec spec =
      !seed_lit.empty()
          ? bw::cs_spec(bw::seed_from_literal(seed_lit))
          : bw::spec_from_json(bw::parse_json_text(bw::read_file(spec_path), "tree spec file"));
  bw::GeometryParams params;
  if (!params_path.empty())
    params = bw::geometry_params_from_json(
        bw::parse_json_text(bw::read_file(params_path), "geometry params file"));
  auto tori = bw::embed_stage_tree(spec, static_cast<std::uint32_t>(depth), params);
  json doc;
  doc["kind"] = "torus-embedding";
  doc["spec"] = bw::spec_json(spec);
  doc["depth"] = depth;
  doc["torus_count"] = tori.size();
  json groups = json::array();
  for (const auto& t : tori) groups.push_back(t.group_name());
  doc["groups"] = std::move(groups);
  doc["obj"] = nullptr;
  doc["curves"] = nullptr;
  if (!obj_path.empty()) {
    bw::export_mesh(tori, obj_path, ring != 0 ? static_cast<std::uint32_t>(ring)
                                              : params.ring_segments);
    doc["obj"] = obj_path;
  }
  if (!curves_path.empty()) {
    bw::export_curves(tori, curves_path);
    doc["curves"] = curves_path;
  }
  doc["verification"] = nullptr;
  if (!no_verify) {
    bw::VerificationReport rep = bw::verify_embedding(tori, {});
    doc["verification"] = bw::verification_json(rep);
    if (!rep.all_pass()) {
      emit(doc, out_path);
      bw::fail(bw::errc::verification_failed,
               std::to_string(rep.failure_count()) + " embedding check(s) failed");
    }
  }
  emit(doc, out_path);
}

void run_verify_witness(const std::string& in_path, std::uint64_t max_replay_stage,
                        const std::string& out_path) {
  json doc_in = bw::parse_json_text(bw::read_file(in_path), "witness input");
  if (!doc_in.is_object() || doc_in.value("kind", "") != std::string("rigidity-report"))
    bw::fail(bw::errc::validation, "witness input must be a rigidity-report document");
  if (!doc_in.contains("seed") || !doc_in.contains("report"))
    bw::fail(bw::errc::validation, "rigidity-report document needs seed and report");
  auto seed = bw::seed_from_json(doc_in.at("seed"));
  auto spec = bw::cs_spec(seed);
  const json& pairs = doc_in.at("report").at("pairs");
  if (!pairs.is_array()) bw::fail(bw::errc::validation, "report pairs must be an array");

  std::uint64_t checked = 0, replayed = 0;
  json mismatches = json::array();
  auto note_mismatch = [&](std::size_t idx, const std::string& why) {
    json m;
    m["pair"] = idx;
    m["why"] = why;
    mismatches.push_back(std::move(m));
  };
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const json& row = pairs[idx];
    bw::RaySpec a = bw::ray_from_literal(row.at("ray_a").get<std::string>());
    bw::RaySpec b = bw::ray_from_literal(row.at("ray_b").get<std::string>());
    std::string kind = row.at("verdict").at("verdict").get<std::string>();
    ++checked;
    if (kind == "Equal") {
      if (!bw::rays_equal(a, b)) note_mismatch(idx, "marked Equal but the rays differ");
      continue;
    }
    if (kind != "Distinct") {
      note_mismatch(idx, "rigidity reports only carry Equal or Distinct verdicts");
      continue;
    }
    bw::TailWitness w = bw::witness_from_json(row.at("verdict").at("witness"));
    auto d = bw::ray_divergence_depth(a, b);
    if (!d) {
      note_mismatch(idx, "marked Distinct but the rays are equal");
      continue;
    }
    if (*d != w.divergence_depth) {
      note_mismatch(idx, "recorded divergence depth does not match the rays");
      continue;
    }
    bw::TailVerdict again = bw::tails_equal_cs(seed, a, b);
    if (again.kind != bw::TailVerdict::Kind::distinct || !again.witness ||
        again.witness->block != w.block || again.witness->stage != w.stage) {
      note_mismatch(idx, "re-derived witness disagrees with the recorded one");
      continue;
    }
    if (w.stage <= max_replay_stage) {
      auto stage = static_cast<std::uint64_t>(w.stage);
      auto pa = bw::whitehead_prefix(spec, a, stage);
      auto pb = bw::whitehead_prefix(spec, b, stage);
      ++replayed;
      if (pa[stage] == pb[stage]) {
        note_mismatch(idx, "replayed labels at the cited stage are equal");
        continue;
      }
      if ((w.label_a && *w.label_a != pa[stage]) || (w.label_b && *w.label_b != pb[stage]))
        note_mismatch(idx, "recorded labels disagree with the replay");
    }
  }
  json doc;
  doc["kind"] = "witness-verification";
  doc["pairs_checked"] = checked;
  doc["replayed"] = replayed;
  doc["all_match"] = mismatches.empty();
  doc["mismatches"] = std::move(mismatches);
  emit(doc, out_path);
  if (!doc["all_match"].get<bool>())
    bw::fail(bw::errc::verification_failed, "witness replay found mismatches");
}

void run_index(const std::string& chain_str, const std::string& outer_str,
               const std::string& inner_str, const std::string& parity_str,
               const std::string& out_path) {
  json doc;
  doc["kind"] = "geometric-index";
  bool any = false;
  if (!chain_str.empty()) {
    any = true;
    bw::IndexedNesting chain;
    json names = json::array();
    std::size_t start = 0;
    while (true) {
      std::size_t pos = chain_str.find(',', start);
      std::string part =
          chain_str.substr(start, pos == std::string::npos ? pos : pos - start);
      if (part == "bing") {
        chain.push_back(bw::LinkKind::bing);
      } else if (part == "whitehead") {
        chain.push_back(bw::LinkKind::whitehead);
      } else {
        bw::fail(bw::errc::validation, "chain entries must be bing or whitehead, got \"" + part + "\"");
      }
      names.push_back(part);
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    doc["chain"] = std::move(names);
    doc["chain_index"] = bw::bignat_json(bw::compose_index(chain));
  }
  if (outer_str.empty() != inner_str.empty())
    bw::fail(bw::errc::validation, "--outer and --inner go together");
  if (!outer_str.empty()) {
    any = true;
    BigNat outer = bw::parse_bignat(outer_str, "--outer");
    BigNat inner = bw::parse_bignat(inner_str, "--inner");
    json st;
    st["outer"] = bw::bignat_json(outer);
    st["inner"] = bw::bignat_json(inner);
    st["index"] = bw::bignat_json(bw::stage_index(outer, inner));
    doc["stage_index"] = std::move(st);
  }
  if (!parity_str.empty()) {
    any = true;
    std::size_t c1 = parity_str.find(',');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos : parity_str.find(',', c1 + 1);
    if (c2 == std::string::npos || parity_str.find(',', c2 + 1) != std::string::npos)
      bw::fail(bw::errc::validation, "--parity takes \"indexA,indexB,pairIndex\"");
    BigNat ia = bw::parse_bignat(parity_str.substr(0, c1), "--parity indexA");
    BigNat ib = bw::parse_bignat(parity_str.substr(c1 + 1, c2 - c1 - 1), "--parity indexB");
    BigNat ip = bw::parse_bignat(parity_str.substr(c2 + 1), "--parity pairIndex");
    json p;
    p["index_a"] = bw::bignat_json(ia);
    p["index_b"] = bw::bignat_json(ib);
    p["pair_index"] = bw::bignat_json(ip);
    p["admissible"] = bw::parity_admissible(ia, ib, ip);
    doc["parity"] = std::move(p);
  }
  if (!any)
    bw::fail(bw::errc::validation, "provide at least one of --chain, --outer/--inner, --parity");
  emit(doc, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"staged solid-torus constructions: schedules, series criteria, rigidity "
               "certificates, and verified tube embeddings"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file ({\"budget_bits\": N})");

  std::string g_seed, g_out;
  std::uint64_t g_blocks = 2, g_stages = 0, g_materialize = 1024;
  CLI::App* gen = app.add_subcommand("generate", "schedule and stage labels for a seed");
  gen->add_option("--seed", g_seed, "seed literal, e.g. affine:1,0")->required();
  gen->add_option("--blocks", g_blocks, "number of schedule blocks");
  gen->add_option("--stages", g_stages, "also emit labels for stages 1..N");
  gen->add_option("--materialize-limit", g_materialize, "max labels to list per stage");
  gen->add_option("--out", g_out, "also write the JSON to this file");

  std::string c_seed, c_spec, c_m, c_state, c_out;
  CLI::App* chk = app.add_subcommand("check-cantor", "series divergence report for a spec");
  chk->add_option("--seed", c_seed, "seed literal (staged-construction family)");
  chk->add_option("--spec", c_spec, "tree spec JSON file");
  chk->add_option("--stage-labels", c_m, "per-stage labels, e.g. constant:1 or prefix:1,2");
  chk->add_option("--state", c_state, "also report the exact series state at this stage");
  chk->add_option("--out", c_out, "also write the JSON to this file");

  std::string cm_a, cm_b, cm_out;
  CLI::App* cmp = app.add_subcommand("compare", "inequivalence certificate for two seeds");
  cmp->add_option("--seed-a", cm_a, "first seed literal")->required();
  cmp->add_option("--seed-b", cm_b, "second seed literal")->required();
  cmp->add_option("--out", cm_out, "also write the JSON to this file");

  std::string r_seed, r_pairs, r_out;
  std::uint64_t r_random = 0, r_rng = 1;
  CLI::App* rig = app.add_subcommand("rigidity", "tail verdicts over ray pairs of one seed");
  rig->add_option("--seed", r_seed, "seed literal")->required();
  rig->add_option("--pairs", r_pairs, "JSON file {\"pairs\": [[rayA, rayB], ...]}");
  rig->add_option("--random", r_random, "sample N random ray pairs instead");
  rig->add_option("--seed-rng", r_rng, "RNG seed for --random");
  rig->add_option("--out", r_out, "also write the JSON to this file");

  std::string m_seed, m_spec, m_params, m_obj, m_curves, m_out;
  std::uint64_t m_depth = 1, m_ring = 0;
  bool m_no_verify = false;
  CLI::App* msh = app.add_subcommand("mesh", "embed the stage tree and export tubes");
  msh->add_option("--seed", m_seed, "seed literal (staged-construction family)");
  msh->add_option("--spec", m_spec, "tree spec JSON file");
  msh->add_option("--depth", m_depth, "tree depth to realize")->required();
  msh->add_option("--params", m_params, "geometry params JSON file");
  msh->add_option("--obj", m_obj, "write the OBJ mesh here");
  msh->add_option("--curves", m_curves, "write the curves JSON here");
  msh->add_option("--ring", m_ring, "ring segments for the OBJ (default from params)");
  msh->add_flag("--no-verify", m_no_verify, "skip the numerical certification");
  msh->add_option("--out", m_out, "also write the report JSON to this file");

  std::string v_in, v_out;
  std::uint64_t v_cap = 16384;
  CLI::App* vw = app.add_subcommand("verify-witness", "replay a rigidity report's witnesses");
  vw->add_option("--in", v_in, "rigidity-report JSON file")->required();
  vw->add_option("--max-replay-stage", v_cap, "replay labels only up to this stage");
  vw->add_option("--out", v_out, "also write the JSON to this file");

  std::string i_chain, i_outer, i_inner, i_parity, i_out;
  CLI::App* idx = app.add_subcommand("index", "geometric-index calculus");
  idx->add_option("--chain", i_chain, "comma list of bing/whitehead");
  idx->add_option("--outer", i_outer, "outer stage number");
  idx->add_option("--inner", i_inner, "inner stage number");
  idx->add_option("--parity", i_parity, "indexA,indexB,pairIndex");
  idx->add_option("--out", i_out, "also write the JSON to this file");

  gen->callback([&] {
    apply_global_setup(config_path);
    run_generate(g_seed, g_blocks, g_stages, g_materialize, g_out);
  });
  chk->callback([&] {
    apply_global_setup(config_path);
    run_check_cantor(c_seed, c_spec, c_m, c_state, c_out);
  });
  cmp->callback([&] {
    apply_global_setup(config_path);
    run_compare(cm_a, cm_b, cm_out);
  });
  rig->callback([&] {
    apply_global_setup(config_path);
    run_rigidity(r_seed, r_pairs, r_random, r_rng, r_out);
  });
  msh->callback([&] {
    apply_global_setup(config_path);
    run_mesh(m_seed, m_spec, m_depth, m_params, m_obj, m_curves, m_ring, m_no_verify, m_out);
  });
  vw->callback([&] {
    apply_global_setup(config_path);
    run_verify_witness(v_in, v_cap, v_out);
  });
  idx->callback([&] {
    apply_global_setup(config_path);
    run_index(i_chain, i_outer, i_inner, i_parity, i_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const bw::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  }
  return 0;
}
