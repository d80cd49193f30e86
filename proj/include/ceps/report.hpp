#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ceps/config.hpp"
#include "ceps/ergodic.hpp"
#include "ceps/generate.hpp"
#include "ceps/independence.hpp"
#include "ceps/mixing.hpp"
#include "ceps/operators.hpp"
#include "ceps/version.hpp"

namespace ceps {

inline nlohmann::json element_json(const Element& f) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < f.dimension(); ++i) out.push_back(to_string(f[i]));
  return out;
}

inline nlohmann::json projection_json(const AtomicMeasureSpace& space,
                                      const BandProjection& p) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t atom : p.atoms()) out.push_back(space.labels()[atom]);
  return out;
}

inline nlohmann::json validation_json(const CEPSystem& sys) {
  const ValidationReport& v = sys.validation();
  const auto& labels = sys.space().labels();
  nlohmann::json out;
  out["valid"] = v.valid;
  nlohmann::json checks = nlohmann::json::array();
  for (const AtomCheck& c : v.atom_checks) {
    nlohmann::json entry;
    entry["atom"] = labels[c.atom];
    entry["ts_indicator"] = element_json(c.lhs);
    entry["t_indicator"] = element_json(c.rhs);
    entry["pass"] = c.pass;
    checks.push_back(std::move(entry));
  }
  out["atom_checks"] = std::move(checks);
  if (v.witness_atom) out["witness_atom"] = labels[*v.witness_atom];
  out["structure"]["tau_preserves_blocks"] = v.tau_preserves_blocks;
  out["structure"]["tau_blockwise_bijective"] = v.tau_blockwise_bijective;
  out["structure"]["tau_preserves_weights"] = v.tau_preserves_weights;
  return out;
}

struct CheckOutcome {
  nlohmann::json entry;
  bool passed = true;
};

namespace detail {

inline CheckOutcome run_birkhoff_check(const CEPSystem& sys) {
  CheckOutcome out;
  const std::size_t n = sys.atom_count();
  bool s_fixes_limit = true, t_of_limit_is_t = true, idempotent = true;
  for (std::size_t atom = 0; atom < n; ++atom) {
    const Element f = Element::atom_indicator(n, atom);
    const Element limit = ergodic_average_exact(sys, f).limit;
    s_fixes_limit = s_fixes_limit && sys.S().apply(limit) == limit;
    t_of_limit_is_t = t_of_limit_is_t && sys.T().apply(limit) == sys.T().apply(f);
    idempotent =
        idempotent && ergodic_average_exact(sys, limit).limit == limit;
  }
  const bool unit_fixed =
      ergodic_average_exact(sys, sys.unit()).limit == sys.unit();
  out.entry["name"] = "birkhoff";
  out.entry["details"]["s_fixes_limit"] = s_fixes_limit;
  out.entry["details"]["t_after_limit_equals_t"] = t_of_limit_is_t;
  out.entry["details"]["limit_idempotent"] = idempotent;
  out.entry["details"]["limit_fixes_unit"] = unit_fixed;
  out.passed = s_fixes_limit && t_of_limit_is_t && idempotent && unit_fixed;
  out.entry["verdict"] = out.passed;
  out.entry["passed"] = out.passed;
  return out;
}

inline CheckOutcome run_ergodic_check(const CEPSystem& sys) {
  CheckOutcome out;
  const ErgodicVerdict by_definition = is_ergodic_definition(sys);
  const ErgodicVerdict by_mean = is_ergodic_tsm(sys);
  const OperatorEqualityVerdict by_operator = is_ergodic_operator_equality(sys);
  const bool agree = by_definition.ergodic == by_mean.ergodic &&
                     by_mean.ergodic == by_operator.ergodic;
  out.entry["name"] = "ergodic";
  out.entry["verdict"] = by_definition.ergodic;
  out.entry["details"]["by_definition"] = by_definition.ergodic;
  out.entry["details"]["by_invariant_mean"] = by_mean.ergodic;
  out.entry["details"]["by_operator_equality"] = by_operator.ergodic;
  out.entry["details"]["blocks_are_cycles"] = by_operator.blocks_are_cycles;
  if (by_definition.witness)
    out.entry["details"]["witness"] = element_json(*by_definition.witness);
  out.entry["details"]["checkers_agree"] = agree;
  out.passed = agree;
  out.entry["passed"] = agree;
  return out;
}

inline CheckOutcome run_projections_check(const CEPSystem& sys,
                                          std::size_t cap) {
  CheckOutcome out;
  const ProjectionClasses classes = classify_projections(sys, cap);
  out.entry["name"] = "projections";
  nlohmann::json commuting = nlohmann::json::array();
  for (const auto& p : classes.commuting)
    commuting.push_back(projection_json(sys.space(), p));
  nlohmann::json invariant = nlohmann::json::array();
  for (const auto& p : classes.s_invariant)
    invariant.push_back(projection_json(sys.space(), p));
  out.entry["details"]["commuting_with_t"] = std::move(commuting);
  out.entry["details"]["s_invariant"] = std::move(invariant);
  out.entry["details"]["limit_fixed_count"] = classes.limit_fixed.size();
  out.entry["details"]["commuting_subset_invariant"] =
      classes.commuting_subset_invariant;
  out.entry["details"]["invariant_equals_limit_fixed"] =
      classes.invariant_equals_limit_fixed;
  out.passed = classes.commuting_subset_invariant &&
               classes.invariant_equals_limit_fixed;
  out.entry["verdict"] = out.passed;
  out.entry["passed"] = out.passed;
  return out;
}

inline CheckOutcome run_mixing_check(const CEPSystem& sys,
                                     const CheckSpec& spec) {
  CheckOutcome out;
  MixingOptions opts;
  opts.exhaustive = spec.exhaustive.value_or(false);
  if (spec.seed) {
    opts.seed = *spec.seed;
    opts.allow_sampled = true;
  }
  const MixingReport mixing = is_weakly_mixing(sys, opts);
  const bool ergodic = is_ergodic_operator_equality(sys).ergodic;
  out.entry["name"] = "mixing";
  out.entry["verdict"] = mixing.weakly_mixing;
  out.entry["details"]["period"] = mixing.period;
  out.entry["details"]["quantification"] = mixing.quantification;
  if (mixing.sampled) out.entry["details"]["sampled"] = true;
  if (mixing.counterexample) {
    out.entry["details"]["counterexample"]["p"] =
        projection_json(sys.space(), mixing.counterexample->first);
    out.entry["details"]["counterexample"]["q"] =
        projection_json(sys.space(), mixing.counterexample->second);
  }
  nlohmann::json records = nlohmann::json::array();
  for (const MixingPairRecord& rec : mixing.records) {
    nlohmann::json r;
    r["p"] = projection_json(sys.space(), rec.P);
    r["q"] = projection_json(sys.space(), rec.Q);
    r["period"] = rec.period;
    r["period_average"] = element_json(rec.period_average);
    records.push_back(std::move(r));
  }
  out.entry["details"]["pairs"] = std::move(records);
  out.entry["details"]["implies_ergodic_ok"] =
      !mixing.weakly_mixing || ergodic;
  out.passed = !mixing.weakly_mixing || ergodic;
  out.entry["passed"] = out.passed;
  return out;
}

inline CheckOutcome run_independence_check(const CEPSystem& sys,
                                           const CheckSpec& spec) {
  CheckOutcome out;
  SeqIndependenceOptions opts;
  if (spec.horizon) opts.horizon = *spec.horizon;
  if (spec.subset_cap) opts.subset_cap = *spec.subset_cap;
  const SllnReport slln = slln_check(sys, opts);
  out.entry["name"] = "independence";
  out.entry["verdict"] = slln.hypothesis;
  out.entry["details"]["conclusion_t_equals_limit"] = slln.conclusion;
  out.entry["details"]["implication_holds"] = slln.implication_holds;
  nlohmann::json per = nlohmann::json::array();
  for (std::size_t atom = 0; atom < slln.per_indicator.size(); ++atom) {
    const SeqIndependenceVerdict& v = slln.per_indicator[atom];
    nlohmann::json entry;
    entry["atom"] = sys.space().labels()[atom];
    entry["independent"] = v.independent;
    entry["horizon"] = v.horizon;
    entry["subset_cap"] = v.subset_cap;
    if (v.witness) {
      entry["witness"]["indices_left"] = v.witness->first;
      entry["witness"]["indices_right"] = v.witness->second;
    }
    if (v.witness_projections) {
      entry["witness"]["p"] =
          projection_json(sys.space(), v.witness_projections->first);
      entry["witness"]["q"] =
          projection_json(sys.space(), v.witness_projections->second);
    }
    per.push_back(std::move(entry));
  }
  out.entry["details"]["per_indicator"] = std::move(per);
  out.passed = slln.implication_holds;
  out.entry["passed"] = out.passed;
  return out;
}

inline CheckOutcome run_iterative_check(const CEPSystem& sys,
                                        const CheckSpec& spec) {
  CheckOutcome out;
  const Rational epsilon =
      spec.epsilon ? parse_rational(*spec.epsilon) : Rational(1, 1000000);
  const std::size_t period = cycle_decomposition(sys.S()).period;
  out.entry["name"] = "iterative";
  nlohmann::json per = nlohmann::json::array();
  bool all_ok = true;
  for (std::size_t atom = 0; atom < sys.atom_count(); ++atom) {
    const Element f = Element::atom_indicator(sys.atom_count(), atom);
    // The periodicity bound guarantees convergence by 2 p |f|_inf / eps.
    const Rational budget = Rational(2 * period) * sup_norm(f) / epsilon;
    const std::size_t n_max =
        static_cast<std::size_t>(mpz_class(budget.get_num() / budget.get_den())
                                     .get_ui()) +
        2;
    const IterativeResult r = ergodic_average_iterative(sys, f, epsilon, n_max);
    const bool ok =
        r.converged &&
        sup_norm(r.approx - ergodic_average_exact(sys, f).limit) <= epsilon;
    all_ok = all_ok && ok;
    nlohmann::json entry;
    entry["atom"] = sys.space().labels()[atom];
    entry["n_used"] = r.n_used;
    entry["converged"] = r.converged;
    per.push_back(std::move(entry));
  }
  out.entry["details"]["epsilon"] = to_string(epsilon);
  out.entry["details"]["per_indicator"] = std::move(per);
  out.passed = all_ok;
  out.entry["verdict"] = all_ok;
  out.entry["passed"] = all_ok;
  return out;
}

}  // namespace detail

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 all pass, 1 property violated, 2 invalid input
};

inline std::vector<CheckSpec> default_checks() {
  return {{.name = "birkhoff"}, {.name = "ergodic"},      {.name = "projections"},
          {.name = "mixing"},   {.name = "independence"}, {.name = "iterative"}};
}

// Validation always runs first; when it fails only the validation section is
// emitted. Check entries appear in request order.
inline RunResult run_checks(const SystemConfig& config,
                            const std::vector<CheckSpec>& requested) {
  RunResult result;
  result.report["tool"]["name"] = "ceps";
  result.report["tool"]["version"] = kVersion;
  result.report["config"] = serialize_config(config);

  const CEPSystem sys = build_system(config);
  result.report["validation"] = validation_json(sys);
  if (!sys.is_valid()) {
    result.report["all_passed"] = false;
    result.exit_code = 1;
    return result;
  }

  bool all_passed = true;
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckSpec& spec : requested) {
    CheckOutcome outcome;
    if (spec.name == "birkhoff") outcome = detail::run_birkhoff_check(sys);
    else if (spec.name == "ergodic") outcome = detail::run_ergodic_check(sys);
    else if (spec.name == "projections")
      outcome = detail::run_projections_check(sys, 16);
    else if (spec.name == "mixing") outcome = detail::run_mixing_check(sys, spec);
    else if (spec.name == "independence")
      outcome = detail::run_independence_check(sys, spec);
    else if (spec.name == "iterative")
      outcome = detail::run_iterative_check(sys, spec);
    else
      throw ConfigError("unknown check \"" + spec.name + "\"");
    all_passed = all_passed && outcome.passed;
    checks.push_back(std::move(outcome.entry));
  }
  result.report["checks"] = std::move(checks);
  result.report["all_passed"] = all_passed;
  result.exit_code = all_passed ? 0 : 1;
  return result;
}

inline RunResult run_checks(const SystemConfig& config) {
  return run_checks(config,
                    config.checks.empty() ? default_checks() : config.checks);
}

// Cesaro trace as CSV: "n;c1,c2,..." per mean, then the exact limit row.
inline std::string trace_csv(const CEPSystem& sys, const Element& f,
                             std::size_t horizon) {
  sys.require_valid();
  std::string out = "n;coordinates\n";
  const CesaroTrace trace = cesaro_trace(sys, f, horizon);
  for (std::size_t n = 1; n <= trace.means.size(); ++n) {
    out += std::to_string(n) + ";";
    const Element& mean = trace.means[n - 1];
    for (std::size_t i = 0; i < mean.dimension(); ++i) {
      if (i > 0) out += ",";
      out += to_string(mean[i]);
    }
    out += "\n";
  }
  const Element limit = ergodic_average_exact(sys, f).limit;
  out += "limit;";
  for (std::size_t i = 0; i < limit.dimension(); ++i) {
    if (i > 0) out += ",";
    out += to_string(limit[i]);
  }
  out += "\n";
  return out;
}

// Seeded generate-and-check campaign over valid random systems. Violation
// counts must stay zero; converse witnesses (ergodic but not weakly mixing)
// are counted, not flagged.
inline RunResult random_campaign(std::uint64_t seed, std::size_t count,
                                 std::size_t max_atoms) {
  RunResult result;
  SystemGenerator gen(seed, max_atoms);
  std::size_t ergodic_count = 0, mixing_count = 0, slln_hypothesis_count = 0;
  std::size_t agreement_violations = 0, class_violations = 0,
              mixing_violations = 0, slln_violations = 0;
  std::size_t converse_witnesses = 0;
  std::vector<std::size_t> atoms_histogram(max_atoms + 1, 0);

  for (std::size_t i = 0; i < count; ++i) {
    const CEPSystem sys = gen.next();
    ++atoms_histogram[sys.atom_count()];

    const ErgodicVerdict by_definition = is_ergodic_definition(sys);
    const ErgodicVerdict by_mean = is_ergodic_tsm(sys);
    const OperatorEqualityVerdict by_operator =
        is_ergodic_operator_equality(sys);
    const bool ergodic = by_operator.ergodic;
    if (by_definition.ergodic != ergodic || by_mean.ergodic != ergodic)
      ++agreement_violations;
    if (ergodic) ++ergodic_count;

    const ProjectionClasses classes = classify_projections(sys);
    if (!classes.commuting_subset_invariant ||
        !classes.invariant_equals_limit_fixed)
      ++class_violations;

    const bool mixing = is_weakly_mixing(sys).weakly_mixing;
    if (mixing) ++mixing_count;
    if (mixing && !ergodic) ++mixing_violations;
    if (ergodic && !mixing) ++converse_witnesses;

    const SllnReport slln = slln_check(sys);
    if (slln.hypothesis) ++slln_hypothesis_count;
    if (!slln.implication_holds) ++slln_violations;
  }

  const std::size_t total_violations = agreement_violations + class_violations +
                                       mixing_violations + slln_violations;
  result.report["tool"]["name"] = "ceps";
  result.report["tool"]["version"] = kVersion;
  result.report["seed"] = seed;
  result.report["count"] = count;
  result.report["max_atoms"] = max_atoms;
  result.report["stats"]["ergodic"] = ergodic_count;
  result.report["stats"]["weakly_mixing"] = mixing_count;
  result.report["stats"]["slln_hypothesis"] = slln_hypothesis_count;
  result.report["stats"]["converse_witnesses"] = converse_witnesses;
  result.report["stats"]["atoms_histogram"] = atoms_histogram;
  result.report["violations"]["ergodic_agreement"] = agreement_violations;
  result.report["violations"]["projection_classes"] = class_violations;
  result.report["violations"]["mixing_implies_ergodic"] = mixing_violations;
  result.report["violations"]["slln"] = slln_violations;
  result.report["violations"]["total"] = total_violations;
  result.exit_code = total_violations == 0 ? 0 : 1;
  return result;
}

}  // namespace ceps
