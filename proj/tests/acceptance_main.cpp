// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Each criterion carries its runtime budget; the
// elapsed time is printed next to the verdict.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "capd/ontology/shapes.hpp"
#include "capd/policy/engine.hpp"
#include "capd/rdf/turtle.hpp"
#include "capd/sim/runner.hpp"
#include "capd/sparql/eval.hpp"
#include "capd/sparql/parser.hpp"
#include "support/oracles.hpp"

using namespace capd;
using policy::Metric;
using policy::ObservationRecord;
using policy::PolicyEngine;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;
namespace v = capd::vocab;

namespace {

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

bool expect(bool cond, const std::string& detail, std::string& message) {
  if (!cond && message.empty())
    message = detail;
  return cond;
}

// --- 1. Verbatim query execution -------------------------------------------

bool criterion_verbatim_query(std::string& message) {
  PolicyEngine engine;
  engine.seed_mitigation_fixture();
  const double values[] = {7.5, 3.0, 0.5, 0.05};
  for (int i = 0; i < 4; ++i)
    engine.ingest({"Asset_A", i + 1, Metric::BandwidthMbps, values[i], {}});

  auto query = sparql::parse_query(PolicyEngine::fixture_query_text());
  Graph snapshot = engine.kb().snapshot();
  auto rows = sparql::evaluate(query, snapshot);

  const std::vector<std::string> expected = {"SEND_COLOR_VIDEO", "SEND_GRAYSCALE_VIDEO",
                                             "SEND_STILL_IMAGES", "SEND_OBJECT_COUNT"};
  bool ok = expect(rows.size() == 4,
                   "expected 4 rows, got " + std::to_string(rows.size()), message);
  for (std::size_t i = 0; ok && i < rows.size(); ++i) {
    ok = expect(rows[i].at("Time").value() == std::to_string(i + 1),
                "row " + std::to_string(i) + " out of tick order", message) &&
         expect(rows[i].at("Mitigation_Program").value() == expected[i],
                "row " + std::to_string(i) + " program was " +
                    rows[i].at("Mitigation_Program").value(), message);
  }

  // Cross-check against the exhaustive-assignment oracle.
  auto oracle_rows = test::oracle_evaluate(query, snapshot);
  std::vector<rdf::Bindings> got(rows.begin(), rows.end());
  ok = ok && expect(test::row_multiset(got) == test::row_multiset(oracle_rows),
                    "evaluate() differs from the brute-force oracle", message);
  return ok;
}

// --- 2. SPARQL oracle equivalence -------------------------------------------

bool criterion_sparql_oracle(std::string& message) {
  std::mt19937_64 rng(20250809);
  for (int i = 0; i < 500; ++i) {
    Graph g = test::random_graph(rng, 40);
    sparql::SelectQuery q = test::random_query(rng);
    auto got = sparql::evaluate(q, g);
    auto want = test::oracle_evaluate(q, g);
    if (!expect(test::row_multiset(got) == test::row_multiset(want),
                "mismatch on random case " + std::to_string(i), message))
      return false;
  }
  return true;
}

// --- 3. TMS equivalence ------------------------------------------------------

reasoner::Rule random_safe_rule(std::mt19937_64& rng, int index) {
  using rdf::PatternTerm;
  const std::vector<std::string> vars = {"x", "y", "z"};
  const std::vector<std::string> preds = {"p", "q", "r"};
  auto pick = [&](const std::vector<std::string>& pool) {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };
  auto position = [&](double var_prob) {
    if (chance(var_prob))
      return PatternTerm::variable(pick(vars));
    return PatternTerm::constant(Term::iri(v::bf("c" + std::to_string(
        std::uniform_int_distribution<int>(0, 3)(rng)))));
  };

  reasoner::Rule rule;
  rule.name = "random-" + std::to_string(index);
  int n_body = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int i = 0; i < n_body; ++i)
    rule.body.push_back({position(0.8),
                         PatternTerm::constant(Term::iri(v::bf(pick(preds)))),
                         position(0.8)});
  std::set<std::string> bound;
  for (const auto& pattern : rule.body)
    for (const auto& var : pattern.variables())
      bound.insert(var);
  std::vector<std::string> bound_list(bound.begin(), bound.end());
  auto head_position = [&]() {
    if (!bound_list.empty() && chance(0.7))
      return PatternTerm::variable(
          bound_list[std::uniform_int_distribution<std::size_t>(0, bound_list.size() - 1)(rng)]);
    return PatternTerm::constant(Term::iri(v::bf("h" + std::to_string(
        std::uniform_int_distribution<int>(0, 2)(rng)))));
  };
  rule.head.push_back({head_position(),
                       PatternTerm::constant(Term::iri(v::bf(pick(preds)))),
                       head_position()});
  return rule;
}

bool criterion_tms_equivalence(std::string& message) {
  std::mt19937_64 rng(112358);
  const std::vector<std::string> nodes = {"A", "B", "C", "D", "E"};
  auto pick_node = [&]() {
    return nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];
  };

  for (int round = 0; round < 1000; ++round) {
    std::vector<reasoner::Rule> rules = reasoner::builtin_rules();
    int extra = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < extra; ++i)
      rules.push_back(random_safe_rule(rng, i));

    reasoner::KnowledgeBase kb(rules);
    std::vector<Triple> live;
    int ops = std::uniform_int_distribution<int>(5, 30)(rng);
    for (int op = 0; op < ops; ++op) {
      bool do_retract = !live.empty() && std::uniform_int_distribution<int>(0, 3)(rng) == 0;
      if (do_retract) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng);
        kb.retract(live[i]);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        Triple t = [&]() {
          switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
            case 0:
              return Triple(Term::iri(v::bf(pick_node())), Term::iri(v::kSubClassOf),
                            Term::iri(v::bf(pick_node())));
            case 1:
              return Triple(Term::iri(v::bf(pick_node())), Term::iri(v::kRdfType),
                            Term::iri(v::bf(pick_node())));
            default:
              return Triple(Term::iri(v::bf(pick_node())),
                            Term::iri(v::bf(std::vector<std::string>{"p", "q", "r"}
                                                [std::uniform_int_distribution<int>(0, 2)(rng)])),
                            Term::iri(v::bf(pick_node())));
          }
        }();
        if (kb.assert_fact(t))
          live.push_back(t);
        kb.forward_chain();
      }
    }

    reasoner::KnowledgeBase fresh(rules);
    for (const Triple& t : kb.asserted().triples())
      fresh.assert_fact(t);
    fresh.forward_chain();
    if (!expect(kb.snapshot() == fresh.snapshot(),
                "incremental state differs from from-scratch chaining in round " +
                    std::to_string(round), message))
      return false;
  }
  return true;
}

// --- 4. Use-case scenarios (golden logs) -------------------------------------

bool criterion_scenarios(std::string& message) {
  // (1) staged payload degradation
  {
    sim::EventLog log = sim::run_scenario(
        sim::scenario_from_json(sim::bundled_scenario("usecase1_bandwidth")));
    auto codes = log.decision_codes();
    std::vector<std::string> distinct;
    for (const auto& code : codes)
      if (distinct.empty() || distinct.back() != code)
        distinct.push_back(code);
    if (!expect(distinct ==
                    std::vector<std::string>{"SEND_COLOR_VIDEO", "SEND_GRAYSCALE_VIDEO",
                                             "SEND_STILL_IMAGES", "SEND_OBJECT_COUNT"},
                "usecase1 did not degrade through the four stages", message))
      return false;
  }
  // (2) lorawan failover plus a stage fitting 0.3 Mbps
  {
    sim::EventLog log =
        sim::run_scenario(sim::scenario_from_json(sim::bundled_scenario("usecase2_jam")));
    auto codes = log.decision_codes();
    auto it = std::find(codes.begin(), codes.end(), policy::kSwitchToLorawan);
    if (!expect(it != codes.end(), "usecase2 never switched to lorawan", message))
      return false;
    if (!expect(it + 1 != codes.end() && *(it + 1) == "SEND_STILL_IMAGES",
                "usecase2 stage decision after the switch does not fit 0.3 Mbps", message))
      return false;
  }
  // (3) microphone switch
  {
    sim::EventLog log =
        sim::run_scenario(sim::scenario_from_json(sim::bundled_scenario("usecase3_blind")));
    if (!expect(log.contains_decision(policy::kSwitchToMicrophone),
                "usecase3 never switched to the microphone", message))
      return false;
  }
  // (4) nearest-drone repositioning
  {
    sim::EventLog log =
        sim::run_scenario(sim::scenario_from_json(sim::bundled_scenario("usecase4_kinetic")));
    bool nearest = false;
    for (const auto& e : log.events)
      if (e.at("category") == "decision" && e.at("code") == policy::kRepositionNearestDrone)
        nearest = e.at("target") == "Drone_1";
    if (!expect(nearest, "usecase4 did not reposition the nearest drone", message))
      return false;
  }
  // Determinism: repeated runs are byte-identical.
  for (const auto& name : sim::bundled_scenario_names()) {
    sim::Scenario sc = sim::scenario_from_json(sim::bundled_scenario(name));
    if (!expect(sim::run_scenario(sc).to_jsonl() == sim::run_scenario(sc).to_jsonl(),
                name + " is not byte-deterministic", message))
      return false;
  }
  return true;
}

// --- 5. Resilience restoration property --------------------------------------

bool criterion_resilience(std::string& message) {
  std::mt19937_64 rng(7311);
  int runs = 0;
  while (runs < 100) {
    // Randomize the attack timing within each scenario family.
    std::string name =
        sim::bundled_scenario_names()[runs % 4];
    sim::Scenario sc = sim::scenario_from_json(sim::bundled_scenario(name));
    sc.seed = rng();
    long long latest = 1;
    for (auto& attack : sc.attacks)
      if (attack.kind != sim::AttackEvent::Kind::DegradeBandwidth)
        attack.tick = std::uniform_int_distribution<long long>(
            1, std::max<long long>(1, sc.duration_ticks - 5))(rng);
    for (auto& attack : sc.attacks)
      latest = std::max(latest, attack.tick);
    if (name == "usecase1_bandwidth") {
      // Keep the degrade phases ordered but shift them.
      long long base = std::uniform_int_distribution<long long>(0, 2)(rng);
      for (std::size_t i = 0; i < sc.attacks.size(); ++i)
        sc.attacks[i].tick = base + static_cast<long long>(i) * 3;
      sc.duration_ticks = base + 12;
      latest = sc.attacks.back().tick;
    } else {
      sc.duration_ticks = std::max(sc.duration_ticks, latest + 6);
    }
    ++runs;

    sim::EventLog log = sim::run_scenario(sc);
    const int k = sc.policy.detection.jam_persistence;

    // Per tick: do all alive senders deliver?
    std::map<long long, bool> all_delivered;
    for (const auto& e : log.events) {
      if (e.at("category") != "delivery")
        continue;
      long long t = e.at("tick").get<long long>();
      if (!all_delivered.count(t))
        all_delivered[t] = true;
      if (e.at("alive").get<bool>() && !e.at("delivered").get<bool>())
        all_delivered[t] = false;
    }
    for (const auto& attack : sc.attacks) {
      bool restored = false;
      for (long long t = attack.tick; t <= attack.tick + 1 + k && t < sc.duration_ticks; ++t)
        if (all_delivered.count(t) && all_delivered[t]) {
          restored = true;
          break;
        }
      if (!expect(restored,
                  name + ": delivery not restored within 1+k ticks of the attack at tick " +
                      std::to_string(attack.tick) + " (seed " + std::to_string(sc.seed) + ")",
                  message))
        return false;
    }
  }
  return true;
}

// --- 6. SHACL-lite sensitivity ------------------------------------------------

bool criterion_shacl_sensitivity(std::string& message) {
  PolicyEngine engine;
  engine.seed_mitigation_fixture();
  engine.ingest({"Asset_A", 1, Metric::BandwidthMbps, 7.5, {}});
  Graph fixture = engine.kb().snapshot();
  auto schema = ontology::builtin_schema();
  auto shapes = ontology::default_shapes();

  if (!expect(ontology::validate(fixture, schema, shapes).empty(),
              "fixture does not pass validation", message))
    return false;

  // Every triple required by a min_count constraint, found shape by shape.
  int checked = 0;
  for (const auto& shape : shapes) {
    const Term target = Term::iri(shape.target_class);
    for (const auto& constraint : shape.constraints) {
      if (constraint.kind != ontology::ConstraintKind::MinCount)
        continue;
      for (const Triple& type_triple :
           fixture.match(std::nullopt, Term::iri(v::kRdfType), std::nullopt)) {
        if (!(type_triple.object.is_iri() &&
              schema.is_subclass_of(type_triple.object, target)))
          continue;
        const Term& focus = type_triple.subject;
        std::vector<Triple> required;
        for (const Term& spelling : schema.equivalents(Term::iri(constraint.property)))
          for (const Triple& t : fixture.match(focus, spelling, std::nullopt))
            required.push_back(t);
        if (static_cast<int>(required.size()) != constraint.count)
          continue;  // deleting one would not cross the minimum
        for (const Triple& t : required) {
          Graph mutated = fixture;
          mutated.remove(t);
          auto violations = ontology::validate(mutated, schema, shapes);
          ++checked;
          if (!expect(violations.size() == 1,
                      "deleting " + t.to_string() + " produced " +
                          std::to_string(violations.size()) + " violations", message))
            return false;
          if (!expect(violations[0].focus == focus && violations[0].constraint == "min_count",
                      "wrong violation for deleted " + t.to_string(), message))
            return false;
        }
      }
    }
  }
  return expect(checked >= 20, "too few min-count deletions exercised: " +
                                   std::to_string(checked), message);
}

// --- 7. ABAC determinism -------------------------------------------------------

bool criterion_abac(std::string& message) {
  // Empty policy always denies.
  for (auto action : {policy::AbacAction::Read, policy::AbacAction::Send,
                      policy::AbacAction::Command}) {
    auto decision = policy::check_access({}, {{"x", 1.0}}, {}, action);
    if (!expect(!decision.permit && decision.rule_id == "default-deny",
                "empty policy did not default-deny", message))
      return false;
  }

  std::mt19937_64 rng(9182);
  const std::vector<std::string> attrs = {"role", "zone", "level"};
  const std::vector<std::string> values = {"a", "b", "c"};
  auto pick = [&](const std::vector<std::string>& pool) {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };

  for (int round = 0; round < 200; ++round) {
    policy::AbacPolicy p;
    int n_rules = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < n_rules; ++i) {
      policy::AbacRule rule;
      rule.id = "r" + std::to_string(i);
      rule.effect = std::uniform_int_distribution<int>(0, 1)(rng) ? policy::Effect::Permit
                                                                  : policy::Effect::Deny;
      rule.action = static_cast<policy::AbacAction>(std::uniform_int_distribution<int>(0, 2)(rng));
      int conds = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int c = 0; c < conds; ++c) {
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0)
          rule.subject_conditions.push_back({"level", policy::PredOp::Gt, {double(
              std::uniform_int_distribution<int>(0, 5)(rng))}});
        else
          rule.subject_conditions.push_back({pick(attrs), policy::PredOp::Eq, {pick(values)}});
      }
      if (std::uniform_int_distribution<int>(0, 1)(rng))
        rule.object_conditions.push_back({pick(attrs), policy::PredOp::Eq, {pick(values)}});
      p.rules.push_back(std::move(rule));
    }
    policy::validate_policy(p);

    policy::AttrMap subject, object;
    for (const auto& a : attrs)
      if (std::uniform_int_distribution<int>(0, 1)(rng))
        subject[a] = pick(values);
    subject["level"] = double(std::uniform_int_distribution<int>(0, 8)(rng));
    for (const auto& a : attrs)
      if (std::uniform_int_distribution<int>(0, 1)(rng))
        object[a] = pick(values);
    auto action = static_cast<policy::AbacAction>(std::uniform_int_distribution<int>(0, 2)(rng));

    auto base = policy::check_access(p, subject, object, action);
    for (int perm = 0; perm < 6; ++perm) {
      policy::AbacPolicy shuffled = p;
      std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng);
      auto redo = policy::check_access(shuffled, subject, object, action);
      if (!expect(redo.permit == base.permit && redo.rule_id == base.rule_id,
                  "decision changed under rule permutation in round " + std::to_string(round),
                  message))
        return false;
    }
  }
  return true;
}

// --- 8. Turtle round-trip -------------------------------------------------------

bool criterion_turtle_roundtrip(std::string& message) {
  Graph schema = ontology::builtin_schema().graph();
  Graph back = rdf::parse_turtle(rdf::serialize_turtle(schema));
  if (!expect(back == schema, "schema round-trip altered the graph", message))
    return false;

  std::mt19937_64 rng(55501);
  for (int i = 0; i < 100; ++i) {
    Graph g = test::random_graph(rng, 30);
    Graph parsed = rdf::parse_turtle(rdf::serialize_turtle(g));
    if (!expect(rdf::isomorphic(g, parsed),
                "random graph " + std::to_string(i) + " failed round-trip", message))
      return false;
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "verbatim bandwidth-stage query over the canonical fixture", 1.0,
       criterion_verbatim_query},
      {2, "SPARQL evaluator equals the exhaustive-assignment oracle (500 cases)", 60.0,
       criterion_sparql_oracle},
      {3, "TMS incremental state equals from-scratch chaining (1000 sequences)", 60.0,
       criterion_tms_equivalence},
      {4, "use-case scenarios produce their published outcomes, deterministically", 20.0,
       criterion_scenarios},
      {5, "delivery restored within 1+k ticks across randomized attacks (100 runs)", 60.0,
       criterion_resilience},
      {6, "SHACL-lite flags exactly one violation per deleted required triple", 5.0,
       criterion_shacl_sensitivity},
      {7, "ABAC decisions invariant under rule permutation (200 policies)", 10.0,
       criterion_abac},
      {8, "Turtle parse/serialize round-trip on schema and 100 random graphs", 10.0,
       criterion_turtle_roundtrip},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed < criterion.budget_seconds;
    if (ok && in_budget) {
      std::printf("PASS  %d. %s  (%.2fs / %.0fs)\n", criterion.number, criterion.name.c_str(),
                  elapsed, criterion.budget_seconds);
    } else {
      ++failures;
      std::printf("FAIL  %d. %s  (%.2fs / %.0fs)%s%s\n", criterion.number,
                  criterion.name.c_str(), elapsed, criterion.budget_seconds,
                  detail.empty() ? "" : " -- ", detail.c_str());
      if (!in_budget && ok)
        std::printf("      over time budget\n");
    }
  }
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
