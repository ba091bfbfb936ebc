#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fewbody/verifier.hpp"

using namespace fewbody;

TEST_CASE("empty plan passes vacuously") {
  SweepPlan plan;
  plan.seed = 7;
  Family f;
  f.theorem = "thm1";
  f.instances = 0;
  plan.families.push_back(f);
  SweepReport report = run_sweep(plan);
  CHECK(report.pass);
  CHECK(report.families.size() == 1);
  CHECK(report.families[0].instances == 0);
}

TEST_CASE("sweeps are deterministic in the seed") {
  SweepPlan plan;
  plan.seed = 123;
  for (const char* name : {"thm1", "lemma1", "decompose"}) {
    Family f;
    f.theorem = name;
    f.instances = 3;
    f.n_sites = {4, 5};
    plan.families.push_back(f);
  }
  SweepReport a = run_sweep(plan);
  SweepReport b = run_sweep(plan);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  CHECK(a.pass);
}

TEST_CASE("every family smoke-passes on a few instances") {
  SweepPlan plan;
  plan.seed = 42;
  for (const char* name :
       {"thm1", "cor2", "thm3", "cor4", "lemma5", "lemma1", "bandblock", "identity", "thm6",
        "decompose"}) {
    Family f;
    f.theorem = name;
    f.instances = 2;
    f.n_sites = {4, 6};
    plan.families.push_back(f);
  }
  SweepReport report = run_sweep(plan);
  for (const auto& fr : report.families) {
    INFO("family ", fr.name, " worst margin ", fr.worst_margin);
    for (const auto& d : fr.failure_details) INFO(d);
    CHECK(fr.passed == fr.instances);
  }
  CHECK(report.pass);
}

TEST_CASE("replay reproduces the recorded margin") {
  SweepPlan plan;
  plan.seed = 99;
  Family f;
  f.theorem = "lemma1";
  f.instances = 4;
  f.n_sites = {4, 5, 6};
  plan.families.push_back(f);
  SweepReport report = run_sweep(plan);
  REQUIRE(!report.families[0].worst_digest.empty());

  BoundCertificate cert = replay(plan, report.families[0].worst_digest);
  CHECK(cert.margin_min == doctest::Approx(report.families[0].worst_margin).epsilon(1e-12));
  CHECK(cert.note.find("version mismatch") == std::string::npos);

  CHECK_THROWS_AS(replay(plan, "nonsense"), Error);
  CHECK_THROWS_AS(replay(plan, "v=0.1.0;seed=99;family=unknown;index=0"), Error);

  BoundCertificate stale = replay(plan, "v=0.0.1;seed=99;family=lemma1;index=0");
  CHECK(stale.note.find("version mismatch") != std::string::npos);
}

TEST_CASE("instance errors are recorded, not thrown") {
  Family f;
  f.theorem = "no-such-theorem";
  f.instances = 1;
  SweepPlan plan;
  plan.families.push_back(f);
  SweepReport report = run_sweep(plan);
  CHECK_FALSE(report.pass);
  REQUIRE(report.families[0].failure_details.size() == 1);
  CHECK(report.families[0].failure_details[0].find("error:") != std::string::npos);
}

TEST_CASE("plan serialization round trip") {
  SweepPlan plan = default_plan();
  json j = plan_to_json(plan);
  SweepPlan back = plan_from_json(j);
  CHECK(back.seed == plan.seed);
  REQUIRE(back.families.size() == plan.families.size());
  for (std::size_t i = 0; i < plan.families.size(); ++i) {
    CHECK(back.families[i].theorem == plan.families[i].theorem);
    CHECK(back.families[i].instances == plan.families[i].instances);
    CHECK(back.families[i].n_sites == plan.families[i].n_sites);
    CHECK(back.families[i].states == plan.families[i].states);
  }
}

TEST_CASE("default plan covers every theorem family") {
  SweepPlan plan = default_plan();
  std::vector<std::string> want = {"thm1", "cor2",      "thm3",     "cor4", "lemma5",
                                   "lemma1", "bandblock", "identity", "thm6", "decompose"};
  for (const auto& name : want) {
    bool found = false;
    for (const auto& f : plan.families) found = found || f.theorem == name;
    CHECK_MESSAGE(found, "missing family ", name);
  }
}
