#pragma once

#include "fewbody/io.hpp"
#include "fewbody/moments.hpp"
#include "fewbody/random_instance.hpp"

namespace fewbody {

/// One instance family of the sweep.  `theorem` selects the builder:
/// thm1 | cor2 | thm3 | cor4 | lemma5 | lemma1 | bandblock | identity |
/// thm6 | decompose.  `states` is computational | pure | mixed | density |
/// alternate (cycled by instance index where it applies).
struct Family {
  std::string theorem;
  int instances = 10;
  std::vector<int> n_sites = {4, 6, 8};
  std::vector<int> n_bars = {2, 3, 4, 5};
  int q_max = 3;
  double g_max = 2.0;
  std::string states = "alternate";
};

struct SweepPlan {
  std::uint64_t seed = 42;
  std::vector<Family> families;
};

struct InstanceOutcome {
  std::string digest;
  bool pass = false;
  double margin = 0.0;  // min(bound - exact) over every checked point
  std::string detail;
  bool proof_variant_failed = false;  // lemma5 3*lambda*g/8 variant bookkeeping
};

struct FamilyResult {
  std::string name;
  int instances = 0;
  int passed = 0;
  double worst_margin = 0.0;
  std::string worst_digest;
  int proof_variant_failures = 0;
  std::vector<std::string> failure_details;
};

struct SweepReport {
  std::uint64_t seed = 0;
  std::string version;
  std::vector<FamilyResult> families;
  bool pass = false;
};

/// The built-in plan mirrors the acceptance families.
SweepPlan default_plan();

SweepPlan plan_from_json(const json& j);
json plan_to_json(const SweepPlan& plan);
json report_to_json(const SweepReport& report);

InstanceOutcome run_instance(const Family& family, std::uint64_t plan_seed, int index);
SweepReport run_sweep(const SweepPlan& plan);

/// Rebuild the instance named by a sweep digest and re-emit its primary
/// certificate.  Digests carry the code version; a mismatch is recorded in
/// the certificate note.
BoundCertificate replay(const SweepPlan& plan, const std::string& digest);

}  // namespace fewbody
