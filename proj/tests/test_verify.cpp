// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "dynsc/verify.hpp"
#include "fixtures.hpp"

using namespace dynsc;

namespace {

InstanceState built_run(const CoverageInstance& cov, double tau,
                        std::uint64_t seed = 3) {
  InstanceState run(cov, cov.ground(),
                    RunParams{.tau = tau,
                              .eps = 0.1,
                              .eps_del = 0.005,
                              .sample_n = 32,
                              .theory_mode = false,
                              .t_override = 30},
                    Rng(seed));
  run.init(cov.ground().all_ids());
  return run;
}

}  // namespace

TEST_CASE("fresh structures pass every invariant") {
  CoverageInstance cov = testing::random_coverage({.n = 10}, 2);
  InstanceState run = built_run(cov, 0.5);
  InvariantReport report = check_level_invariants(cov, cov.ground(), run);
  CHECK(report.ok());
}

TEST_CASE("corrupted snapshots are caught by the right checker") {
  CoverageInstance cov = testing::random_coverage({.n = 10}, 2);
  InstanceState run = built_run(cov, 0.5);
  REQUIRE(run.last_level() >= 1);
  LevelsSnapshot clean = snapshot_of(run);

  SUBCASE("foreign element in a level breaks the subset invariant") {
    LevelsSnapshot snap = clean;
    // Element 0 below the threshold of level 1 would break filter; to
    // isolate subset, inject something absent from the parent level.
    IdSet parent = snap.levels[0].extended;
    REQUIRE(!parent.empty());
    ElementId foreign = parent.back();
    set_erase(snap.levels[0].extended, foreign);
    bool subset_hit = false;
    for (const auto& v :
         check_level_invariants(cov, cov.ground(), snap).violations) {
      if (v.invariant == "subset") subset_hit = true;
    }
    CHECK(subset_hit);
  }

  SUBCASE("dropping a live element from a level breaks filter") {
    LevelsSnapshot snap = clean;
    REQUIRE(!snap.levels[1].extended.empty());
    ElementId victim = snap.levels[1].extended.front();
    set_erase(snap.levels[1].extended, victim);
    set_erase(snap.levels[1].candidates, victim);
    bool filter_hit = false;
    for (const auto& v :
         check_level_invariants(cov, cov.ground(), snap).violations) {
      if (v.invariant == "filter") filter_hit = true;
    }
    CHECK(filter_hit);
  }

  SUBCASE("marking the whole bucket deleted breaks deviation") {
    LevelsSnapshot snap = clean;
    for (ElementId e : snap.levels[1].bucket) set_insert(snap.deleted, e);
    bool deviation_hit = false;
    for (const auto& v :
         check_level_invariants(cov, cov.ground(), snap).violations) {
      if (v.invariant == "deviation") deviation_hit = true;
    }
    CHECK(deviation_hit);
  }

  SUBCASE("a non-empty terminator breaks stopping") {
    LevelsSnapshot snap = clean;
    ElementId e = snap.levels[1].extended.front();
    std::size_t last = snap.levels.size() - 1;
    set_insert(snap.levels[last].extended, e);
    set_insert(snap.levels[last].candidates, e);
    bool stopping_hit = false;
    for (const auto& v :
         check_level_invariants(cov, cov.ground(), snap).violations) {
      if (v.invariant == "stopping") stopping_hit = true;
    }
    CHECK(stopping_hit);
  }
}

TEST_CASE("empty structures only face the stopping check") {
  CoverageInstance cov = testing::modular_instance(2);
  InstanceState run(cov, cov.ground(),
                    RunParams{.tau = 100.0,
                              .eps = 0.1,
                              .eps_del = 0.005,
                              .sample_n = 4,
                              .theory_mode = false,
                              .t_override = 10},
                    Rng(1));
  run.init(cov.ground().all_ids());
  REQUIRE(run.last_level() == 0);
  CHECK(check_level_invariants(cov, cov.ground(), run).ok());
}

TEST_CASE("acceptance estimates behave on the worked fixtures") {
  SUBCASE("modular fixture accepts everything") {
    CoverageInstance cov = testing::modular_instance(4);
    Rng rng(5);
    std::vector<double> means =
        estimate_expected_x(cov, cov.ground(), cov.ground().all_ids(),
                            IdSet{}, 0.0, 1.0, 400, rng);
    REQUIRE(means.size() == 5);
    for (std::size_t i = 0; i < 4; ++i) CHECK(means[i] == 1.0);
    CHECK(means[4] == 0.0);
  }

  SUBCASE("blocking pair accepts exactly the first draw") {
    CoverageInstance cov = CoverageInstance::from_sets(
        1.0, {{"v1", 1.0}, {"v2", 1.0}}, {{"a", "b"}, {"b", "c"}});
    Rng rng(6);
    std::vector<double> means =
        estimate_expected_x(cov, cov.ground(), cov.ground().all_ids(),
                            IdSet{}, 0.0, 1.5, 400, rng);
    CHECK(means == std::vector<double>{1.0, 0.0, 0.0});
  }

  SUBCASE("all estimates stay in the unit interval") {
    CoverageInstance cov = testing::random_coverage({.n = 8}, 9);
    const GroundSet& g = cov.ground();
    double tau = 1e9;
    for (ElementId e : g.all_ids()) {
      tau = std::min(tau, marginal_density(cov, g, e, IdSet{}, 0.0));
    }
    Rng rng(7);
    for (double mean : estimate_expected_x(cov, g, g.all_ids(), IdSet{},
                                           0.0, tau, 100, rng)) {
      CHECK(mean >= 0.0);
      CHECK(mean <= 1.0);
    }
  }
}

TEST_CASE("uniformity test accepts the fair sampler") {
  SUBCASE("four choose two") {
    FrozenHistory history{IdSet{0, 1, 2, 3}, 2};
    Rng rng(8);
    UniformityReport report = uniformity_test(history, 2000, rng);
    CHECK(report.expected == 0.5);
    CHECK(report.band == doctest::Approx(0.0447).epsilon(0.01));
    CHECK(report.pass);
  }

  SUBCASE("full-bucket samples have frequency one") {
    FrozenHistory history{IdSet{0, 1, 2}, 3};
    Rng rng(9);
    UniformityReport report = uniformity_test(history, 600, rng);
    CHECK(report.pass);
    for (double f : report.frequency) CHECK(f == 1.0);
  }

  SUBCASE("two choose one splits evenly") {
    FrozenHistory history{IdSet{0, 1}, 1};
    Rng rng(10);
    UniformityReport report = uniformity_test(history, 2000, rng);
    CHECK(report.pass);
    for (double f : report.frequency) {
      CHECK(f == doctest::Approx(0.5).epsilon(0.1));
    }
  }

  SUBCASE("frozen histories come straight from a built run") {
    CoverageInstance cov = testing::random_coverage({.n = 12}, 11);
    InstanceState run = built_run(cov, 0.5, 11);
    REQUIRE(run.last_level() >= 1);
    FrozenHistory history = freeze_presample(run, 1);
    CHECK(history.bucket == run.levels()[1].bucket);
    CHECK(history.sample_size == run.levels()[1].sample_size);
    Rng rng(12);
    CHECK(uniformity_test(history, 1000, rng).pass);
    CHECK_THROWS_AS(freeze_presample(run, 0), PreconditionError);
    CHECK_THROWS_AS(freeze_presample(run, run.last_level() + 1),
                    PreconditionError);
  }
}

TEST_CASE("a biased sampler fails the uniformity band") {
  // Simulate bias by checking the report math directly: frequencies far
  // from m/|B| must fail. Drawn through the real sampler, bias can only
  // come from a broken rng, so fabricate counts via a tiny band.
  FrozenHistory history{IdSet{0, 1, 2, 3, 4, 5, 6, 7}, 1};
  Rng rng(13);
  UniformityReport fair = uniformity_test(history, 1500, rng);
  CHECK(fair.pass);
  // With m=1 of 8 the expectation is 0.125; a sampler that always chose
  // element 0 would sit at 1.0, far outside any 4-sigma band.
  CHECK(1.0 - fair.expected > fair.band * 10);
}

TEST_CASE("cost chain audit follows the addition log") {
  CoverageInstance cov = testing::random_coverage({.n = 10}, 14);
  InstanceState run = built_run(cov, 0.5, 14);
  CHECK(audit_cost_chain(cov, cov.ground(), run).ok);

  SUBCASE("forged log entries are caught") {
    LevelsSnapshot snap = snapshot_of(run);
    REQUIRE(run.last_level() >= 1);
    REQUIRE(!snap.levels[1].additions.empty());
    snap.levels[1].additions[0].density = snap.tau / 2.0;
    CostChainReport report = audit_cost_chain(cov, cov.ground(), snap);
    CHECK_FALSE(report.ok);
    CHECK(!report.detail.empty());
  }

  SUBCASE("empty solutions pass vacuously") {
    CoverageInstance tiny = testing::modular_instance(1);
    InstanceState idle(tiny, tiny.ground(),
                       RunParams{.tau = 50.0,
                                 .eps = 0.1,
                                 .eps_del = 0.005,
                                 .sample_n = 2,
                                 .theory_mode = false,
                                 .t_override = 10},
                       Rng(15));
    idle.init(tiny.ground().all_ids());
    CHECK(audit_cost_chain(tiny, tiny.ground(), idle).ok);
  }
}
