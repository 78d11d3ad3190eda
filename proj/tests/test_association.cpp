#include "support.hpp"
#include "uavcov/association.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/montecarlo.hpp"

using namespace uavcov;
using uavcov::test::destroyed;

namespace {

Scenario lap(double r_u, int n_a, ProfileFamily f = ProfileFamily::constant, double chi0 = 0.0) {
  Scenario s = lap_preset();
  s.r_u = r_u;
  s.n_a = n_a;
  s.chi = {f, chi0};
  return s;
}

}  // namespace

TEST_CASE("without UAVs every UE is served terrestrially") {
  for (double r_u : {0.0, 500.0, 3000.0}) {
    const DistanceLaws laws(lap(r_u, 0));
    const AssociationReport r = association_report(laws);
    CHECK(r.a_t == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.a_a == 0.0);
    CHECK(tier_breaks(laws, Tier::aerial).empty());
  }
}

TEST_CASE("a TBS closer than the aerial crossover always wins") {
  const DistanceLaws laws(lap(0.0, 3));
  const double d_at0 = exclusion_d({Tier::aerial, Tier::terrestrial}, laws.scenario(), 0.0);
  for (double z : {0.0, 10.0, 0.5 * d_at0, d_at0 * (1 - 1e-9)}) {
    CHECK(cond_assoc(laws, Tier::terrestrial, z) == doctest::Approx(1.0));
  }
  CHECK(cond_assoc(laws, Tier::terrestrial, 2 * d_at0) < 1.0);
}

TEST_CASE("the high-altitude fleet wins over a destroyed epicenter") {
  Scenario s = destroyed(hap_preset());
  s.n_a = 1;
  const DistanceLaws laws(s);
  // With no TBS within r_d the aerial station sees only the intact ring.
  const double c = cond_assoc(laws, Tier::aerial, 0.0);
  CHECK(c > 0.0);
  CHECK(c <= 1.0);
  CHECK(c == doctest::Approx(laws.survival_zt(exclusion_z({Tier::aerial, Tier::terrestrial}, s, 0.0))));
}

TEST_CASE("association probabilities are complementary across profiles and positions") {
  for (ProfileFamily f : {ProfileFamily::constant, ProfileFamily::linear, ProfileFamily::sqrt,
                          ProfileFamily::exponential}) {
    for (double r_d : {300.0, 1000.0, 4000.0}) {
      for (double r_u_frac : {0.0, 0.5, 1.3}) {
        for (int n_a : {1, 3, 8}) {
          Scenario s = lap(r_u_frac * r_d, n_a, f, 0.2);
          s.r_d = r_d;
          const AssociationReport r = association_report(DistanceLaws(s));
          INFO(to_string(f) << " r_d=" << r_d << " r_u=" << s.r_u << " n_a=" << n_a);
          CHECK(r.converged);
          CHECK(std::abs(r.a_a + r.a_t - 1.0) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("a larger fleet attracts more UEs") {
  for (double r_u : {0.0, 800.0, 1500.0}) {
    double prev = -1.0;
    for (int n_a = 0; n_a <= 8; ++n_a) {
      const double a = assoc_prob(DistanceLaws(lap(r_u, n_a)), Tier::aerial);
      CHECK(a >= prev - 1e-9);
      prev = a;
    }
  }
}

TEST_CASE("conditional association probabilities are probabilities") {
  const DistanceLaws laws(lap(600.0, 4, ProfileFamily::sqrt, 0.1));
  for (Tier b : {Tier::aerial, Tier::terrestrial}) {
    double prev = 2.0;
    for (int i = 0; i <= 100; ++i) {
      const double z = 40.0 * i;
      const double c = cond_assoc(laws, b, z);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      // A farther tagged station faces a wider contest.
      CHECK(c <= prev + 1e-12);
      prev = c;
    }
  }
}

TEST_CASE("exclusion inverses round-trip") {
  for (const Scenario& s : {lap_preset(), hap_preset()}) {
    for (double omega : {50.0, 400.0, 3000.0}) {
      const double z = tbs_distance_for_aerial_exclusion(s, omega);
      CHECK(exclusion_z({Tier::terrestrial, Tier::aerial}, s, z) == doctest::Approx(omega));
      const double za = abs_distance_for_terrestrial_exclusion(s, omega);
      if (za >= 0.0) {
        CHECK(exclusion_z({Tier::aerial, Tier::terrestrial}, s, za) == doctest::Approx(omega));
      }
    }
  }
}

TEST_CASE("simulated association frequencies agree with the analytic split") {
  for (double r_u : {0.0, 1200.0}) {
    const Scenario s = lap(r_u, 3);
    const double a = assoc_prob(DistanceLaws(s), Tier::aerial);
    MCConfig cfg;
    cfg.trials = 40000;
    cfg.seed = 17;
    const MCEstimate e = estimate(s, cfg);
    const double freq = static_cast<double>(e.served_a) / cfg.trials;
    INFO("r_u=" << r_u << " analytic=" << a << " simulated=" << freq);
    CHECK(uavcov::test::within_sigma(freq, a, std::sqrt(a * (1 - a)), cfg.trials, 3.5));
  }
}
