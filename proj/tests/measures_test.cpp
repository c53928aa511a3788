#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "morphcomp/error.hpp"
#include "morphcomp/estimation.hpp"
#include "morphcomp/measures.hpp"
#include "oracles.hpp"

using namespace morph;

namespace {

double row_sum(std::span<const double> row) {
  double s = 0.0;
  for (double x : row) s += x;
  return s;
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("measure names round-trip") {
  for (Measure m : kAllMeasures) CHECK(parse_measure(measure_name(m)) == m);
  CHECK_FALSE(parse_measure("asoc_w").has_value());
  CHECK_FALSE(parse_measure("MC_X").has_value());
}

TEST_CASE("range band and clamping") {
  CHECK(clamp_unit(1.0 + 5e-10, "x") == 1.0);
  CHECK(clamp_unit(-5e-10, "x") == 0.0);
  CHECK(clamp_unit(0.25, "x") == 0.25);
  CHECK_THROWS_AS(clamp_unit(-2e-9, "x"), ConsistencyError);
  CHECK_THROWS_AS(clamp_unit(1.0 + 2e-9, "x"), ConsistencyError);
  CHECK_THROWS_AS(normalizer(Alphabet(1)), DegenerateAlphabetError);
  CHECK(normalizer(Alphabet(2)) == std::numbers::ln2);

  MeasureReport r;
  r.set(Measure::C_W, -1e-10);
  CHECK(*r.get(Measure::C_W) == 0.0);
  CHECK_FALSE(r.get(Measure::C_A).has_value());
}

TEST_CASE("world-level measures match the definitional sums") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const auto j = i % 2 ? testing::random_joint(rng, 2, 2, 2) : testing::random_joint(rng, 3, 2, 3);
    CHECK(std::abs(mc_a(j) - testing::brute_mc_a(j)) <= 1e-12);
    CHECK(std::abs(mc_w(j) - testing::brute_mc_w(j)) <= 1e-12);
    CHECK(std::abs(asoc_a(j) - testing::brute_mc_a(j)) <= 1e-12);
    CHECK(std::abs(asoc_w(j) - testing::brute_mc_w(j)) <= 1e-12);
  }
}

TEST_CASE("deterministic policy collapses the world-level measures") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    // The action must identify the state; a many-to-one map leaves MC_W > 0.
    const Alphabet w(2 + i % 3), a(w.size());
    std::vector<std::size_t> perm(w.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> policy(w.size() * a.size(), 0.0);
    for (std::size_t x = 0; x < w.size(); ++x) policy[x * a.size() + perm[x]] = 1.0;
    const Joint3 j = compose_joint(Distribution(w, testing::random_simplex(rng, w.size())),
                                   Kernel2(w, a, policy),
                                   Kernel3(w, a, w, testing::random_rows(rng, w.size() * a.size(), w.size())));
    CHECK(mc_a(j) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mc_w(j) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("many-to-one deterministic policy keeps world information") {
  // w uniform over 3 states, a = [w == 2], w' = w.
  const Alphabet w(3), a(2);
  std::vector<double> p(18, 0.0);
  for (std::size_t x = 0; x < 3; ++x) p[(x * 2 + (x == 2)) * 3 + x] = 1.0 / 3.0;
  const Joint3 j(w, a, w, p);
  CHECK(mc_a(j) == doctest::Approx(1.0));
  // Given a = 0, w' is uniform over two states: I(W';W|A) = (2/3) ln 2.
  CHECK(mc_w(j) == doctest::Approx(2.0 / 3.0 * std::numbers::ln2 / std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("causal information flow of a copy channel") {
  const Alphabet two(2);
  // Point-mass rows against the uniform mixture: each term is ln 2.
  CHECK(cif(Kernel2::identity(two), Distribution::uniform(two)) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(cif(Kernel2::uniform(two, two), Distribution::uniform(two)) == 0.0);
}

TEST_CASE("interventional kernels on random models") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    const auto model = testing::random_model(rng);
    const auto& pol = model.policy();
    const Kernel2 da = do_a(model);
    const Kernel2 ds = do_s(model);
    const std::size_t ns = model.sensors().size(), na = model.actions().size();

    // do_a by its defining sum.
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t t = 0; t < ns; ++t) {
        double v = 0.0;
        for (std::size_t s = 0; s < ns; ++s) v += model.world_model()(s, a, t) * model.sensor_prior()[s];
        CHECK(std::abs(da(a, t) - v) <= 1e-12);
      }
    // do_s is the policy-weighted mixture of do_a rows.
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t t = 0; t < ns; ++t) {
        double v = 0.0;
        for (std::size_t a = 0; a < na; ++a) v += pol(s, a) * da(a, t);
        CHECK(std::abs(ds(s, t) - v) <= 1e-12);
      }

    const double flow_s = cif(ds, model.sensor_prior());
    const double flow_a = cif(da, action_marginal(model));
    CHECK(flow_s <= flow_a + 1e-9);

    const auto forms = c_a_forms(model);
    CHECK(std::abs(forms.bottleneck - forms.divergence) <= 1e-9);
    CHECK(forms.bottleneck ==
          doctest::Approx(1.0 + (flow_s - flow_a) / std::log(static_cast<double>(ns))));
    CHECK(c_a(model) == doctest::Approx(std::clamp(forms.divergence, 0.0, 1.0)));

    const Kernel2 tilde = world_free_transition(model);
    const Kernel2 trans = sensor_transition(model);
    for (std::size_t s = 0; s < ns; ++s) {
      CHECK(std::abs(row_sum(tilde.row(s)) - 1.0) <= 1e-9);
      CHECK(std::abs(row_sum(trans.row(s)) - 1.0) <= 1e-9);
    }

    // A consistent joint p(s)p(a|s)p(s'|s,a) cannot have C_W above ASOC_W.
    const MeasureReport r = intrinsic_report(model);
    CHECK(*r.get(Measure::C_W) <= *r.get(Measure::ASOC_W) + 1e-9);
    for (const auto& [m, v] : r.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("world-free transition by its expanded sum") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 200; ++i) {
    const auto model = testing::random_model(rng);
    const std::size_t ns = model.sensors().size(), na = model.actions().size();
    const auto& ps = model.sensor_prior();
    const auto& pol = model.policy();
    const auto& wm = model.world_model();
    std::vector<double> pa(na, 0.0);
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t a = 0; a < na; ++a) pa[a] += pol(s, a) * ps[s];
    const Kernel2 tilde = world_free_transition(model);
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t t = 0; t < ns; ++t) {
        double v = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
          if (pol(s, a) == 0.0) continue;
          double inner = 0.0;
          for (std::size_t u = 0; u < ns; ++u) inner += wm(u, a, t) * pol(u, a) * ps[u];
          v += pol(s, a) * inner / pa[a];
        }
        CHECK(std::abs(tilde(s, t) - v) <= 1e-12);
      }
    // C_W as the prior-weighted KL between the two transitions.
    const Kernel2 trans = sensor_transition(model);
    double d = 0.0;
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t t = 0; t < ns; ++t) {
        const double p = trans(s, t);
        if (p > 0.0) d += ps[s] * p * std::log(p / tilde(s, t));
      }
    CHECK(c_w(model) == doctest::Approx(d / std::log(static_cast<double>(ns))).epsilon(1e-12));
  }
}

TEST_CASE("world model that ignores the action gives C_A = 1") {
  std::mt19937_64 rng(25);
  const Alphabet s(3), a(2);
  const auto base = testing::random_rows(rng, 3, 3);
  std::vector<double> wm;
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 2; ++y) wm.insert(wm.end(), base.begin() + x * 3, base.begin() + x * 3 + 3);
  const IntrinsicModel m(Distribution(s, testing::random_simplex(rng, 3)),
                         Kernel2(s, a, testing::random_rows(rng, 3, 2)), Kernel3(s, a, s, wm));
  CHECK(c_a(m) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("world model independent of the previous sensor gives C_W = 0") {
  std::mt19937_64 rng(26);
  const Alphabet s(3), a(2);
  const auto base = testing::random_rows(rng, 2, 3);
  std::vector<double> wm;
  for (std::size_t x = 0; x < 3; ++x) wm.insert(wm.end(), base.begin(), base.end());
  const IntrinsicModel m(Distribution(s, testing::random_simplex(rng, 3)),
                         Kernel2(s, a, testing::random_rows(rng, 3, 2)), Kernel3(s, a, s, wm));
  CHECK(c_w(m) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("C_W requires support for every action the policy can emit") {
  const Alphabet two(2);
  const IntrinsicModel m(Distribution(two, {1.0, 0.0}), Kernel2::identity(two),
                         Kernel3::uniform(two, two, two));
  CHECK_THROWS_AS(c_w(m), SupportError);
}

TEST_CASE("intrinsic model alphabets must agree") {
  const Alphabet two(2), three(3);
  CHECK_THROWS_AS(IntrinsicModel(Distribution::uniform(two), Kernel2::uniform(two, two),
                                 Kernel3::uniform(three, two, three)),
                  DimensionError);
}

TEST_CASE("deliberative measure reduces to C_A when the controller is the sensor") {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 200; ++i) {
    const auto model = testing::random_model(rng);
    const std::size_t ns = model.sensors().size(), na = model.actions().size();
    std::vector<double> joint(ns * na);
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t a = 0; a < na; ++a)
        joint[s * na + a] = model.sensor_prior()[s] * model.policy()(s, a);
    const double d = c_a_deliberative(model.sensor_prior(), model.policy(), do_s(model),
                                      do_a(model), joint);
    CHECK(std::abs(d - c_a(model)) <= 1e-9);
  }
}

TEST_CASE("deliberative measure against its defining sum") {
  std::mt19937_64 rng(28);
  for (int i = 0; i < 200; ++i) {
    const Alphabet c(2 + i % 3), a(2), s(2 + i % 2);
    const Distribution pc(c, testing::random_simplex(rng, c.size()));
    const Kernel2 pol(c, a, testing::random_rows(rng, c.size(), 2));
    const Kernel2 da(a, s, testing::random_rows(rng, 2, s.size()));
    // do(c) as the policy mixture of do(a) keeps the divergence finite and small.
    std::vector<double> dc_entries;
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t t = 0; t < s.size(); ++t)
        dc_entries.push_back(pol(x, 0) * da(0, t) + pol(x, 1) * da(1, t));
    const Kernel2 dc(c, s, dc_entries);
    std::vector<double> joint;
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = 0; y < 2; ++y) joint.push_back(pc[x] * pol(x, y));
    const double expect = testing::brute_c_a_deliberative(joint, c.size(), 2, dc, da);
    CHECK(c_a_deliberative(pc, pol, dc, da, joint) ==
          doctest::Approx(std::clamp(expect, 0.0, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("deliberative measure with matching rows under a deterministic policy") {
  const Alphabet two(2), three(3);
  const Kernel2 rows(two, three, {0.2, 0.3, 0.5, 0.6, 0.3, 0.1});
  const Distribution pc(two, {0.4, 0.6});
  const std::vector<double> joint{0.4, 0.0, 0.0, 0.6};
  CHECK(c_a_deliberative(pc, Kernel2::identity(two), rows, rows, joint) == 1.0);
  CHECK_THROWS_AS(
      c_a_deliberative(pc, Kernel2::identity(two), rows, rows, std::vector<double>{0.5, 0, 0, 0.5}),
      ArgumentError);
}

TEST_CASE("deliberative measure reports unsupported divergences") {
  const Alphabet two(2);
  const Distribution pc(two, {0.5, 0.5});
  const Kernel2 da(two, two, {0.5, 0.5, 0.5, 0.5});
  const Kernel2 dc(two, two, {1.0, 0.0, 0.0, 1.0});
  const std::vector<double> joint{0.25, 0.25, 0.25, 0.25};
  CHECK_THROWS_AS(c_a_deliberative(pc, Kernel2::uniform(two, two), dc, da, joint), DivergenceError);
}

TEST_CASE("uniform model through the joint") {
  const Alphabet s(3), a(2);
  const IntrinsicModel m(Distribution::uniform(s), Kernel2::uniform(s, a), Kernel3::uniform(s, a, s));
  const Joint3 j = joint_from_model(m);
  for (double p : j.probs()) CHECK(p == doctest::Approx(1.0 / 18.0));
  CHECK(asoc_a(j) == doctest::Approx(1.0));
  CHECK(asoc_w(j) == doctest::Approx(0.0));
}

}  // TEST_SUITE
