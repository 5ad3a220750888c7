#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "phaseshor/transforms.hpp"

using namespace phaseshor;

namespace {

StateVector basis(int m, int n) {
  StateVector s;
  s[BasisLabel{m, n}] = 1.0;
  return s;
}

double max_diff(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Random normalized state supported on the y = 0 slice.
StateVector random_slice_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector s;
  double n2 = 0.0;
  for (int m = 0; m < 4; ++m) {
    s[BasisLabel{m, 0}] = {g(rng), g(rng)};
    n2 += std::norm(s[BasisLabel{m, 0}]);
  }
  for (int m = 0; m < 4; ++m) s[BasisLabel{m, 0}] /= std::sqrt(n2);
  return s;
}

}  // namespace

TEST_CASE("superpose_x") {
  SUBCASE("ground state becomes the uniform x-superposition with y = 0") {
    const auto s = superpose_x(init_ground());
    for (int m = 0; m < 4; ++m) {
      CHECK(std::abs(s[BasisLabel{m, 0}] - 0.5) < 1e-15);
      for (int n = 1; n < 4; ++n) CHECK(s[BasisLabel{m, n}] == Amplitude{});
    }
  }
  SUBCASE("self-inverse; matches the explicit 4x4 product H(x)H . H(x)H = 1") {
    const auto hh = oracle::hadamard_x4();
    const auto sq = oracle::matmul4(hh, hh);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(std::abs(sq[i][j] - (i == j ? 1.0 : 0.0)) < 1e-15);
    const auto twice = superpose_x(superpose_x(init_ground()));
    CHECK(max_diff(twice, init_ground()) < 1e-15);
  }
  SUBCASE("agrees with the dense Kronecker-product oracle and preserves norm") {
    std::mt19937_64 rng(1);
    const auto h = oracle::hadamard_x();
    for (int i = 0; i < 50; ++i) {
      const auto s = oracle::random_state(rng);
      const auto out = superpose_x(s);
      CHECK(oracle::max_diff(oracle::to_vec(out), oracle::mat_vec(h, oracle::to_vec(s))) < 1e-14);
      CHECK(std::abs(norm(out) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("mod_exp_classical gives 3^x mod 4") {
  CHECK(mod_exp_classical(0) == 1);
  CHECK(mod_exp_classical(1) == 3);
  CHECK(mod_exp_classical(2) == 1);
  CHECK(mod_exp_classical(3) == 3);
  CHECK_THROWS_AS(mod_exp_classical(4), std::invalid_argument);
  CHECK_THROWS_AS(mod_exp_classical(-1), std::invalid_argument);
}

TEST_CASE("apply_mod_exp") {
  SUBCASE("|0,0> -> |0,1>") { CHECK(max_diff(apply_mod_exp(init_ground()), basis(0, 1)) == 0.0); }
  SUBCASE("relabels y and carries each phase unchanged") {
    const auto e = default_spectrum();
    const double tau1 = 0.81;
    const auto evolved = free_evolve(superpose_x(init_ground()), e, tau1);
    const auto out = apply_mod_exp(evolved);
    const int y[4] = {1, 3, 1, 3};
    for (int m = 0; m < 4; ++m) {
      CHECK(out[BasisLabel{m, y[m]}] == evolved[BasisLabel{m, 0}]);
      // The phase no longer matches the state's own energy.
      CHECK(std::abs(std::arg(out[BasisLabel{m, y[m]}]) -
                     wrap_phase(-e(m, y[m]) * tau1)) > 1e-3);
    }
    CHECK(std::abs(norm(out) - 1.0) <= 1e-12);
  }
  SUBCASE("matches the permutation oracle on random slice states") {
    std::mt19937_64 rng(4);
    const auto p = oracle::mod_exp_on_slice();
    for (int i = 0; i < 20; ++i) {
      const auto s = random_slice_state(rng);
      CHECK(oracle::max_diff(oracle::to_vec(apply_mod_exp(s)),
                             oracle::mat_vec(p, oracle::to_vec(s))) == 0.0);
    }
  }
  SUBCASE("weight outside y = 0 is rejected") {
    CHECK_THROWS_AS(apply_mod_exp(basis(2, 1)), std::invalid_argument);
    StateVector s = superpose_x(init_ground());
    s[BasisLabel{3, 2}] = 1e-6;
    CHECK_THROWS_AS(apply_mod_exp(s), std::invalid_argument);
  }
}

TEST_CASE("dft_x") {
  SUBCASE("|0,n> -> (1/2) sum_k |k,n>") {
    for (int n = 0; n < 4; ++n) {
      const auto out = dft_x(basis(0, n));
      for (int k = 0; k < 4; ++k) {
        CHECK(out[BasisLabel{k, n}] == Amplitude(0.5, 0.0));
      }
    }
  }
  SUBCASE("agrees with the dense DFT oracle; unitary") {
    std::mt19937_64 rng(8);
    const auto f = oracle::dft_x();
    for (int i = 0; i < 50; ++i) {
      const auto s = oracle::random_state(rng);
      const auto out = dft_x(s);
      CHECK(oracle::max_diff(oracle::to_vec(out), oracle::mat_vec(f, oracle::to_vec(s))) < 1e-14);
      CHECK(std::abs(norm(out) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("fourth power is the identity on every basis state") {
    for (std::size_t i = 0; i < kDim; ++i) {
      const auto b = basis(BasisLabel::from_index(i).m, BasisLabel::from_index(i).n);
      CHECK(max_diff(dft_x(dft_x(dft_x(dft_x(b)))), b) <= 1e-12);
    }
  }
}

TEST_CASE("free-evolution pipeline") {
  SUBCASE("zero delays give (1/2)(|0,1> + |2,1> + |0,3> - |2,3>)") {
    const auto s = run_pipeline(PipelineMode::FreeEvolution, default_spectrum(), {0.0, 0.0});
    StateVector ideal;
    ideal[BasisLabel{0, 1}] = 0.5;
    ideal[BasisLabel{2, 1}] = 0.5;
    ideal[BasisLabel{0, 3}] = 0.5;
    ideal[BasisLabel{2, 3}] = -0.5;
    CHECK(max_diff(s, ideal) <= 1e-12);
    CHECK(amplitude_of(s, 2, 3) == Amplitude(-0.5, 0.0));
    CHECK(amplitude_of(s, 1, 1) == Amplitude{});
  }
  SUBCASE("frozen amplitudes, default spectrum, tau1 = tau2 = 0.1") {
    // Computed independently with numpy dense matrices.
    const auto s = run_pipeline(PipelineMode::FreeEvolution, default_spectrum(), {0.1, 0.1});
    CHECK(std::abs(amplitude_of(s, 0, 1) - Amplitude(0.3576716528886844, -0.2499834647058332)) <
          1e-14);
    CHECK(std::abs(amplitude_of(s, 1, 1) -
                   Amplitude(0.13983042975032842, 0.20006675638241916)) < 1e-14);
    CHECK(std::abs(amplitude_of(s, 0, 3) -
                   Amplitude(-0.004016170919366277, -0.4363537719300734)) < 1e-14);
    CHECK(amplitude_of(s, 1, 0) == Amplitude{});
  }
  SUBCASE("matches the dense oracle and the per-chain closed form for random inputs") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> t(0.0, 5.0);
    for (int i = 0; i < 200; ++i) {
      const auto e = oracle::random_spectrum(rng);
      const double t1 = t(rng);
      const double t2 = t(rng);
      const auto got = oracle::to_vec(run_pipeline(PipelineMode::FreeEvolution, e, {t1, t2}));
      REQUIRE(oracle::max_diff(got, oracle::pipeline(e, t1, t2)) <= 1e-12);
      REQUIRE(oracle::max_diff(got, oracle::closed_form_final(e, t1, t2)) <= 1e-12);
    }
  }
  SUBCASE("|1,1> modulus is (1/2)|sin(delta/2)|") {
    const auto e = default_spectrum();
    const double delta = (e(2, 0) - e(0, 0)) * 0.1 + (e(2, 1) - e(0, 1)) * 0.1;
    const auto s = run_pipeline(PipelineMode::FreeEvolution, e, {0.1, 0.1});
    CHECK(std::abs(std::abs(amplitude_of(s, 1, 1)) - 0.5 * std::abs(std::sin(delta / 2))) <=
          1e-12);
  }
  SUBCASE("zero spectrum equals the zero-delay run exactly") {
    const auto ref = run_pipeline(PipelineMode::FreeEvolution, EnergySpectrum{}, {0.0, 0.0});
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> t(0.0, 50.0);
    for (int i = 0; i < 50; ++i) {
      const auto s = run_pipeline(PipelineMode::FreeEvolution, EnergySpectrum{}, {t(rng), t(rng)});
      CHECK(max_diff(s, ref) == 0.0);
    }
  }
  SUBCASE("negative delays are rejected") {
    CHECK_THROWS_AS(run_pipeline(PipelineMode::FreeEvolution, default_spectrum(), {-1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_pipeline(PipelineMode::NaturalPhase, default_spectrum(), {0.0, NAN}),
                    std::invalid_argument);
  }
}

TEST_CASE("history chains: |0,1> splits into the |0,0> and |2,0> contributions") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> t(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const auto e = oracle::random_spectrum(rng);
    const DelaySchedule d{t(rng), t(rng)};
    StateVector from00;
    from00[BasisLabel{0, 0}] = 0.5;
    StateVector from20;
    from20[BasisLabel{2, 0}] = 0.5;
    const Amplitude a = amplitude_of(evolve_after_superposition(from00, e, d), 0, 1);
    const Amplitude b = amplitude_of(evolve_after_superposition(from20, e, d), 0, 1);

    const Amplitude term15 = 0.25 * std::exp(Amplitude(0, -e(0, 0) * d.tau1 - e(0, 1) * d.tau2));
    const Amplitude term16 = 0.25 * std::exp(Amplitude(0, -e(2, 0) * d.tau1 - e(2, 1) * d.tau2));
    CHECK(std::abs(a - term15) <= 1e-12);
    CHECK(std::abs(b - term16) <= 1e-12);
    const auto full = run_pipeline(PipelineMode::FreeEvolution, e, d);
    CHECK(std::abs(amplitude_of(full, 0, 1) - (a + b)) <= 1e-12);
    // The surviving |1,1> amplitude is the difference of the same two chains.
    CHECK(std::abs(amplitude_of(full, 1, 1) - (term15 - term16)) <= 1e-12);
  }
}

TEST_CASE("natural-phase pipeline") {
  SUBCASE("x-distribution is {0.5, 0, 0.5, 0} for any spectrum and delays") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> t(0.0, 20.0);
    for (int i = 0; i < 200; ++i) {
      const auto e = oracle::random_spectrum(rng);
      const auto p = measure_x_distribution(run_pipeline(PipelineMode::NaturalPhase, e,
                                                         {t(rng), t(rng)}));
      CHECK(std::abs(p[0] - 0.5) <= 1e-12);
      CHECK(std::abs(p[1]) <= 1e-12);
      CHECK(std::abs(p[2] - 0.5) <= 1e-12);
      CHECK(std::abs(p[3]) <= 1e-12);
    }
  }
  SUBCASE("each amplitude is the ideal one times its natural phase exp(-i E_mn t)") {
    const auto e = default_spectrum();
    const DelaySchedule d{7.3, 1.9};
    const auto s = run_pipeline(PipelineMode::NaturalPhase, e, d);
    const auto ideal = run_pipeline(PipelineMode::FreeEvolution, e, {0.0, 0.0});
    for (std::size_t i = 0; i < kDim; ++i) {
      const Amplitude expected = ideal[i] * std::exp(Amplitude(0, -e[i] * (d.tau1 + d.tau2)));
      CHECK(std::abs(s[i] - expected) <= 1e-12);
    }
  }
}

TEST_CASE("pipeline mode names") {
  CHECK(parse_pipeline_mode("natural-phase") == PipelineMode::NaturalPhase);
  CHECK(parse_pipeline_mode(to_string(PipelineMode::FreeEvolution)) ==
        PipelineMode::FreeEvolution);
  CHECK_THROWS_AS(parse_pipeline_mode("resonant"), std::invalid_argument);
}
