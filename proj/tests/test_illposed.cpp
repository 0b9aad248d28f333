#include <doctest.h>

#include <cmath>

#include "fnls/illposed.hpp"
#include "test_helpers.hpp"

using namespace fnls;
using test::rel_err;

TEST_CASE("ill-posedness datum construction") {
  TorusSpec t = make_torus(1.0, 64);
  IllposedDatum d = build_illposed_data(16, 0.0, 0.75, t);
  CHECK(d.l == 2);
  CHECK(d.amplitude == doctest::Approx(std::pow(16.0, -0.125)).epsilon(1e-14));
  CHECK(d.field.support_modes() == std::vector<int>{16, 17, 18});

  CHECK_THROWS_AS(build_illposed_data(40, 0.0, 0.75, t), std::invalid_argument);

  SUBCASE("unit-size H^s norm across the whole n range") {
    for (double s : {0.0, 0.125, 0.25}) {
      for (std::int64_t n : {16, 64, 256, 1024, 4096}) {
        TorusSpec big = make_torus(1.0, 16384);
        IllposedDatum dn = build_illposed_data(n, s, 0.75, big);
        double norm = sobolev_norm(dn.field, s);
        CHECK(norm >= 0.25);
        CHECK(norm <= 4.0);
      }
    }
  }
}

TEST_CASE("approximate galilean identity") {
  TorusSpec t = make_torus(1.0, 256);

  SUBCASE("zero time gives a vanishing remainder") {
    IllposedDatum d = build_illposed_data(32, 0.0, 0.75, t);
    SpectralField f = synthesize_modes(t, {{0, Complex{1.0, 0.0}}, {1, Complex{0.5, 0.2}}});
    GalileanReport rep = galilean_error(f, 1, 32, 0.0, 0.75);
    CHECK(rep.max_ratio == 0.0);
    for (const Complex& c : rep.w.coeffs) CHECK(c == Complex{});
  }

  SUBCASE("single mode at zero frequency is exact") {
    SpectralField f = synthesize_modes(t, {{0, Complex{2.0, -1.0}}});
    GalileanReport rep = galilean_error(f, 2, 16, 0.37, 0.75);
    CHECK(rep.max_ratio == 0.0);
  }

  SUBCASE("certified ratio stays below one on a grid") {
    for (double alpha : {0.6, 0.75, 0.9}) {
      for (std::int64_t n : {16, 64, 256}) {
        auto l = static_cast<std::int64_t>(std::floor(std::pow(n, 1.0 - alpha)));
        std::vector<std::pair<int, Complex>> modes;
        Rng rng(static_cast<std::uint64_t>(n) * 7 + 1);
        for (std::int64_t k = -l; k <= l; ++k)
          modes.emplace_back(static_cast<int>(k), rng.complex_gaussian());
        TorusSpec spec = make_torus(1.0, 2048);
        SpectralField f = synthesize_modes(spec, modes);
        for (double tt : {0.01, 0.1, 1.0}) {
          GalileanReport rep = galilean_error(f, l, n, tt, alpha);
          CHECK(rep.max_ratio <= 1.0 + 1e-9);
        }
      }
    }
  }

  SUBCASE("support beyond [-l, l] is rejected") {
    SpectralField f = synthesize_modes(t, {{3, Complex{1.0, 0.0}}});
    CHECK_THROWS_AS(galilean_error(f, 2, 16, 0.1, 0.75), std::invalid_argument);
    CHECK_THROWS_AS(galilean_error(f, 3, 2, 0.1, 0.75), std::invalid_argument);
  }
}

TEST_CASE("convolution dominance") {
  TorusSpec t = make_torus(1.0, 64);
  Rng rng(5);

  auto random_nonneg = [&](int cap) {
    SpectralField f = zero_field(t);
    for (int m = -cap; m <= cap; ++m)
      f.coeffs[static_cast<std::size_t>(t.index_of_mode(m))] = Complex{rng.uniform(), 0.0};
    return f;
  };

  SUBCASE("equality at g = f") {
    SpectralField f = random_nonneg(6);
    DominanceReport rep = convolution_dominance_check(f, f, 2, 1);
    CHECK(rep.holds);
    CHECK(std::abs(rep.slack) <= 1e-12 * rep.rhs);
  }

  SUBCASE("zero g") {
    SpectralField f = random_nonneg(6);
    DominanceReport rep = convolution_dominance_check(f, zero_field(t), 1, 1);
    CHECK(rep.holds);
    CHECK(rep.lhs == 0.0);
  }

  SUBCASE("randomized instances across (p, q)") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
      for (int rep_i = 0; rep_i < 50; ++rep_i) {
        SpectralField f = random_nonneg(5);
        SpectralField g = f;
        for (auto& c : g.coeffs)
          if (c != Complex{}) c *= rng.unit_phase() * rng.uniform();
        DominanceReport rep = convolution_dominance_check(f, g, p, q);
        CHECK(rep.holds);
      }
    }
  }

  SUBCASE("precondition violations identify the mode") {
    SpectralField f = random_nonneg(3);
    SpectralField bad = f;
    bad.coeffs[static_cast<std::size_t>(t.index_of_mode(1))] *= Complex{0.0, 1.0};
    CHECK_THROWS_WITH_AS(convolution_dominance_check(bad, f, 1, 1),
                         doctest::Contains("mode 1"), std::invalid_argument);
    SpectralField big = f;
    big.coeffs[static_cast<std::size_t>(t.index_of_mode(2))] =
        f.coeff_of_mode(2) + Complex{1.0, 0.0};
    CHECK_THROWS_AS(convolution_dominance_check(f, big, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("picard growth experiment") {
  SUBCASE("input validation") {
    CHECK_THROWS_AS(picard_growth_experiment(0.0, 0.75, {64, 64}, 0.05),
                    std::invalid_argument);
    CHECK_THROWS_AS(picard_growth_experiment(0.0, 0.75, {64, 128}, 0.5),
                    std::invalid_argument);
  }

  SUBCASE("corrected exponent tracks 1 - alpha - 2s on a short ladder") {
    PicardReport rep = picard_growth_experiment(0.0, 0.75, {64, 128, 256, 512}, 0.05);
    CHECK(rep.predicted_exponent == doctest::Approx(0.25));
    CHECK(std::abs(rep.corrected_fit.slope - 0.25) < 0.05);
    for (std::size_t i = 0; i < rep.ns.size(); ++i) {
      CHECK(rep.hs_norms[i] > 0.0);
      CHECK(rel_err(rep.hs_norms[i], rep.model_norms[i]) < 0.2);
    }
  }

  SUBCASE("iterate grows linearly in t") {
    std::vector<double> lt, ln;
    for (double tt : {0.02, 0.04, 0.08}) {
      lt.push_back(std::log(tt));
      ln.push_back(std::log(picard_iterate_hs_norm(128, 0.0, 0.75, tt)));
    }
    LineFit fit = fit_line(lt, ln);
    CHECK(std::abs(fit.slope - 1.0) < 0.05);
  }
}
