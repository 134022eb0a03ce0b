#include <gtest/gtest.h>

#include "corpus.hpp"
#include "jacsyz/milnor.hpp"
#include "jacsyz/parser.hpp"
#include "jacsyz/syzygy.hpp"
#include "oracles.hpp"

using namespace jacsyz;

namespace {
const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kXYZW{"x", "y", "z", "w"};
const auto& cayley() { return corpus::get("cayley_standard.txt").input.f; }
}  // namespace

TEST(JacobianPiece, Dimensions) {
  EXPECT_EQ(jacobian_piece_dim(cayley(), 0), 0u);
  EXPECT_EQ(jacobian_piece_dim(cayley(), 1), 0u);
  EXPECT_EQ(jacobian_piece_dim(cayley(), 2), 4u);
  EXPECT_EQ(jacobian_piece_dim(cayley(), 4), 31u);
}

TEST(MilnorHilbert, CayleyAndFermat) {
  EXPECT_EQ(milnor_hilbert(cayley(), 4).values, (std::vector<std::size_t>{1, 4, 6, 4, 4}));
  const auto fermat = parse_poly("4*(x^3+y^3+z^3+w^3)", kXYZW);
  EXPECT_EQ(milnor_hilbert(fermat, 6).values, (std::vector<std::size_t>{1, 4, 6, 4, 1, 0, 0}));
}

TEST(MilnorHilbert, LineArrangementAgreesWithSyzygyCount) {
  const auto& f = corpus::get("line_arrangement.txt").input.f;
  const auto t = milnor_hilbert(f, 8);
  ASSERT_EQ(t.values.size(), 9u);
  // dim AR(f)_3 = 3*C(5,2) - C(10,2) + dim M(f)_8 = 30 - 45 + dim M(f)_8 = 4.
  EXPECT_EQ(t.values[8], 19u);
  EXPECT_EQ(prop1_dims(f, 3).ar, 4u);
  EXPECT_EQ(ar_basis(f, 3).size(), 4u);
}

TEST(SmoothHilbert, Values) {
  std::vector<std::size_t> series;
  for (long k = 0; k <= 5; ++k) series.push_back(smooth_hilbert(3, 3, k));
  EXPECT_EQ(series, (std::vector<std::size_t>{1, 4, 6, 4, 1, 0}));
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned big_n = 2; big_n <= 6; ++big_n) {
      EXPECT_EQ(smooth_hilbert(n, big_n, 0), 1u);
      const long top = static_cast<long>((n + 1) * (big_n - 2));
      EXPECT_EQ(smooth_hilbert(n, big_n, top + 1), 0u);
      const auto ref = oracle::power_series_product(n + 1, big_n - 1, top + 3);
      for (long k = 0; k <= top + 2; ++k)
        ASSERT_EQ(static_cast<long>(smooth_hilbert(n, big_n, k)), ref[k]) << n << " " << big_n;
    }
}

TEST(ProjectiveSmoothness, Cases) {
  for (int d = 2; d <= 5; ++d) {
    const std::string e = std::to_string(d);
    EXPECT_TRUE(projective_smoothness(parse_poly("x^" + e + "+y^" + e + "+z^" + e, kXYZ)));
  }
  EXPECT_FALSE(projective_smoothness(cayley()));
  const auto& g = corpus::get("cayley_transversal.txt").input.f;
  EXPECT_TRUE(projective_smoothness(restrict_to_hyperplane(g, 0)));
  EXPECT_TRUE(projective_smoothness(parse_poly("x+2*y", kXYZ)));
  EXPECT_FALSE(projective_smoothness(HomogeneousPoly::zero(3, 3)));
}

TEST(StabilizedTjurina, Corpus) {
  const auto cay = stabilized_tjurina(cayley());
  EXPECT_EQ(cay.tau, 4u);
  EXPECT_EQ(cay.table.stable_value, std::optional<std::size_t>(4));
  EXPECT_EQ(stabilized_tjurina(corpus::get("fermat_surface.txt").input.f).tau, 0u);
  const auto& la = corpus::get("line_arrangement.txt");
  EXPECT_EQ(stabilized_tjurina(la.input.f).tau, 19u);
  EXPECT_EQ(total_tau(la.records), 19u);
}

TEST(StabilizedTjurina, NonIsolatedSingularitiesAreRejected) {
  // x^2 y = 0 is singular along the whole line x = 0.
  try {
    stabilized_tjurina(parse_poly("x^2*y", kXYZ));
    FAIL();
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("no stabilization"), std::string::npos);
  }
}

TEST(MilnorProperties, SmoothAndSemicontinuity) {
  for (const auto& e : corpus::all()) {
    const auto& f = e.input.f;
    const unsigned n = static_cast<unsigned>(f.num_vars()) - 1;
    const long top = socle_degree(f);
    const auto st = stabilized_tjurina(f);
    EXPECT_EQ(st.tau, total_tau(e.records)) << e.name;
    for (long k = 0; k <= top + 1; ++k) {
      const auto mf = milnor_dim(f, k);
      const auto mg = smooth_hilbert(n, f.degree(), k);
      EXPECT_GE(mf, mg) << e.name << " k=" << k;
      if (e.records.empty()) EXPECT_EQ(mf, mg) << e.name << " k=" << k;
    }
    // The scan stops on a constant window: tau for singular, 0 for smooth.
    EXPECT_EQ(st.table.values.back(), st.tau);
    if (e.records.empty()) EXPECT_EQ(st.tau, 0u);
  }
}
