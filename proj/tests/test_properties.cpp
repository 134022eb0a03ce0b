#include <gtest/gtest.h>

#include <algorithm>

#include "corpus.hpp"
#include "jacsyz/syzygy.hpp"

using namespace jacsyz;

namespace {

std::vector<RatVector> echelon_rows(const Echelon& e) {
  std::vector<RatVector> rows;
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    rows.emplace_back(e.reduced.row(r).begin(), e.reduced.row(r).end());
  return rows;
}

unsigned n_of(const HomogeneousPoly& f) { return static_cast<unsigned>(f.num_vars()) - 1; }

}  // namespace

class Corpus : public ::testing::TestWithParam<std::size_t> {
 protected:
  const corpus::Entry& entry() const { return corpus::all().at(GetParam()); }
};

TEST_P(Corpus, EulerCheck) {
  const auto& f = entry().input.f;
  EXPECT_TRUE(euler_check(f));
  for (const auto& d : gradient(f)) EXPECT_TRUE(euler_check(d));
}

TEST_P(Corpus, FormulaMatchesMatrixDimensions) {
  const auto& f = entry().input.f;
  for (long m = 0; m <= socle_degree(f); ++m) {
    const auto dims = prop1_dims(f, m);
    const auto mm = static_cast<unsigned>(m);
    const RatMatrix a = syzygy_matrix(f, mm);
    EXPECT_EQ(a.cols() - rank(a), dims.ar) << entry().name << " m=" << m;
    EXPECT_EQ(koszul_dim(f, mm), dims.kr) << entry().name << " m=" << m;
    EXPECT_EQ(dims.ar, dims.kr + dims.er);
  }
}

TEST_P(Corpus, KoszulInsideEveryProjectionKernel) {
  const auto& e = entry();
  const auto& f = e.input.f;
  for (long m = 0; m <= duality_degree(f) + 1; ++m) {
    const auto ar = ar_basis_full(f, static_cast<unsigned>(m));
    const auto kr = echelon_rows(koszul_coordinates(f, ar));
    for (std::size_t c = 0; c < f.num_vars(); ++c) {
      const auto kernel = projection_kernel(ar, e.records, c);
      EXPECT_TRUE(span_contains(kernel, kr, ar.size())) << e.name << " m=" << m << " c=" << c;
    }
  }
}

TEST_P(Corpus, DefectDuality) {
  const auto& e = entry();
  if (!e.weighted_homogeneous) GTEST_SKIP() << "duality needs weighted homogeneous points";
  const auto& f = e.input.f;
  for (long m = 0; m <= duality_degree(f); ++m) {
    const auto row = defect(f, e.records, m);
    EXPECT_EQ(row.defect, static_cast<long>(row.dual_er)) << e.name << " m=" << m;
  }
}

TEST_P(Corpus, EssentialSyzygiesEmbedInQuotient) {
  const auto& e = entry();
  if (!e.weighted_homogeneous) GTEST_SKIP() << "embedding needs weighted homogeneous points";
  const auto& f = e.input.f;
  const long stable = static_cast<long>(n_of(f)) * (static_cast<long>(f.degree()) - 2);
  const long top = std::max(duality_degree(f) + 2, stable + 2);
  for (long m = 0; m <= top; ++m) {
    const std::size_t er = er_dim(f, m);
    const std::size_t q = ideal_piece_dim(f, e.records, m).quotient;
    EXPECT_LE(er, q) << e.name << " m=" << m;
    if (m >= stable) EXPECT_EQ(er, q) << e.name << " m=" << m;
  }
}

TEST_P(Corpus, AllProjectionKernelsAgreeInTransversalCoordinates) {
  const auto& e = entry();
  if (!e.weighted_homogeneous) GTEST_SKIP() << "kernel coincidence needs weighted homogeneous points";
  const auto change = find_transversal_coordinates(e.input.f, e.input.singular_points, 2024);
  const HomogeneousPoly g = linear_change(e.input.f, change.matrix);
  std::vector<SingularPointRecord> records;
  for (const auto& q : e.input.singular_points)
    records.push_back(analyze_point(g, transform_point(change.inverse, q)));
  for (long m = 0; m <= duality_degree(g) + 1; ++m) {
    const auto ar = ar_basis_full(g, static_cast<unsigned>(m));
    const auto kr = echelon_rows(koszul_coordinates(g, ar));
    for (std::size_t c = 0; c < g.num_vars(); ++c) {
      const auto kernel = projection_kernel(ar, records, c);
      ASSERT_EQ(kernel.size(), kr.size()) << e.name << " m=" << m << " c=" << c;
      EXPECT_TRUE(span_contains(kernel, kr, ar.size())) << e.name << " m=" << m << " c=" << c;
    }
  }
}

TEST_P(Corpus, AuditHoldsOnWeightedHomogeneousMembers) {
  const auto& e = entry();
  const auto& f = e.input.f;
  const auto rep = audit_corollary_B(f, e.records, 0, duality_degree(f));
  EXPECT_EQ(rep.applicable, e.weighted_homogeneous);
  if (rep.applicable) EXPECT_TRUE(rep.ok) << e.name;
}

TEST_P(Corpus, MilnorAtLeastTjurinaAndSumsMatchStabilization) {
  const auto& e = entry();
  EXPECT_GE(total_mu(e.records), total_tau(e.records));
  EXPECT_EQ(stabilized_tjurina(e.input.f).tau, total_tau(e.records));
}

INSTANTIATE_TEST_SUITE_P(All, Corpus, ::testing::Range<std::size_t>(0, 7),
                         [](const ::testing::TestParamInfo<std::size_t>& info) {
                           std::string name = corpus::all().at(info.param).name;
                           name = name.substr(0, name.find('.'));
                           return name;
                         });
