#include <gtest/gtest.h>

#include "paf/labeling.hpp"
#include "paf/scenario.hpp"
#include "support/generators.hpp"

namespace paf {
namespace {

PatchDictionary constant_dictionary(Index classes, Index side) {
  std::vector<PatchTemplate> list;
  for (Index c = 0; c < classes; ++c) {
    list.emplace_back(side, std::vector<ClassId>(static_cast<std::size_t>(side * side), static_cast<ClassId>(c)));
  }
  return PatchDictionary(std::move(list), classes);
}

// Direct double sum over patch centers j and templates d of
// P_jd * d(i - j), clipped to the grid.
Matrix mean_assignment_oracle(const Matrix& p, const PatchDictionary& dict, const GridGraph& g) {
  const Index r = dict.side() / 2;
  Matrix sum = Matrix::Zero(g.vertex_count(), 1);
  for (Index i = 0; i < g.vertex_count(); ++i) {
    for (Index j = 0; j < g.vertex_count(); ++j) {
      const Index dr = g.row_of(i) - g.row_of(j);
      const Index dc = g.col_of(i) - g.col_of(j);
      if (std::abs(dr) > r || std::abs(dc) > r) continue;
      for (Index d = 0; d < dict.size(); ++d) sum(i, 0) += p(j, d) * dict[d].at(dr + r, dc + r);
    }
  }
  return sum / static_cast<double>(dict.size());
}

TEST(SmoothLabels, Endpoints) {
  const LabelField labels(1, 3, {0, 1, 1}, 2);
  EXPECT_EQ(smooth_labels(labels, 1.0).matrix(), Matrix::Constant(3, 2, 0.5));
  Matrix one_hot(3, 2);
  one_hot << 1, 0, 0, 1, 0, 1;
  EXPECT_EQ(smooth_labels(labels, 0.0).matrix(), one_hot);
  EXPECT_EQ(smooth_labels(labels, 0.5).matrix().row(0), (Eigen::RowVector2d(0.75, 0.25)));
  EXPECT_THROW(smooth_labels(labels, 1.2), std::invalid_argument);
  EXPECT_THROW(smooth_labels(labels, -0.1), std::invalid_argument);
}

TEST(SmoothLabels, AffineInLambda) {
  testing::Rng rng(61);
  const LabelField labels = testing::random_labels(rng, 4, 5, 3);
  const Matrix a = smooth_labels(labels, 0.0).matrix();
  const Matrix b = smooth_labels(labels, 1.0).matrix();
  for (double lambda : {0.1, 0.35, 0.8}) {
    EXPECT_LT((smooth_labels(labels, lambda).matrix() - ((1 - lambda) * a + lambda * b)).cwiseAbs().maxCoeff(),
              1e-15);
  }
}

TEST(Initialize, UniformAtFullSmoothing) {
  testing::Rng rng(62);
  const LabelField labels = testing::random_labels(rng, 5, 6, 2);
  const PatchDictionary dict = line_dictionary();
  const GridGraph g = make_grid(5, 6);
  for (BoundaryMode mode : {BoundaryMode::kClip, BoundaryMode::kReplicate}) {
    const AssignmentField p0 = initialize(smooth_labels(labels, 1.0), dict, g, {}, mode);
    EXPECT_LT((p0.matrix().array() - 1.0 / 16.0).abs().maxCoeff(), 1e-15);
  }
}

TEST(Initialize, SingleTemplate) {
  const PatchDictionary dict({PatchTemplate(3, {0, 1, 0, 1, 1, 1, 0, 1, 0})}, 2);
  const LabelField labels(3, 3, {0, 1, 0, 0, 0, 1, 1, 1, 1}, 2);
  const AssignmentField p0 = initialize(smooth_labels(labels, 0.5), dict, make_grid(3, 3));
  EXPECT_EQ(p0.matrix(), Matrix::Ones(9, 1));
}

TEST(Initialize, InteriorWindowPicksMatchingTemplate) {
  testing::Rng rng(63);
  const PatchDictionary dict = testing::random_dictionary(rng, 3, 6, 2);
  const GridGraph g = make_grid(5, 5);
  for (Index target = 0; target < dict.size(); ++target) {
    std::vector<ClassId> cells(25);
    for (ClassId& c : cells) c = static_cast<ClassId>(rng.index(0, 1));
    for (Index r = 0; r < 3; ++r) {
      for (Index c = 0; c < 3; ++c) cells[static_cast<std::size_t>((r + 1) * 5 + c + 1)] = dict[target].at(r, c);
    }
    const AssignmentField p0 = initialize(smooth_labels(LabelField(5, 5, cells, 2), 0.1), dict, g);
    const Eigen::RowVectorXd row = p0.matrix().row(12);
    // Scores are agreement counts; the matching template attains 9.
    EXPECT_NEAR(row.maxCoeff(), row[target], 1e-15) << "template " << target;
  }
}

TEST(Initialize, ClippedAndReplicatedAgreeInTheInterior) {
  testing::Rng rng(64);
  const PatchDictionary dict = testing::random_dictionary(rng, 3, 5, 2);
  const LabelField labels = testing::random_labels(rng, 6, 7, 2);
  const GridGraph g = make_grid(6, 7);
  const AssignmentField w = smooth_labels(labels, 0.3);
  const Matrix clip = initialize(w, dict, g, {}, BoundaryMode::kClip).matrix();
  const Matrix rep = initialize(w, dict, g, {}, BoundaryMode::kReplicate).matrix();
  for (Index r = 1; r < 5; ++r) {
    for (Index c = 1; c < 6; ++c) EXPECT_EQ(clip.row(g.vertex(r, c)), rep.row(g.vertex(r, c)));
  }
}

TEST(Initialize, ReplicateBreaksBoundaryTies) {
  // Background and a top-row line differ only outside the grid at row 0.
  const PatchDictionary dict = line_dictionary();
  const LabelField labels(4, 4, std::vector<ClassId>(16, 0), 2);
  const GridGraph g = make_grid(4, 4);
  const AssignmentField w = smooth_labels(labels, 0.5);
  const Matrix clip = initialize(w, dict, g, {}, BoundaryMode::kClip).matrix();
  const Matrix rep = initialize(w, dict, g, {}, BoundaryMode::kReplicate).matrix();
  EXPECT_EQ(clip(1, 0), clip(1, 1));
  EXPECT_GT(rep(1, 0), rep(1, 1));
}

TEST(Initialize, SoftmaxShiftInvariance) {
  // Adding one cell class to every template adds the same score to each.
  const PatchDictionary a({PatchTemplate(1, {0}), PatchTemplate(1, {1})}, 2);
  const LabelField labels(2, 2, {0, 1, 1, 1}, 2);
  const GridGraph g = make_grid(2, 2);
  const Matrix p = initialize(smooth_labels(labels, 0.2), a, g).matrix();
  for (Index i = 0; i < 4; ++i) {
    const double s0 = labels.at(i) == 0 ? 0.9 : 0.1;
    const double e0 = std::exp(s0 + 5.0);
    const double e1 = std::exp(1.0 - s0 + 5.0);
    EXPECT_NEAR(p(i, 0), e0 / (e0 + e1), 1e-15);
  }
}

TEST(Initialize, RejectsShapeMismatch) {
  const PatchDictionary dict = line_dictionary();
  EXPECT_THROW(initialize(AssignmentField::uniform(4, 2), dict, make_grid(3, 3)), std::invalid_argument);
  EXPECT_THROW(initialize(AssignmentField::uniform(9, 3), dict, make_grid(3, 3)), std::invalid_argument);
}

TEST(ExtractLabeling, OneHotAndTies) {
  const PatchDictionary dict = line_dictionary();
  const GridGraph g = make_grid(1, 3);
  Matrix p = Matrix::Zero(3, 16);
  p(0, 2) = 1.0;   // horizontal line through the center
  p(1, 1) = 1.0;   // line on the top row, background center
  p.row(2).setConstant(1.0 / 16.0);
  const LabelField labels = extract_labeling(AssignmentField(p), dict, g);
  EXPECT_EQ(labels.at(0), 1u);
  EXPECT_EQ(labels.at(1), 0u);
  EXPECT_EQ(labels.at(2), dict[0].center());
}

TEST(ExtractLabeling, RoundTripAtZeroSmoothing) {
  testing::Rng rng(65);
  for (int trial = 0; trial < 30; ++trial) {
    const Index classes = rng.index(1, 5);
    const LabelField labels = testing::random_labels(rng, rng.index(1, 9), rng.index(1, 9), classes);
    const PatchDictionary dict = constant_dictionary(classes, 1);
    const GridGraph g = make_grid(labels.height(), labels.width());
    EXPECT_EQ(extract_labeling(initialize(smooth_labels(labels, 0.0), dict, g), dict, g), labels);
  }
}

TEST(SampleLabeling, DeterministicAndSupported) {
  const PatchDictionary dict = constant_dictionary(2, 3);
  const GridGraph g = make_grid(6, 6);
  Matrix p(36, 2);
  for (Index i = 0; i < 36; ++i) p.row(i) = i % 2 ? Eigen::RowVector2d(0.0, 1.0) : Eigen::RowVector2d(0.5, 0.5);
  const LabelField a = sample_labeling(AssignmentField(p), dict, g, 5);
  EXPECT_EQ(a, sample_labeling(AssignmentField(p), dict, g, 5));
  int zeros = 0;
  for (Index i = 0; i < 36; ++i) {
    if (i % 2) EXPECT_EQ(a.at(i), 1u);
    else zeros += a.at(i) == 0;
  }
  EXPECT_GT(zeros, 0);
}

TEST(MeanPatchAssignment, LiteralNormalization) {
  const PatchDictionary dict({PatchTemplate(3, std::vector<ClassId>(9, 1))}, 2);
  const GridGraph g = make_grid(7, 7);
  const UncertaintyField u = mean_patch_assignment(AssignmentField::uniform(49, 1), dict, g);
  EXPECT_DOUBLE_EQ(u.raw(g.vertex(3, 3), 0), 9.0);
  EXPECT_DOUBLE_EQ(u.raw(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(u.normalized(g.vertex(3, 3), 0), 1.0);
  EXPECT_DOUBLE_EQ(u.normalized(0, 0), 1.0);
}

TEST(MeanPatchAssignment, ZeroTemplatesGiveZero) {
  testing::Rng rng(66);
  const PatchDictionary dict = constant_dictionary(1, 3);
  const PatchDictionary zeros({dict[0], dict[0]}, 2);
  const UncertaintyField u =
      mean_patch_assignment(AssignmentField(testing::random_interior(rng, 20, 2)), zeros, make_grid(4, 5));
  EXPECT_EQ(u.raw, Matrix::Zero(20, 1));
}

TEST(MeanPatchAssignment, SymmetricPairSitsAtMidpoint) {
  const PatchTemplate pattern(3, {0, 1, 0, 1, 1, 0, 0, 0, 1});
  std::vector<ClassId> flipped(pattern.cells().begin(), pattern.cells().end());
  for (ClassId& c : flipped) c = 1 - c;
  const PatchDictionary dict({pattern, PatchTemplate(3, flipped)}, 2);
  const GridGraph g = make_grid(6, 6);
  const UncertaintyField u = mean_patch_assignment(AssignmentField::uniform(36, 2), dict, g);
  EXPECT_LT((u.raw - mean_assignment_oracle(AssignmentField::uniform(36, 2).matrix(), dict, g)).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_LT((u.normalized.array() - 0.5).abs().maxCoeff(), 1e-15);
}

TEST(MeanPatchAssignment, PropertyOracleAndLinearity) {
  testing::Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const PatchDictionary dict = testing::random_dictionary(rng, 2 * rng.index(0, 2) + 1, rng.index(1, 5), 2);
    const GridGraph g = testing::random_grid(rng, 7, 7);
    const Matrix a = testing::random_interior(rng, g.vertex_count(), dict.size());
    const Matrix b = testing::random_interior(rng, g.vertex_count(), dict.size());
    const Matrix ua = mean_patch_assignment(AssignmentField(a), dict, g).raw;
    const Matrix ub = mean_patch_assignment(AssignmentField(b), dict, g).raw;
    EXPECT_LT((ua - mean_assignment_oracle(a, dict, g)).cwiseAbs().maxCoeff(), 1e-12);
    const double t = rng.real(0.0, 1.0);
    const Matrix mix = mean_patch_assignment(AssignmentField(t * a + (1 - t) * b), dict, g).raw;
    EXPECT_LT((mix - (t * ua + (1 - t) * ub)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MeanPatchAssignment, BinaryOnly) {
  const PatchDictionary dict = constant_dictionary(3, 1);
  EXPECT_THROW(mean_patch_assignment(AssignmentField::uniform(4, 3), dict, make_grid(2, 2)), std::invalid_argument);
  const UncertaintyField u = mean_class_assignment(AssignmentField::uniform(4, 3), dict, make_grid(2, 2));
  EXPECT_EQ(u.raw.cols(), 3);
  EXPECT_LT((u.normalized.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-15);
}

}  // namespace
}  // namespace paf
