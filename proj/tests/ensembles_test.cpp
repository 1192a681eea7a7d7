// Copyright 2026 The gibbstree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gibbstree/ensembles.hpp"

#include <gtest/gtest.h>

#include "gibbstree/treegen.hpp"

namespace gibbstree {
namespace {

TEST(ValidateSpecTest, AcceptsMinimalLabeledSpec) {
  const auto spec = MakeSpec(Kind::kLabeled, 2, 1.0, {0, 0});
  EXPECT_EQ(ValidateSpec(spec), spec);
}

TEST(ValidateSpecTest, AcceptsPlaneSpec) {
  const auto spec = MakeSpec(Kind::kPlane, 2, 0.5, {0, 1, 2});
  EXPECT_EQ(ValidateSpec(spec), spec);
}

TEST(ValidateSpecTest, RejectsLabeledBoundOne) {
  try {
    ValidateSpec(MakeSpec(Kind::kLabeled, 1, 1.0, {0}));
    FAIL() << "expected BoundTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBoundTooSmall);
  }
}

TEST(ValidateSpecTest, RejectsPlaneBoundZero) {
  try {
    ValidateSpec(MakeSpec(Kind::kPlane, 0, 1.0, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBoundTooSmall);
  }
}

TEST(ValidateSpecTest, RejectsBadEnergyTables) {
  for (const auto& spec :
       {MakeSpec(Kind::kLabeled, 3, 1.0, {0, 0}),
        MakeSpec(Kind::kPlane, 2, 1.0, {0, 0}),
        MakeSpec(Kind::kLabeled, 2, 1.0, {0, NAN}),
        MakeSpec(Kind::kPlane, 1, 1.0, {INFINITY, 0})}) {
    try {
      ValidateSpec(spec);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadEnergyTable);
    }
  }
}

TEST(ValidateSpecTest, AcceptsNegativeBeta) {
  EXPECT_NO_THROW(ValidateSpec(MakeSpec(Kind::kPlane, 2, -3.0, {1, 0, 2})));
}

TEST(IsFeasibleTest, Examples) {
  const auto lab = UniformSpec(Kind::kLabeled, 2);
  EXPECT_TRUE(IsFeasible(CountVector(Kind::kLabeled, {2, 2}), lab));
  EXPECT_FALSE(IsFeasible(CountVector(Kind::kLabeled, {4, 0}), lab));
  const auto plane = UniformSpec(Kind::kPlane, 2);
  EXPECT_TRUE(IsFeasible(CountVector(Kind::kPlane, {2, 1, 1}), plane));
  EXPECT_FALSE(IsFeasible(CountVector(Kind::kPlane, {1, 2, 1}), plane));
}

TEST(IsFeasibleTest, RejectsWrongShapeOrNegative) {
  const auto lab = UniformSpec(Kind::kLabeled, 3);
  EXPECT_FALSE(IsFeasible(CountVector(Kind::kLabeled, {2, 2}), lab));
  EXPECT_FALSE(IsFeasible(CountVector(Kind::kPlane, {2, 2, 0}), lab));
  EXPECT_FALSE(IsFeasible(CountVector(Kind::kLabeled, {5, -1, 0}), lab));
}

TEST(CountVectorTest, ClassIndexingFollowsKind) {
  CountVector lab(Kind::kLabeled, {3, 0, 1});
  EXPECT_EQ(lab.at(1), 3);
  EXPECT_EQ(lab.at(3), 1);
  EXPECT_EQ(lab.class_sum(), 6);
  CountVector plane(Kind::kPlane, {3, 0, 0, 1});
  EXPECT_EQ(plane.at(0), 3);
  EXPECT_EQ(plane.at(3), 1);
  EXPECT_EQ(plane.class_sum(), 3);
}

TEST(FreqFromCountsTest, Examples) {
  EXPECT_EQ(FreqFromCounts(CountVector(Kind::kLabeled, {2, 2})).values()[0],
            0.5);
  const auto p = FreqFromCounts(CountVector(Kind::kLabeled, {2, 0, 2}));
  EXPECT_EQ(std::vector<double>(p.values().begin(), p.values().end()),
            (std::vector<double>{0.5, 0.0, 0.5}));
  const auto q = FreqFromCounts(CountVector(Kind::kPlane, {1, 3, 0}));
  EXPECT_EQ(std::vector<double>(q.values().begin(), q.values().end()),
            (std::vector<double>{0.25, 0.75, 0.0}));
}

TEST(FreqFromCountsTest, EmptyCountsAreRejected) {
  EXPECT_THROW(FreqFromCounts(CountVector(Kind::kPlane, {0, 0})), Error);
}

TEST(OnManifoldTest, ChecksBothConstraints) {
  EXPECT_TRUE(OnManifold(FrequencyVector(Kind::kLabeled, {0.5, 0.0, 0.5})));
  EXPECT_TRUE(OnManifold(FrequencyVector(Kind::kLabeled, {0.0, 1.0})));
  EXPECT_FALSE(OnManifold(FrequencyVector(Kind::kLabeled, {0.5, 0.5})));
  EXPECT_TRUE(OnManifold(FrequencyVector(Kind::kPlane, {0.5, 0.0, 0.5})));
  EXPECT_FALSE(OnManifold(FrequencyVector(Kind::kPlane, {0.6, 0.0, 0.4})));
  EXPECT_FALSE(
      OnManifold(FrequencyVector(Kind::kPlane, {0.5 + 1e-9, 0.0, 0.5})));
}

// Every enumerated tree has a feasible profile, and chi/N sits off the
// manifold by exactly the finite-N defect of the mean.
TEST(EnsemblePropertyTest, EnumeratedProfilesAreFeasible) {
  for (int n = 2; n <= 7; ++n) {
    const auto spec = UniformSpec(Kind::kLabeled, std::max(2, n - 1));
    ForEachLabeledTree(n, [&](const LabeledTree& t) {
      const auto chi = ChiOf(t, spec);
      ASSERT_TRUE(IsFeasible(chi, spec));
      const auto p = FreqFromCounts(chi);
      EXPECT_NEAR(p.sum(), 1.0, 1e-15);
      EXPECT_NEAR(p.mean(), 2.0 - 2.0 / n, 1e-12);
    });
  }
  for (int n = 1; n <= 9; ++n) {
    const auto spec = UniformSpec(Kind::kPlane, std::max(1, n - 1));
    ForEachPlaneTree(n, spec.bound, [&](const PlaneTree& t) {
      const auto chi = ChiOf(t, spec);
      ASSERT_TRUE(IsFeasible(chi, spec));
      const auto p = FreqFromCounts(chi);
      EXPECT_NEAR(p.sum(), 1.0, 1e-15);
      EXPECT_NEAR(p.mean(), 1.0 - 1.0 / n, 1e-12);
    });
  }
}

}  // namespace
}  // namespace gibbstree
