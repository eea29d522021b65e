// Copyright 2026 The fedpod-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fedpod/errors.hpp"
#include "fedpod/params.hpp"

namespace fedpod {
namespace {

ModelParams combine2(double w0, std::vector<double> a, double w1, std::vector<double> b) {
  const ModelParams ma(std::move(a));
  const ModelParams mb(std::move(b));
  const std::vector<WeightedModel> in = {{w0, &ma}, {w1, &mb}};
  return combine(in);
}

TEST(CombineTest, IdentityWeight) {
  const ModelParams m({1, 2, 3});
  const std::vector<WeightedModel> in = {{1.0, &m}};
  EXPECT_EQ(combine(in), m);
}

TEST(CombineTest, EqualWeightMean) {
  EXPECT_EQ(combine2(0.5, {1, 3}, 0.5, {3, 5}), ModelParams({2, 4}));
}

TEST(CombineTest, UnequalWeightsMatchScalarArithmetic) {
  const ModelParams out = combine2(0.25, {4, 0}, 0.75, {0, 4});
  // 0.25*4 + 0.75*0, 0.25*0 + 0.75*4
  EXPECT_NEAR(out[0], 1.0, 1e-15);
  EXPECT_NEAR(out[1], 3.0, 1e-15);
}

TEST(CombineTest, LinearInInputs) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(5), b(5), c(5);
    for (int i = 0; i < 5; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
      c[i] = g(rng);
    }
    const double w = std::uniform_real_distribution<double>(0, 1)(rng);
    const ModelParams left = combine2(w, a, 1 - w, b);
    std::vector<double> ac(5), bc(5);
    for (int i = 0; i < 5; ++i) {
      ac[i] = a[i] + c[i];
      bc[i] = b[i] + c[i];
    }
    const ModelParams shifted = combine2(w, ac, 1 - w, bc);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(shifted[i], left[i] + c[i], 1e-12);
  }
}

TEST(CombineTest, RejectsMismatchedDims) {
  EXPECT_THROW(combine2(0.5, {1, 2}, 0.5, {1, 2, 3}), StructuralError);
}

TEST(CombineTest, RejectsEmptyInput) {
  EXPECT_THROW(combine({}), ValidationError);
}

TEST(ModelParamsTest, RejectsNonFinite) {
  EXPECT_THROW(ModelParams({1.0, std::numeric_limits<double>::quiet_NaN()}), ValidationError);
  EXPECT_THROW(ModelParams({std::numeric_limits<double>::infinity()}), ValidationError);
  EXPECT_THROW(ModelParams(std::vector<double>{}), ValidationError);
}

TEST(ModelParamsTest, Zeros) {
  const auto z = ModelParams::zeros(4);
  EXPECT_EQ(z.dim(), 4u);
  for (double v : z.values()) EXPECT_EQ(v, 0.0);
}

}  // namespace
}  // namespace fedpod
