// Copyright 2026 The homcorr Authors
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

#include "homcorr/jones.h"

#include "gtest/gtest.h"

#include "random_fields.test.h"

using namespace homcorr;

namespace {

void expect_near(Complex actual, Complex expected, double tol = 1e-15) {
    EXPECT_NEAR(actual.real(), expected.real(), tol);
    EXPECT_NEAR(actual.imag(), expected.imag(), tol);
}

}  // namespace

TEST(jones, inner_products_of_standard_states) {
    auto H = standard_state(StandardState::H);
    auto V = standard_state(StandardState::V);
    auto D = standard_state(StandardState::D);
    auto L = standard_state(StandardState::L);
    auto R = standard_state(StandardState::R);
    expect_near(inner(H, H), 1.0);
    expect_near(inner(H, V), 0.0);
    expect_near(inner(D, L), Complex(0.5, 0.5));
    expect_near(inner(L, D), Complex(0.5, -0.5));
    expect_near(inner(L, R), 0.0);
}

TEST(jones, standard_state_components) {
    const double r = 1 / std::sqrt(2.0);
    EXPECT_EQ(standard_state(StandardState::H), (JonesVector{1.0, 0.0}));
    auto A = standard_state(StandardState::A);
    expect_near(A.h, r);
    expect_near(A.v, -r);
    auto L = standard_state(StandardState::L);
    expect_near(L.v, Complex(0, r));
    for (auto s : {StandardState::H, StandardState::V, StandardState::D, StandardState::A, StandardState::L,
                   StandardState::R}) {
        EXPECT_TRUE(standard_state(s).is_unit()) << standard_state_name(s);
        EXPECT_EQ(parse_standard_state(standard_state_name(s)), s);
    }
    EXPECT_FALSE(parse_standard_state("X").has_value());
    EXPECT_FALSE(parse_standard_state("HV").has_value());
    EXPECT_FALSE(parse_standard_state("").has_value());
}

TEST(jones, named_bases_are_orthonormal) {
    EXPECT_TRUE(hv_basis().is_orthonormal());
    EXPECT_TRUE(lr_basis().is_orthonormal());
    EXPECT_TRUE(da_basis().is_orthonormal());
    EXPECT_THROW(PolarizationBasis::make(standard_state(StandardState::H), standard_state(StandardState::D)),
                 std::invalid_argument);
    EXPECT_THROW(PolarizationBasis::make({2.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
}

TEST(jones, normalized_rejects_zero_and_non_finite) {
    EXPECT_THROW((JonesVector{0.0, 0.0}.normalized()), std::invalid_argument);
    EXPECT_THROW((JonesVector{std::nan(""), 0.0}.normalized()), std::invalid_argument);
    EXPECT_FALSE((JonesVector{INFINITY, 0.0}.is_finite()));
    auto v = JonesVector{3.0, Complex(0, 4.0)}.normalized();
    EXPECT_NEAR(v.norm2(), 1.0, 1e-15);
}

TEST(jones, sesquilinear_and_conjugate_symmetric) {
    auto rng = fixtures::test_rng(1);
    for (int trial = 0; trial < 1000; trial++) {
        JonesVector a{fixtures::random_complex(rng), fixtures::random_complex(rng)};
        JonesVector b{fixtures::random_complex(rng), fixtures::random_complex(rng)};
        JonesVector c{fixtures::random_complex(rng), fixtures::random_complex(rng)};
        Complex alpha = fixtures::random_complex(rng);
        Complex beta = fixtures::random_complex(rng);
        Complex lhs = inner(a, alpha * b + beta * c);
        Complex rhs = alpha * inner(a, b) + beta * inner(a, c);
        ASSERT_LE(std::abs(lhs - rhs), 1e-12 * (1 + std::abs(rhs)));
        ASSERT_LE(std::abs(inner(a, b) - std::conj(inner(b, a))), 1e-12);
    }
}

TEST(jones, basis_completeness) {
    auto rng = fixtures::test_rng(2);
    for (int trial = 0; trial < 1000; trial++) {
        JonesVector x = fixtures::random_unit_jones(rng);
        JonesVector u1 = fixtures::random_unit_jones(rng);
        // Orthogonal complement of u1.
        JonesVector u2{-std::conj(u1.v), std::conj(u1.h)};
        auto basis = PolarizationBasis::make(u1, u2);
        for (const auto &b : {basis, hv_basis(), lr_basis(), da_basis()}) {
            double total = std::norm(inner(b.u1, x)) + std::norm(inner(b.u2, x));
            ASSERT_NEAR(total, 1.0, 1e-12);
        }
    }
}

TEST(jones, matrix_products) {
    JonesMatrix swap;
    swap.m[0][1] = 1.0;
    swap.m[1][0] = 1.0;
    JonesVector x{1.0, Complex(0, 2)};
    EXPECT_EQ(swap * x, (JonesVector{Complex(0, 2), 1.0}));
    JonesMatrix twice = swap * swap;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            EXPECT_EQ(twice.m[i][j], JonesMatrix::identity().m[i][j]);
        }
    }
}
