// Copyright 2026 The hidecap developers.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "hidecap/qlin.hpp"
#include "oracles.hpp"

using namespace hidecap;
using qlin::Complex;
using qlin::DensityMatrix;
using qlin::HermitianOperator;
using qlin::Matrix;
using qlin::UnitaryMatrix;
using qlin::Vector;

TEST_CASE("haar_unitary basic contracts") {
    Rng rng(42);

    SUBCASE("dim 1 is a phase") {
        const UnitaryMatrix u = qlin::haar_unitary(1, rng);
        CHECK(std::abs(std::abs(u.data()(0, 0)) - 1.0) < 1e-12);
    }

    SUBCASE("same seed, same matrix") {
        Rng a(123), b(123);
        const UnitaryMatrix ua = qlin::haar_unitary(2, a);
        const UnitaryMatrix ub = qlin::haar_unitary(2, b);
        CHECK(qlin::max_abs(ua.data() - ub.data()) == 0.0);
    }

    SUBCASE("invalid dimension") {
        CHECK_THROWS_AS(qlin::haar_unitary(0, rng), ValidationError);
    }

    SUBCASE("unitarity over random draws") {
        for (int dim : {2, 3, 5}) {
            for (int i = 0; i < 20; ++i) {
                const UnitaryMatrix u = qlin::haar_unitary(dim, rng);
                const Matrix defect =
                    u.data().adjoint() * u.data() - Matrix::Identity(dim, dim);
                CHECK(qlin::max_abs(defect) < 1e-12);
            }
        }
    }
}

TEST_CASE("haar first moment: mean of U|0><0|U^dag is I/2") {
    Rng rng(7);
    oracles::MatrixMomentAccumulator acc(2, 2);
    Vector e0 = Vector::Zero(2);
    e0[0] = 1.0;
    for (int i = 0; i < 100000; ++i) {
        const Matrix u = qlin::haar_unitary(2, rng).data();
        const Vector v = u * e0;
        acc.add(qlin::rank_one_projector(v));
    }
    CHECK(acc.max_sigma_deviation(Matrix::Identity(2, 2) / 2.0) < 3.0);
}

TEST_CASE("haar second moment matches 2 P_sym / (d(d+1))") {
    Rng rng(19);
    const int d = 2;
    oracles::MatrixMomentAccumulator acc(d * d, d * d);
    for (int i = 0; i < 100000; ++i) {
        const Vector v = qlin::random_unit_vector(d, rng);
        const Matrix p = qlin::rank_one_projector(v);
        acc.add(qlin::tensor(p, p));
    }
    const Matrix target =
        2.0 / (d * (d + 1.0)) * qlin::symmetric_projector(d).data();
    CHECK(acc.max_sigma_deviation(target) < 4.0);
}

TEST_CASE("von_neumann_entropy") {
    Vector e0 = Vector::Zero(2);
    e0[0] = 1.0;
    CHECK(qlin::von_neumann_entropy(DensityMatrix::pure(e0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(qlin::von_neumann_entropy(DensityMatrix::maximally_mixed(4)) ==
          doctest::Approx(2.0).epsilon(1e-12));

    Eigen::VectorXd p(2);
    p << 0.75, 0.25;
    CHECK(qlin::von_neumann_entropy(DensityMatrix::diagonal(p)) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("von_neumann_entropy rejects non-states that slip past validation") {
    // Positivity is only validated at construction up to dim 256; build a
    // large diagonal matrix with one eigenvalue below the entropy floor.
    const int dim = 300;
    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / (dim - 1);
    m(0, 0) = -1e-7;
    m(1, 1) = 1.0 / (dim - 1) + 1e-7;
    const DensityMatrix rho(m); // passes: Hermitian and unit trace
    CHECK_THROWS_AS(qlin::von_neumann_entropy(rho), ValidationError);
}

TEST_CASE("trace_distance") {
    Rng rng(5);
    Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
    e0[0] = 1.0;
    e1[1] = 1.0;
    const DensityMatrix rho0 = DensityMatrix::pure(e0);
    const DensityMatrix rho1 = DensityMatrix::pure(e1);

    CHECK(qlin::trace_distance(rho0, rho0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(qlin::trace_distance(rho0, rho1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(qlin::trace_distance(rho0, DensityMatrix::maximally_mixed(2)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(
        qlin::trace_distance(rho0, DensityMatrix::maximally_mixed(3)),
        ValidationError);

    SUBCASE("symmetry and triangle inequality on random triples") {
        for (int i = 0; i < 50; ++i) {
            const DensityMatrix a =
                DensityMatrix::pure(qlin::random_unit_vector(3, rng));
            const DensityMatrix b =
                DensityMatrix::pure(qlin::random_unit_vector(3, rng));
            Matrix mix = 0.5 * a.data() + 0.5 * DensityMatrix::maximally_mixed(3).data();
            const DensityMatrix c(mix);
            const double ab = qlin::trace_distance(a, b);
            CHECK(qlin::trace_distance(b, a) == doctest::Approx(ab).epsilon(1e-12));
            CHECK(ab <= qlin::trace_distance(a, c) + qlin::trace_distance(c, b) + 1e-9);
        }
    }
}

TEST_CASE("symmetric_projector") {
    for (int d = 1; d <= 8; ++d) {
        const HermitianOperator p = qlin::symmetric_projector(d);
        // sums of exact 1.0 and 0.5 entries: equality holds bit-for-bit
        CHECK(p.data().trace().real() == d * (d + 1) / 2.0);
        CHECK(qlin::max_abs(p.data() * p.data() - p.data()) < 1e-12);
    }

    SUBCASE("partial trace of the normalized projector is maximally mixed") {
        const int d = 2;
        const Matrix p = qlin::symmetric_projector(d).data();
        const double tr = d * (d + 1) / 2.0;
        const Matrix first = qlin::partial_trace_first(p / tr, d, d);
        const Matrix second = qlin::partial_trace_second(p / tr, d, d);
        CHECK(qlin::max_abs(first - Matrix::Identity(d, d) / d) < 1e-12);
        CHECK(qlin::max_abs(second - Matrix::Identity(d, d) / d) < 1e-12);
    }
}

TEST_CASE("operator_inf_norm") {
    CHECK(qlin::operator_inf_norm(HermitianOperator(Matrix::Identity(3, 3))) ==
          doctest::Approx(1.0).epsilon(1e-14));

    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 3.0;
    diag(1, 1) = -5.0;
    CHECK(qlin::operator_inf_norm(HermitianOperator(diag)) ==
          doctest::Approx(5.0).epsilon(1e-14));

    for (int d : {2, 3, 4})
        CHECK(qlin::operator_inf_norm(qlin::symmetric_projector(d)) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state and entropy invariance under conjugation") {
    Rng rng(11);
    for (int i = 0; i < 25; ++i) {
        Matrix mix = Matrix::Zero(3, 3);
        for (int k = 0; k < 3; ++k)
            mix += qlin::rank_one_projector(qlin::random_unit_vector(3, rng)) / 3.0;
        const DensityMatrix rho(mix);
        const Matrix u = qlin::haar_unitary(3, rng).data();
        const DensityMatrix rotated(u * rho.data() * u.adjoint()); // must validate
        CHECK(qlin::von_neumann_entropy(rotated) ==
              doctest::Approx(qlin::von_neumann_entropy(rho)).epsilon(1e-9));
    }
}

TEST_CASE("type validation") {
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = 0.5; // not Hermitian
    CHECK_THROWS_AS(DensityMatrix{bad}, ValidationError);

    Matrix off_trace = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{off_trace}, ValidationError);

    Matrix not_unitary = Matrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(UnitaryMatrix{not_unitary}, ValidationError);

    CHECK_THROWS_AS(qlin::Pmf({0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS(qlin::Pmf({-0.1, 1.1}), ValidationError);
    CHECK_NOTHROW(qlin::Pmf({0.5, 0.5 + 1e-13}));
}

TEST_CASE("tensor plumbing") {
    Rng rng(3);
    const Matrix a = qlin::haar_unitary(2, rng).data();
    const Matrix b = qlin::haar_unitary(3, rng).data();

    SUBCASE("partial traces undo tensor products") {
        Matrix rho_a = qlin::rank_one_projector(qlin::random_unit_vector(2, rng));
        Matrix rho_b = qlin::rank_one_projector(qlin::random_unit_vector(3, rng));
        const Matrix joint = qlin::tensor(rho_a, rho_b);
        CHECK(qlin::max_abs(qlin::partial_trace_second(joint, 2, 3) - rho_a) < 1e-12);
        CHECK(qlin::max_abs(qlin::partial_trace_first(joint, 2, 3) - rho_b) < 1e-12);
    }

    SUBCASE("tensor_power") {
        const Matrix a2 = qlin::tensor_power(a, 2);
        CHECK(qlin::max_abs(a2 - qlin::tensor(a, a)) == 0.0);
    }

    SUBCASE("permute_factors swaps a two-factor product") {
        const Matrix ab = qlin::tensor(a, b);
        const Matrix ba = qlin::permute_factors(ab, {2, 3}, {1, 0});
        CHECK(qlin::max_abs(ba - qlin::tensor(b, a)) < 1e-13);
    }

    SUBCASE("permute_factors identity on three factors") {
        const Matrix c = qlin::haar_unitary(2, rng).data();
        const Matrix abc = qlin::tensor(qlin::tensor(a, b), c);
        CHECK(qlin::max_abs(qlin::permute_factors(abc, {2, 3, 2}, {0, 1, 2}) - abc) ==
              0.0);
        // cycling twice with a 3-cycle and once more restores the input
        const Matrix cyc = qlin::permute_factors(abc, {2, 3, 2}, {1, 2, 0});
        const Matrix cyc2 = qlin::permute_factors(cyc, {3, 2, 2}, {1, 2, 0});
        const Matrix cyc3 = qlin::permute_factors(cyc2, {2, 2, 3}, {1, 2, 0});
        CHECK(qlin::max_abs(cyc3 - abc) < 1e-13);
    }
}
