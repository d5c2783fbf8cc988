#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "specbal/linalg.hpp"

using namespace specbal;

namespace {

SymmetricMatrix diag_matrix(const std::vector<double>& d) {
    const int n = static_cast<int>(d.size());
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = d[i];
    return SymmetricMatrix(n, std::move(a));
}

double reconstruction_residual(const SymmetricMatrix& a, const EigenDecomposition& eig) {
    const int n = a.dim();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k) {
                v += eig.eigenvectors(i, k) * eig.eigenvalues[k] * eig.eigenvectors(j, k);
            }
            const double diff = v - a(i, j);
            acc += diff * diff;
        }
    }
    return std::sqrt(acc);
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("spectral norm on identity and diagonal") {
    CHECK(spectral_norm(diag_matrix({1, 1, 1})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_norm(diag_matrix({2, -7, 3})) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("spectral norm matches power iteration on a seeded random 8x8") {
    const SymmetricMatrix a = oracles::random_symmetric(8, 31415);
    const double lib = spectral_norm(a);
    const double ref = oracles::power_iteration_norm(a, 10000);
    CHECK(std::fabs(lib - ref) <= 1e-6 * std::max(1.0, ref));
}

TEST_CASE("frobenius norm basics") {
    CHECK(frobenius_norm(diag_matrix({1, 1, 1, 1})) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(frobenius_norm(SymmetricMatrix(5)) == 0.0);
    // (1/2)(e1+e2)(e1+e2)^T in d=3: four entries of 1/2
    std::vector<double> a(9, 0.0);
    a[0] = a[1] = a[3] = a[4] = 0.5;
    CHECK(frobenius_norm(SymmetricMatrix(3, a)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("constructor symmetrizes and rejects bad input") {
    SymmetricMatrix m(2, {1.0, 3.0, 5.0, 2.0});
    CHECK(m(0, 1) == 4.0);
    CHECK(m(1, 0) == 4.0);
    CHECK_THROWS_AS(SymmetricMatrix(2, {1.0, 2.0, 3.0}), InvalidInputError);
    CHECK_THROWS_AS(SymmetricMatrix(2, {1.0, std::nan(""), 0.0, 1.0}), InvalidInputError);
    CHECK_THROWS_AS(SymmetricMatrix(0), InvalidInputError);
}

TEST_CASE("eigendecomposition on fixed matrices") {
    const EigenDecomposition e1 = symmetric_eigen(diag_matrix({1, 2, 3}));
    CHECK(e1.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e1.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e1.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));

    const SymmetricMatrix pauli_x(2, {0.0, 1.0, 1.0, 0.0});
    const EigenDecomposition e2 = symmetric_eigen(pauli_x);
    CHECK(e2.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e2.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("eigendecomposition invariants on seeded random matrices") {
    for (std::uint32_t seed : {7u, 8u, 9u, 123u}) {
        for (int d : {2, 3, 6, 17, 40}) {
            const SymmetricMatrix a = oracles::random_symmetric(d, seed * 100 + d);
            const EigenDecomposition eig = symmetric_eigen(a);
            CHECK(reconstruction_residual(a, eig) <= 1e-8 * std::max(1.0, frobenius_norm(a)));

            // Q^T Q = I
            double ortho = 0.0;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    double v = 0.0;
                    for (int k = 0; k < d; ++k) {
                        v += eig.eigenvectors(k, i) * eig.eigenvectors(k, j);
                    }
                    const double diff = v - (i == j ? 1.0 : 0.0);
                    ortho += diff * diff;
                }
            }
            CHECK(std::sqrt(ortho) <= 1e-8 * d);

            for (int k = 1; k < d; ++k) CHECK(eig.eigenvalues[k - 1] >= eig.eigenvalues[k]);
        }
    }
}

TEST_CASE("eigendecomposition is deterministic") {
    const SymmetricMatrix a = oracles::random_symmetric(12, 555);
    const EigenDecomposition e1 = symmetric_eigen(a);
    const EigenDecomposition e2 = symmetric_eigen(a);
    CHECK(e1.eigenvalues == e2.eigenvalues);
    CHECK(e1.eigenvectors.a == e2.eigenvectors.a);
    // first nonzero component of each eigenvector is positive
    for (int j = 0; j < 12; ++j) {
        for (int i = 0; i < 12; ++i) {
            const double v = e1.eigenvectors(i, j);
            if (v != 0.0) {
                CHECK(v > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("clip_eigenvalues clamps and fixes points") {
    const SymmetricMatrix clipped = clip_eigenvalues(diag_matrix({5, -1}), 2.0);
    CHECK(clipped(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(clipped(1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::fabs(clipped(0, 1)) <= 1e-12);

    const SymmetricMatrix inside = oracles::random_symmetric(4, 77, 0.1);
    const SymmetricMatrix same = clip_eigenvalues(inside, spectral_norm(inside) + 1.0);
    for (std::size_t k = 0; k < inside.entries().size(); ++k) {
        CHECK(std::fabs(same.entries()[k] - inside.entries()[k]) <= 1e-10);
    }
    CHECK_THROWS_AS(clip_eigenvalues(inside, 0.0), InvalidInputError);
}

TEST_CASE("clip_eigenvalues is the Frobenius-nearest feasible point") {
    const SymmetricMatrix a = oracles::random_symmetric(5, 4242);
    const double t = 1.0;
    const SymmetricMatrix c = clip_eigenvalues(a, t);
    CHECK(spectral_norm(c) <= t + 1e-8);
    const SymmetricMatrix diff_c = add_scaled(a, c, -1.0);
    const double dist_c = frobenius_norm(diff_c);

    // no sampled feasible point does better
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> e(25);
        for (auto& x : e) x = dist(gen);
        SymmetricMatrix b(5, std::move(e));
        const double nrm = spectral_norm(b);
        if (nrm > t) b = scaled(b, t / nrm);
        CHECK(dist_c <= frobenius_norm(add_scaled(a, b, -1.0)) + 1e-9);
    }
}

TEST_CASE("clip_eigenvalues is idempotent") {
    for (std::uint32_t seed : {1u, 2u, 3u}) {
        const SymmetricMatrix a = oracles::random_symmetric(6, seed);
        const SymmetricMatrix once = clip_eigenvalues(a, 0.8);
        const SymmetricMatrix twice = clip_eigenvalues(once, 0.8);
        for (std::size_t k = 0; k < once.entries().size(); ++k) {
            CHECK(std::fabs(once.entries()[k] - twice.entries()[k]) <= 1e-10);
        }
    }
}

TEST_CASE("norm chain inequality") {
    for (std::uint32_t seed : {5u, 6u, 7u, 8u}) {
        const int d = 9;
        const SymmetricMatrix a = oracles::random_symmetric(d, seed);
        const double op = spectral_norm(a);
        const double fro = frobenius_norm(a);
        CHECK(op <= fro * (1 + 1e-12));
        CHECK(fro <= std::sqrt(static_cast<double>(d)) * op * (1 + 1e-12));
    }
}

TEST_CASE("orthonormal complement basis") {
    SUBCASE("empty constraints give the full space") {
        const SubspaceBasis b = orthonormal_complement_basis({}, 3);
        CHECK(b.dim() == 3);
        CHECK(b.constraint_count == 0);
    }
    SUBCASE("single coordinate constraint") {
        const std::vector<Vec> cons{{1.0, 0.0, 0.0}};
        const SubspaceBasis b = orthonormal_complement_basis(cons, 3);
        CHECK(b.dim() == 2);
        for (int j = 0; j < 2; ++j) CHECK(std::fabs(b.basis(0, j)) <= 1e-8);
    }
    SUBCASE("dependent constraints collapse by rank") {
        const std::vector<Vec> cons{{1.0, 1.0, 0.0}, {2.0, 2.0, 0.0}};
        const SubspaceBasis b = orthonormal_complement_basis(cons, 3);
        CHECK(b.dim() == 2);
        CHECK(b.constraint_count == 1);
    }
    SUBCASE("orthonormality and constraint orthogonality") {
        std::mt19937 gen(33);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<Vec> cons;
        for (int c = 0; c < 3; ++c) {
            Vec v(7);
            for (auto& x : v) x = dist(gen);
            cons.push_back(std::move(v));
        }
        const SubspaceBasis b = orthonormal_complement_basis(cons, 7);
        CHECK(b.dim() == 4);
        for (int i = 0; i < b.dim(); ++i) {
            for (int j = 0; j < b.dim(); ++j) {
                double v = 0.0;
                for (int k = 0; k < 7; ++k) v += b.basis(k, i) * b.basis(k, j);
                CHECK(std::fabs(v - (i == j ? 1.0 : 0.0)) <= 1e-8);
            }
            for (const Vec& c : cons) {
                double v = 0.0;
                for (int k = 0; k < 7; ++k) v += b.basis(k, i) * c[k];
                CHECK(std::fabs(v) <= 1e-8);
            }
        }
    }
}

}  // TEST_SUITE
