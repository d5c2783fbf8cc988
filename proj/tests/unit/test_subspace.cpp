#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "specbal/subspace.hpp"

using namespace specbal;

TEST_SUITE("subspace") {

TEST_CASE("no eigenvalue above the threshold keeps the full space") {
    const Instance inst = [&] {
        // A_i = e_i e_i^T: Gram is the identity
        std::vector<SymmetricMatrix> mats;
        for (int i = 0; i < 4; ++i) {
            std::vector<double> a(16, 0.0);
            a[static_cast<std::size_t>(i) * 4 + i] = 1.0;
            mats.emplace_back(4, std::move(a));
        }
        return make_instance(4, 4, std::move(mats), "projectors", std::nullopt);
    }();
    const GramMatrix g = gram_matrix(inst);
    const SubspaceBasis basis = bad_subspace(g, 2.0);
    CHECK(basis.constraint_count == 0);
    CHECK(basis.dim() == 4);
}

TEST_CASE("two equal matrices cut down to the difference direction") {
    const SymmetricMatrix a = oracles::random_symmetric(3, 5);
    std::vector<SymmetricMatrix> mats{a, a};
    const Instance inst = make_instance(2, 3, std::move(mats), "pair", std::nullopt);
    const double g = frobenius_norm(a) * frobenius_norm(a);
    const GramMatrix gram = gram_matrix(inst);
    const SubspaceBasis basis = bad_subspace(gram, g);  // top eigenvalue is 2g
    CHECK(basis.constraint_count == 1);
    REQUIRE(basis.dim() == 1);
    // H = span{(1,-1)/sqrt(2)} up to sign
    CHECK(std::fabs(std::fabs(basis.basis(0, 0)) - 1.0 / std::sqrt(2.0)) <= 1e-10);
    CHECK(basis.basis(0, 0) == doctest::Approx(-basis.basis(1, 0)).epsilon(1e-10));
}

TEST_CASE("restricted v equals v on the full space and 0 on the empty one") {
    const Instance inst = oracles::random_instance(6, 5, 21);
    const GramMatrix gram = gram_matrix(inst);

    SubspaceBasis full;
    full.ambient_dim = inst.n;
    full.basis = DenseMatrix::identity(inst.n);
    CHECK(restricted_v_param(gram, full) == doctest::Approx(v_param(gram)).epsilon(1e-10));

    SubspaceBasis empty;
    empty.ambient_dim = inst.n;
    empty.basis = DenseMatrix(inst.n, 0);
    CHECK(restricted_v_param(gram, empty) == 0.0);
}

TEST_CASE("restricted directions are orthogonal to the reconstructed bad matrices") {
    // V_j = lambda_j^{-1/2} sum_i (u_j)_i A_i; every y in H must satisfy
    // Tr(A(y) V_j) = 0.
    for (std::uint32_t seed : {3u, 14u}) {
        const Instance inst = oracles::random_instance(6, 4, seed);
        const auto ptrs = inst.matrix_ptrs();
        const GramMatrix gram = gram_matrix(inst);
        const ConcentrationParams params = concentration_params(inst);
        const double delta_sq = params.f * params.f / 0.375;
        const SubspaceBasis basis = bad_subspace(gram, delta_sq);
        if (basis.constraint_count == 0 || basis.dim() == 0) continue;

        Rng rng(seed);
        for (int trial = 0; trial < 4; ++trial) {
            const Vec h = rng.gaussian_vector(basis.dim());
            const Vec y = mat_vec(basis.basis, h);
            const SymmetricMatrix ay = weighted_sum(ptrs, y);
            for (int j = 0; j < basis.constraint_count; ++j) {
                const double lam = gram.eigen.eigenvalues[j];
                REQUIRE(lam > 0.0);
                std::span<const double> uj(gram.eigen.eigenvectors.col(j),
                                           static_cast<std::size_t>(inst.n));
                const SymmetricMatrix vj = scaled(weighted_sum(ptrs, uj), 1.0 / std::sqrt(lam));
                CHECK(std::fabs(trace_inner(ay, vj)) <= 1e-8 * std::max(1.0, params.v));
            }
        }
    }
}

TEST_CASE("contraction properties at the standard threshold") {
    for (std::uint32_t seed : {2u, 8u, 15u}) {
        const Instance inst = oracles::random_instance(10, 6, seed);
        const auto ptrs = inst.matrix_ptrs();
        const GramMatrix gram = gram_matrix(inst);
        const ConcentrationParams params = concentration_params(inst);
        const double delta = 0.375;
        const double delta_sq = params.f * params.f / delta;
        const SubspaceBasis basis = bad_subspace(gram, delta_sq);

        // v(Y) <= Delta
        const double vr = restricted_v_param(gram, basis);
        CHECK(vr <= std::sqrt(delta_sq) * (1 + 1e-8));

        // sigma(Y) <= sigma(X)
        const double sr = restricted_sigma_param(ptrs, basis);
        CHECK(sr <= params.sigma * (1 + 1e-8));

        // pigeonhole on the dimension
        const int max_cut = static_cast<int>(std::ceil(params.frobenius_budget / delta_sq));
        CHECK(basis.dim() >= inst.n - max_cut);

        // orthonormality of the returned basis
        for (int i = 0; i < basis.dim(); ++i) {
            for (int j = 0; j < basis.dim(); ++j) {
                double dot = 0.0;
                for (int k = 0; k < inst.n; ++k) dot += basis.basis(k, i) * basis.basis(k, j);
                CHECK(std::fabs(dot - (i == j ? 1.0 : 0.0)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("boundary eigenvalues count as not exceeding") {
    // Gram = I: eigenvalues exactly 1; threshold exactly 1 must keep everything
    std::vector<SymmetricMatrix> mats;
    for (int i = 0; i < 3; ++i) {
        std::vector<double> a(9, 0.0);
        a[static_cast<std::size_t>(i) * 3 + i] = 1.0;
        mats.emplace_back(3, std::move(a));
    }
    const Instance inst = make_instance(3, 3, std::move(mats), "projectors", std::nullopt);
    const SubspaceBasis basis = bad_subspace(gram_matrix(inst), 1.0);
    CHECK(basis.constraint_count == 0);
    CHECK(basis.dim() == 3);
}

}  // TEST_SUITE
