#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "specbal/instance.hpp"

using namespace specbal;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("diagonal spencer generator") {
    SUBCASE("single 1x1 matrix has a sign entry") {
        const Instance inst = generate_diagonal_spencer(1, 1, 42);
        CHECK(inst.n == 1);
        CHECK(inst.d == 1);
        const double v = inst.matrices[0](0, 0);
        CHECK((v == 1.0 || v == -1.0));
    }
    SUBCASE("entries are signs on the diagonal, zero elsewhere") {
        const Instance inst = generate_diagonal_spencer(16, 16, 7);
        for (const auto& m : inst.matrices) {
            for (int i = 0; i < 16; ++i) {
                for (int j = 0; j < 16; ++j) {
                    if (i == j) {
                        CHECK((m(i, j) == 1.0 || m(i, j) == -1.0));
                    } else {
                        CHECK(m(i, j) == 0.0);
                    }
                }
            }
            CHECK(frobenius_norm(m) * frobenius_norm(m) == doctest::Approx(16.0));
            CHECK(spectral_norm(m) == doctest::Approx(1.0));
        }
    }
    SUBCASE("deterministic in the seed") {
        const Instance a = generate_diagonal_spencer(8, 8, 3);
        const Instance b = generate_diagonal_spencer(8, 8, 3);
        for (int i = 0; i < 8; ++i) CHECK(a.matrices[i].entries() == b.matrices[i].entries());
    }
}

TEST_CASE("lower bound generator") {
    SUBCASE("n=2 rank-one entries") {
        const Instance inst = generate_lower_bound(2);
        CHECK(inst.d == 2);
        const SymmetricMatrix& a2 = inst.matrices[1];
        CHECK(a2(0, 0) == 0.5);
        CHECK(a2(0, 1) == 0.5);
        CHECK(a2(1, 0) == 0.5);
        CHECK(a2(1, 1) == 0.5);
    }
    SUBCASE("all matrices have unit norm; i >= 2 are rank one") {
        const Instance inst = generate_lower_bound(6);
        inst.ensure_unit_norms();
        for (int i = 1; i < 6; ++i) {
            const EigenDecomposition eig = symmetric_eigen(inst.matrices[i]);
            CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
            int rank = 0;
            for (double lam : eig.eigenvalues) {
                if (std::fabs(lam) > 1e-8) ++rank;
            }
            CHECK(rank == 1);
        }
    }
    SUBCASE("exhaustive minimum at n=8 is at least 0.5*sqrt(8)") {
        const Instance inst = generate_lower_bound(8);
        const double best = oracles::exhaustive_min_discrepancy(inst, 2000);
        CHECK(best >= 0.5 * std::sqrt(8.0));
    }
    CHECK_THROWS_AS(generate_lower_bound(1), InvalidInputError);
}

TEST_CASE("low rank generator") {
    SUBCASE("rank one matrices have unit Frobenius norm") {
        const Instance inst = generate_low_rank_random(6, 10, 1, 5);
        for (const auto& m : inst.matrices) {
            CHECK(frobenius_norm(m) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(spectral_norm(m) == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    SUBCASE("rank bounded by r via eigenvalue count") {
        const Instance inst = generate_low_rank_random(32, 32, 4, 3);
        for (const auto& m : inst.matrices) {
            const EigenDecomposition eig = symmetric_eigen(m);
            int rank = 0;
            for (double lam : eig.eigenvalues) {
                if (std::fabs(lam) > 1e-8) ++rank;
            }
            CHECK(rank <= 4);
            CHECK(spectral_norm(m) == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(frobenius_norm(m) * frobenius_norm(m) <= 4.0 + 1e-8);
        }
    }
    CHECK_THROWS_AS(generate_low_rank_random(4, 3, 5, 1), InvalidInputError);
}

TEST_CASE("block diagonal generator") {
    SUBCASE("h=1 gives a diagonal instance") {
        const Instance inst = generate_block_diagonal(4, 6, 1, 2);
        for (const auto& m : inst.matrices) {
            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    if (i != j) CHECK(m(i, j) == 0.0);
                }
            }
        }
        inst.ensure_unit_norms();
    }
    SUBCASE("off-block entries are exactly zero") {
        const Instance inst = generate_block_diagonal(16, 16, 4, 1);
        for (const auto& m : inst.matrices) {
            for (int i = 0; i < 16; ++i) {
                for (int j = 0; j < 16; ++j) {
                    if (i / 4 != j / 4) CHECK(m(i, j) == 0.0);
                }
            }
            CHECK(spectral_norm(m) <= 1.0 + 1e-8);
        }
    }
    SUBCASE("h=d gives one dense block of unit norm") {
        const Instance inst = generate_block_diagonal(3, 5, 5, 9);
        for (const auto& m : inst.matrices) {
            CHECK(spectral_norm(m) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(generate_block_diagonal(4, 6, 4, 1), InvalidInputError);
}

TEST_CASE("instance json round trip") {
    SUBCASE("1x1 case") {
        const Instance inst = make_instance(1, 1, {SymmetricMatrix(1, {0.5})}, "tiny", 1);
        const std::string path = tmp_path("specbal_inst_tiny.json");
        write_instance(inst, path);
        const Instance back = read_instance(path);
        CHECK(back.n == 1);
        CHECK(back.d == 1);
        CHECK(back.matrices[0](0, 0) == 0.5);
        CHECK(back.label == "tiny");
        CHECK(back.seed.value() == 1);
        std::remove(path.c_str());
    }
    SUBCASE("generated instance round-trips bitwise") {
        const Instance inst = generate_low_rank_random(8, 6, 2, 11);
        const std::string path = tmp_path("specbal_inst_rt.json");
        write_instance(inst, path);
        const Instance back = read_instance(path);
        REQUIRE(back.n == inst.n);
        for (int i = 0; i < inst.n; ++i) {
            CHECK(back.matrices[i].entries() == inst.matrices[i].entries());
        }
        std::remove(path.c_str());
    }
}

TEST_CASE("instance parse errors") {
    SUBCASE("malformed json") {
        CHECK_THROWS_AS(parse_instance_json("{ not json"), ParseError);
    }
    SUBCASE("dimension mismatch") {
        const std::string text =
            R"({"n": 2, "d": 2, "label": "", "seed": null,
                "matrices": [[1,0,0,1],[1,0,0]]})";
        CHECK_THROWS_AS(parse_instance_json(text), ParseError);
    }
    SUBCASE("asymmetry beyond 1e-12 rejected with location") {
        const std::string text =
            R"({"n": 1, "d": 2, "label": "", "seed": null,
                "matrices": [[1, 0.5, 0.5000001, 1]]})";
        try {
            parse_instance_json(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.matrix_index == 0);
            CHECK(e.row == 0);
            CHECK(e.col == 1);
        }
    }
    SUBCASE("asymmetry within 1e-12 tolerated and symmetrized") {
        const std::string text =
            R"({"n": 1, "d": 2, "label": "", "seed": null,
                "matrices": [[1, 0.5, 0.5000000000000001, 1]]})";
        const Instance inst = parse_instance_json(text);
        CHECK(inst.matrices[0](0, 1) == inst.matrices[0](1, 0));
    }
    SUBCASE("non-finite entries rejected") {
        const std::string text =
            R"({"n": 1, "d": 1, "label": "", "seed": null, "matrices": [[1e999]]})";
        CHECK_THROWS_AS(parse_instance_json(text), ParseError);
    }
    SUBCASE("missing fields rejected") {
        CHECK_THROWS_AS(parse_instance_json(R"({"n": 1, "d": 1})"), ParseError);
    }
}

TEST_CASE("sign vector validation") {
    SignVector good{{1.0, -1.0, 1.0}};
    good.validate();
    SignVector bad{{1.0, 0.5}};
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

}  // TEST_SUITE
