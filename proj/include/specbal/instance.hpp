#pragma once

// Instance container, JSON serialization and the test-family generators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specbal/linalg.hpp"
#include "specbal/rng.hpp"

namespace specbal {

// Ordered list of n symmetric d x d matrices plus metadata. Immutable after
// construction; safe to share across threads.
struct Instance {
    int n = 0;
    int d = 0;
    std::vector<SymmetricMatrix> matrices;
    std::string label;
    std::optional<std::int64_t> seed;

    // Pointer view over the matrices, the form the solver layers work with.
    std::vector<const SymmetricMatrix*> matrix_ptrs() const;

    // Throws InvalidInputError unless ||A_i||_op <= 1 + tol for all i.
    void ensure_unit_norms(double tol = 1e-8) const;
};

Instance make_instance(int n, int d, std::vector<SymmetricMatrix> matrices, std::string label,
                       std::optional<std::int64_t> seed);

struct SignVector {
    Vec values;  // every entry exactly +1 or -1

    void validate() const;  // throws InvalidInputError on non-sign entries
};

// Each A_i = diag(a_i) with a_i uniform in {-1,+1}^d.
Instance generate_diagonal_spencer(int n, int d, std::uint64_t seed);

// d = n; A_1 = e_1 e_1^T and A_i = (1/2)(e_1+e_i)(e_1+e_i)^T for i >= 2.
// The i = 1 matrix of the rank-one family has operator norm 2, so it is
// replaced by e_1 e_1^T to keep every norm at most 1; the Omega(sqrt(n))
// floor comes from the i >= 2 matrices and survives the substitution.
Instance generate_lower_bound(int n);

// Each A_i = sum_k s_k u_k u_k^T with r random orthonormal u_k per matrix and
// s_k in {-1,+1}; eigenvalues are exactly +-1, so ||A_i||_op = 1 and
// ||A_i||_F^2 = r.
Instance generate_low_rank_random(int n, int d, int r, std::uint64_t seed);

// Each A_i block-diagonal with d/h random symmetric blocks of size h, every
// block scaled to unit operator norm.
Instance generate_block_diagonal(int n, int d, int h, std::uint64_t seed);

// JSON instance file:
//   {"n": int, "d": int, "label": string, "seed": int|null,
//    "matrices": [[row-major d*d floats], ...]}
// Doubles are written with 17 significant digits so write-then-read
// reproduces entries bitwise. Reading rejects malformed JSON, dimension
// mismatches, asymmetry beyond 1e-12 and non-finite values with a ParseError
// carrying the matrix index and row/column.
Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);

Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

}  // namespace specbal
