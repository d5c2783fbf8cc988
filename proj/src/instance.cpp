#include "specbal/instance.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "specbal/kernels.hpp"

namespace specbal {

std::vector<const SymmetricMatrix*> Instance::matrix_ptrs() const {
    std::vector<const SymmetricMatrix*> ptrs;
    ptrs.reserve(matrices.size());
    for (const auto& m : matrices) ptrs.push_back(&m);
    return ptrs;
}

void Instance::ensure_unit_norms(double tol) const {
    for (int i = 0; i < n; ++i) {
        const double nrm = spectral_norm(matrices[i]);
        if (nrm > 1.0 + tol) {
            throw InvalidInputError("instance: matrix " + std::to_string(i) +
                                    " has operator norm " + std::to_string(nrm) + " > 1");
        }
    }
}

Instance make_instance(int n, int d, std::vector<SymmetricMatrix> matrices, std::string label,
                       std::optional<std::int64_t> seed) {
    if (n <= 0 || d <= 0) throw InvalidInputError("instance: n and d must be positive");
    if (matrices.size() != static_cast<std::size_t>(n)) {
        throw InvalidInputError("instance: expected n matrices");
    }
    for (const auto& m : matrices) {
        if (m.dim() != d) throw InvalidInputError("instance: matrix dimension mismatch");
    }
    Instance inst;
    inst.n = n;
    inst.d = d;
    inst.matrices = std::move(matrices);
    inst.label = std::move(label);
    inst.seed = seed;
    return inst;
}

void SignVector::validate() const {
    for (double v : values) {
        if (v != 1.0 && v != -1.0) {
            throw InvalidInputError("SignVector: entry is not exactly +-1");
        }
    }
}

Instance generate_diagonal_spencer(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1) throw InvalidInputError("diagonal-spencer: n, d must be >= 1");
    Rng rng(seed);
    std::vector<SymmetricMatrix> mats;
    mats.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
        for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(j) * d + j] = rng.sign();
        mats.emplace_back(d, std::move(a));
    }
    std::ostringstream label;
    label << "diagonal-spencer(n=" << n << ",d=" << d << ",seed=" << seed << ")";
    return make_instance(n, d, std::move(mats), label.str(),
                         static_cast<std::int64_t>(seed));
}

Instance generate_lower_bound(int n) {
    if (n < 2) throw InvalidInputError("lower-bound: n must be >= 2");
    const int d = n;
    std::vector<SymmetricMatrix> mats;
    mats.reserve(n);
    {
        std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
        a[0] = 1.0;  // e_1 e_1^T
        mats.emplace_back(d, std::move(a));
    }
    for (int i = 1; i < n; ++i) {
        std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
        a[0] = 0.5;
        a[static_cast<std::size_t>(i)] = 0.5;
        a[static_cast<std::size_t>(i) * d] = 0.5;
        a[static_cast<std::size_t>(i) * d + i] = 0.5;
        mats.emplace_back(d, std::move(a));
    }
    std::ostringstream label;
    label << "lower-bound(n=" << n << ")";
    return make_instance(n, d, std::move(mats), label.str(), std::nullopt);
}

Instance generate_low_rank_random(int n, int d, int r, std::uint64_t seed) {
    if (n < 1 || d < 1) throw InvalidInputError("low-rank: n, d must be >= 1");
    if (r < 1 || r > d) throw InvalidInputError("low-rank: need 1 <= r <= d");
    Rng rng(seed);
    std::vector<SymmetricMatrix> mats;
    mats.reserve(n);
    for (int i = 0; i < n; ++i) {
        // r orthonormal directions via modified Gram-Schmidt on Gaussians
        std::vector<Vec> dirs;
        dirs.reserve(r);
        while (static_cast<int>(dirs.size()) < r) {
            Vec u = rng.gaussian_vector(d);
            for (const Vec& w : dirs) {
                kernels::axpy(-vec_dot(w, u), w.data(), u.data(), d);
            }
            const double nrm = vec_norm2(u);
            if (nrm < 1e-8) continue;  // essentially never for Gaussians
            kernels::scale(u.data(), 1.0 / nrm, d);
            dirs.push_back(std::move(u));
        }
        std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
        for (const Vec& u : dirs) {
            const double s = rng.sign();
            for (int row = 0; row < d; ++row) {
                kernels::axpy(s * u[row], u.data(), a.data() + static_cast<std::size_t>(row) * d,
                              d);
            }
        }
        mats.emplace_back(d, std::move(a));
    }
    std::ostringstream label;
    label << "low-rank(n=" << n << ",d=" << d << ",r=" << r << ",seed=" << seed << ")";
    return make_instance(n, d, std::move(mats), label.str(),
                         static_cast<std::int64_t>(seed));
}

Instance generate_block_diagonal(int n, int d, int h, std::uint64_t seed) {
    if (n < 1 || d < 1) throw InvalidInputError("block-diagonal: n, d must be >= 1");
    if (h < 1 || d % h != 0) throw InvalidInputError("block-diagonal: h must divide d");
    Rng rng(seed);
    const int blocks = d / h;
    std::vector<SymmetricMatrix> mats;
    mats.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
        for (int b = 0; b < blocks; ++b) {
            std::vector<double> block(static_cast<std::size_t>(h) * h, 0.0);
            for (int p = 0; p < h; ++p) {
                for (int q = p; q < h; ++q) {
                    const double v = rng.gaussian();
                    block[static_cast<std::size_t>(p) * h + q] = v;
                    block[static_cast<std::size_t>(q) * h + p] = v;
                }
            }
            SymmetricMatrix bm(h, block);
            const double nrm = spectral_norm(bm);
            const double inv = nrm > 0.0 ? 1.0 / nrm : 0.0;
            const int off = b * h;
            for (int p = 0; p < h; ++p) {
                for (int q = 0; q < h; ++q) {
                    a[static_cast<std::size_t>(off + p) * d + (off + q)] = bm(p, q) * inv;
                }
            }
        }
        mats.emplace_back(d, std::move(a));
    }
    std::ostringstream label;
    label << "block-diagonal(n=" << n << ",d=" << d << ",h=" << h << ",seed=" << seed << ")";
    return make_instance(n, d, std::move(mats), label.str(),
                         static_cast<std::int64_t>(seed));
}

namespace {

void append_double_17g(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
    std::string out;
    out.reserve(static_cast<std::size_t>(inst.n) * inst.d * inst.d * 20 + 256);
    out += "{\n  \"n\": ";
    out += std::to_string(inst.n);
    out += ",\n  \"d\": ";
    out += std::to_string(inst.d);
    out += ",\n  \"label\": ";
    out += nlohmann::json(inst.label).dump();  // proper string escaping
    out += ",\n  \"seed\": ";
    out += inst.seed ? std::to_string(*inst.seed) : "null";
    out += ",\n  \"matrices\": [\n";
    for (int i = 0; i < inst.n; ++i) {
        out += "    [";
        const auto& e = inst.matrices[i].entries();
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (k > 0) out += ", ";
            append_double_17g(out, e[k]);
        }
        out += (i + 1 < inst.n) ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

Instance parse_instance_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance: top-level JSON value must be an object");
    for (const char* key : {"n", "d", "matrices"}) {
        if (!j.contains(key)) {
            throw ParseError(std::string("instance: missing required field \"") + key + "\"");
        }
    }
    if (!j["n"].is_number_integer() || !j["d"].is_number_integer()) {
        throw ParseError("instance: n and d must be integers");
    }
    const int n = j["n"].get<int>();
    const int d = j["d"].get<int>();
    if (n < 1 || d < 1) throw ParseError("instance: n and d must be positive");
    if (!j["matrices"].is_array() || j["matrices"].size() != static_cast<std::size_t>(n)) {
        throw ParseError("instance: \"matrices\" must be an array of n matrices");
    }

    std::vector<SymmetricMatrix> mats;
    mats.reserve(n);
    for (int i = 0; i < n; ++i) {
        const auto& jm = j["matrices"][i];
        if (!jm.is_array() || jm.size() != static_cast<std::size_t>(d) * d) {
            throw ParseError("instance: matrix " + std::to_string(i) +
                                 " must hold exactly d*d numbers (dimension mismatch)",
                             i);
        }
        std::vector<double> a(static_cast<std::size_t>(d) * d);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (!jm[k].is_number()) {
                throw ParseError("instance: matrix " + std::to_string(i) +
                                     " entry (" + std::to_string(k / d) + "," +
                                     std::to_string(k % d) + ") is not a number",
                                 i, static_cast<int>(k) / d, static_cast<int>(k) % d);
            }
            a[k] = jm[k].get<double>();
        }
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                const double v = a[static_cast<std::size_t>(r) * d + c];
                if (!std::isfinite(v)) {
                    throw ParseError("instance: matrix " + std::to_string(i) + " entry (" +
                                         std::to_string(r) + "," + std::to_string(c) +
                                         ") is not finite",
                                     i, r, c);
                }
                if (c > r) {
                    const double w = a[static_cast<std::size_t>(c) * d + r];
                    if (std::fabs(v - w) > 1e-12) {
                        throw ParseError("instance: matrix " + std::to_string(i) +
                                             " is not symmetric at (" + std::to_string(r) + "," +
                                             std::to_string(c) + "): " + std::to_string(v) +
                                             " vs " + std::to_string(w),
                                         i, r, c);
                    }
                }
            }
        }
        mats.emplace_back(d, std::move(a));
    }

    std::string label;
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw ParseError("instance: label must be a string");
        label = j["label"].get<std::string>();
    }
    std::optional<std::int64_t> seed;
    if (j.contains("seed") && !j["seed"].is_null()) {
        if (!j["seed"].is_number_integer()) {
            throw ParseError("instance: seed must be an integer or null");
        }
        seed = j["seed"].get<std::int64_t>();
    }
    return make_instance(n, d, std::move(mats), std::move(label), seed);
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("instance: cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance_json(ss.str());
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("instance: cannot open file for writing: " + path);
    out << instance_to_json(inst);
    if (!out) throw Error("instance: write failed: " + path);
}

}  // namespace specbal
