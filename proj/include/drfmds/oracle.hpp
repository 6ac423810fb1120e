#pragma once

// Brute-force certification. Both the rank and the nonzero-column count of
// R [I ; A_j] depend only on the row space of R, so the search over repair
// matrices reduces to one canonical rref representative per 2-dimensional
// subspace of F_q^4: (q^2+1)(q^2+q+1) candidates instead of q^8 matrices.

#include <cstdint>
#include <random>
#include <vector>

#include "drfmds/code.hpp"
#include "drfmds/errors.hpp"
#include "drfmds/mat.hpp"
#include "drfmds/repair.hpp"

namespace drfmds {

// Every 2-dimensional row space of F_q^4, one rref representative each.
// Enumerates by pivot-column pattern; the free entries right of each pivot
// (excluding the other pivot column) range over the whole field.
inline std::vector<Mat> enumerate_rowspaces(const Field& f) {
    if (f.order() > 16)
        throw ValidationError("FieldTooLarge: rowspace enumeration capped at q <= 16, got " + f.id());
    const unsigned q = f.order();
    std::vector<Mat> out;
    for (unsigned c1 = 0; c1 < 4; ++c1)
        for (unsigned c2 = c1 + 1; c2 < 4; ++c2) {
            std::vector<unsigned> free0, free1;
            for (unsigned j = c1 + 1; j < 4; ++j)
                if (j != c2) free0.push_back(j);
            for (unsigned j = c2 + 1; j < 4; ++j) free1.push_back(j);
            const std::size_t total_free = free0.size() + free1.size();
            std::size_t combos = 1;
            for (std::size_t t = 0; t < total_free; ++t) combos *= q;
            for (std::size_t idx = 0; idx < combos; ++idx) {
                Mat r(f, 2, 4);
                r(0, c1) = 1;
                r(1, c2) = 1;
                std::size_t rem = idx;
                for (unsigned j : free0) {
                    r(0, j) = static_cast<Elem>(rem % q);
                    rem /= q;
                }
                for (unsigned j : free1) {
                    r(1, j) = static_cast<Elem>(rem % q);
                    rem /= q;
                }
                out.push_back(std::move(r));
            }
        }
    return out;
}

struct SearchResult {
    unsigned node = 0;
    unsigned best_bandwidth = 0;  // minimum achievable gamma_i
    unsigned best_access = 0;     // minimum achievable Gamma_i
    Mat bandwidth_matrix;         // an achieving rref representative
    Mat access_matrix;
    std::size_t spaces_total = 0;       // row spaces enumerated
    std::size_t spaces_admissible = 0;  // with full-rank useful data
};

// Exhaustive minimum of gamma_i and of Gamma_i over all admissible repair
// row spaces for node i. The two minima are tracked independently; the
// families show they can be attained by different matrices.
inline SearchResult best_repair(const Code& code, unsigned i) {
    if (i >= code.n()) throw ValidationError("BadNodeIndex: " + std::to_string(i));
    const Field& f = code.field();
    const Mat identity2 = Mat::identity(f, 2);
    std::vector<Mat> stacks;  // [I ; A_j] per node
    for (unsigned j = 0; j < code.n(); ++j) stacks.push_back(vstack(identity2, code.block(j)));

    SearchResult res{i, 0, 0, Mat(f, 2, 4), Mat(f, 2, 4), 0, 0};
    bool found = false;
    for (const Mat& r : enumerate_rowspaces(f)) {
        ++res.spaces_total;
        if (rank(r * stacks[i]) != 2) continue;
        ++res.spaces_admissible;
        unsigned gamma = 0, access = 0;
        for (unsigned j = 0; j < code.n(); ++j) {
            if (j == i) continue;
            Mat prod = r * stacks[j];
            gamma += rank(prod);
            access += nonzero_cols(prod);
        }
        if (!found || gamma < res.best_bandwidth) {
            res.best_bandwidth = gamma;
            res.bandwidth_matrix = r;
        }
        if (!found || access < res.best_access) {
            res.best_access = access;
            res.access_matrix = r;
        }
        found = true;
    }
    if (!found) throw ValidationError("UsefulDataRankDeficient: no admissible row space for node " +
                                      std::to_string(i));
    return res;
}

inline Mat uniform_random_data(const Code& code, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> dist(0, code.field().order() - 1);
    Mat data(code.field(), 2, code.k());
    for (unsigned r = 0; r < 2; ++r)
        for (unsigned c = 0; c < code.k(); ++c) data(r, c) = static_cast<Elem>(dist(rng));
    return data;
}

inline Codeword random_codeword(const Code& code, std::mt19937_64& rng) {
    return encode_systematic(code, uniform_random_data(code, rng));
}

// Decode-roundtrip check of the MDS property: every 2-subset erasure
// pattern against `trials` random codewords (trial 0 is the all-zero
// word). Returns false on the first mismatch. Independent of the pairwise
// determinant criterion, which it cross-checks.
inline bool mds_exhaustive(const Code& code, unsigned trials, std::uint64_t seed = 0x5eed) {
    if (trials < 1) throw ValidationError("BadParameters: trials >= 1");
    std::mt19937_64 rng(seed);
    const unsigned n = code.n();
    for (unsigned t = 0; t < trials; ++t) {
        Codeword cw = t == 0 ? Codeword(code.field(), 2, n) : random_codeword(code, rng);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j) {
                std::vector<std::optional<Column>> present(n);
                for (unsigned v = 0; v < n; ++v)
                    if (v != i && v != j) present[v] = column(cw, v);
                try {
                    if (decode_erasures(code, present) != cw) return false;
                } catch (const ValidationError&) {
                    return false;  // singular pair system: MDS violated
                }
            }
    }
    return true;
}

}  // namespace drfmds
