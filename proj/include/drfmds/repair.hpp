#pragma once

// Single-node repair. A 2x4 repair matrix R_i projects the four parity
// equations so that the failed node's coefficient matrix R_i [I ; A_i]
// keeps full rank while each helper's product M_j = R_i [I ; A_j] drops to
// low rank. A rank-1 helper combines its two symbols into one transmitted
// symbol; a rank-2 helper sends both. Downloaded symbols per helper equal
// rank(M_j), accessed symbols equal the count of nonzero columns of M_j.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drfmds/code.hpp"
#include "drfmds/errors.hpp"
#include "drfmds/mat.hpp"
#include "drfmds/rational.hpp"

namespace drfmds {

enum class RepairStrategy : std::uint8_t { Bandwidth, Access };

inline std::string strategy_name(RepairStrategy s) {
    return s == RepairStrategy::Bandwidth ? "bw" : "access";
}

inline RepairStrategy strategy_parse(std::string_view s) {
    if (s == "bw" || s == "bandwidth") return RepairStrategy::Bandwidth;
    if (s == "access") return RepairStrategy::Access;
    throw ValidationError("BadStrategy: '" + std::string(s) + "'");
}

// The family's repair matrix for node i. The first family has one fixed
// matrix per node type; the second family keeps types 0 and 1 fixed and
// switches the type-2 matrix between the bandwidth-optimizing and
// access-optimizing variants.
inline Mat repair_matrix(const Code& code, unsigned i, RepairStrategy strategy) {
    if (i >= code.n()) throw ValidationError("BadNodeIndex: " + std::to_string(i));
    const Field& f = code.field();
    const unsigned type = code.node_type(i);
    if (code.family() == Family::C1) {
        const Elem a = code.a(), b = code.b();
        switch (type) {
            case 0: return Mat::of(f, 2, 4, {1, a, 0, 0, 0, 0, 1, 1});
            case 1: return Mat::of(f, 2, 4, {a, 1, 0, 0, 0, 0, 1, b});
            case 2: return Mat::of(f, 2, 4, {0, 1, 0, 0, 0, 0, 0, 1});
            case 3: return Mat::of(f, 2, 4, {1, 0, 0, 0, 0, 0, 1, 0});
        }
    } else {
        switch (type) {
            case 0: return Mat::of(f, 2, 4, {1, 0, 0, 0, 0, 0, 1, 0});
            case 1: return Mat::of(f, 2, 4, {0, 1, 0, 0, 0, 0, 0, 1});
            case 2:
                if (strategy == RepairStrategy::Bandwidth)
                    return Mat::of(f, 2, 4, {1, 1, 0, 0, 0, 0, 1, 1});
                return Mat::of(f, 2, 4, {1, 0, 0, 0, 0, 1, 1, 0});
        }
    }
    throw ValidationError("BadNodeIndex");
}

// What one helper contributes: its 2x2 product M_j, how many symbols it
// transmits (the rank), which of its two symbols it reads (the column
// mask), and for rank-1 helpers the representative row plus the scalars
// expanding the single transmitted symbol back to M_j f_j.
struct HelperTransfer {
    unsigned node = 0;
    Mat coeff;                                // M_j = R_i [I ; A_j]
    unsigned rank = 0;                        // symbols downloaded from this helper
    std::array<bool, 2> col_nonzero{false, false};  // symbols accessed at this helper
    std::array<Elem, 2> rep_row{0, 0};        // first nonzero row of M_j (rank 1)
    std::array<Elem, 2> row_scale{0, 0};      // row r of M_j = row_scale[r] * rep_row
};

struct RepairPlan {
    unsigned failed = 0;
    unsigned n = 0, k = 0;
    RepairStrategy strategy = RepairStrategy::Bandwidth;
    Mat matrix;                    // R_i, 2x4
    Mat useful;                    // R_i [I ; A_i], full rank
    std::vector<HelperTransfer> helpers;  // ascending node order, failed node skipped

    const HelperTransfer& helper(unsigned node) const {
        for (const auto& h : helpers)
            if (h.node == node) return h;
        throw ValidationError("BadHelperIndex: " + std::to_string(node));
    }
};

struct HelperStat {
    unsigned node = 0;
    unsigned downloaded = 0;
    unsigned accessed = 0;
};

struct RepairReport {
    unsigned failed = 0;
    unsigned downloaded = 0;  // gamma_i, total symbols transmitted
    unsigned accessed = 0;    // Gamma_i, total symbols read
    std::vector<HelperStat> per_helper;
    Rational normalized_bandwidth{0};  // gamma_i / (2k)
    Rational normalized_access{0};     // Gamma_i / (2k)
};

namespace detail {
inline Mat helper_product(const Code& code, const Mat& r, unsigned j) {
    return r * vstack(Mat::identity(code.field(), 2), code.block(j));
}
}  // namespace detail

inline RepairPlan make_plan(const Code& code, unsigned i, RepairStrategy strategy) {
    const Field& f = code.field();
    Mat r = repair_matrix(code, i, strategy);
    Mat useful = detail::helper_product(code, r, i);
    if (rank(useful) != 2)
        throw ValidationError("UsefulDataRankDeficient: node " + std::to_string(i));

    RepairPlan plan{i, code.n(), code.k(), strategy, r, useful, {}};
    for (unsigned j = 0; j < code.n(); ++j) {
        if (j == i) continue;
        Mat coeff = detail::helper_product(code, r, j);
        const unsigned rk = rank(coeff);
        std::array<bool, 2> mask{coeff(0, 0) != 0 || coeff(1, 0) != 0,
                                 coeff(0, 1) != 0 || coeff(1, 1) != 0};
        std::array<Elem, 2> rep_row{0, 0};
        std::array<Elem, 2> row_scale{0, 0};
        if (rk == 1) {
            const unsigned r0 = (coeff(0, 0) != 0 || coeff(0, 1) != 0) ? 0 : 1;
            rep_row = {coeff(r0, 0), coeff(r0, 1)};
            const unsigned pivot = rep_row[0] != 0 ? 0 : 1;
            for (unsigned row = 0; row < 2; ++row) {
                Elem c = f.div(coeff(row, pivot), rep_row[pivot]);
                // both entries of the row must agree with one scalar
                for (unsigned col = 0; col < 2; ++col)
                    if (coeff(row, col) != f.mul(c, rep_row[col]))
                        throw std::logic_error("rank-1 helper rows are not proportional");
                row_scale[row] = c;
            }
        }
        plan.helpers.push_back(HelperTransfer{j, std::move(coeff), rk, mask, rep_row, row_scale});
    }
    return plan;
}

// Symbol counts only; no data moves.
inline RepairReport measure(const RepairPlan& plan) {
    RepairReport rep;
    rep.failed = plan.failed;
    for (const auto& h : plan.helpers) {
        unsigned accessed = unsigned(h.col_nonzero[0]) + unsigned(h.col_nonzero[1]);
        rep.per_helper.push_back({h.node, h.rank, accessed});
        rep.downloaded += h.rank;
        rep.accessed += accessed;
    }
    rep.normalized_bandwidth = Rational(rep.downloaded, 2ll * plan.k);
    rep.normalized_access = Rational(rep.accessed, 2ll * plan.k);
    return rep;
}

// What helper j actually transmits for its column f_j: both combined
// symbols for a rank-2 helper, the single combination rep_row * f_j for a
// rank-1 helper, nothing for rank 0.
using TransferPayload = std::vector<Elem>;

inline TransferPayload helper_extract(const RepairPlan& plan, unsigned j, const Column& f_j) {
    const HelperTransfer& h = plan.helper(j);
    const Field& f = h.coeff.field();
    switch (h.rank) {
        case 0: return {};
        case 1:
            return {f.add(f.mul(h.rep_row[0], f_j[0]), f.mul(h.rep_row[1], f_j[1]))};
        default: {
            Elem s0 = f.add(f.mul(h.coeff(0, 0), f_j[0]), f.mul(h.coeff(0, 1), f_j[1]));
            Elem s1 = f.add(f.mul(h.coeff(1, 0), f_j[0]), f.mul(h.coeff(1, 1), f_j[1]));
            return {s0, s1};
        }
    }
}

// Rebuilds the failed column from the helper payloads: expand each payload
// back to the interference term M_j f_j, sum, and solve the full-rank 2x2
// useful-data system against the negated sum.
inline std::pair<Column, RepairReport> repair_node(const Code& code, const RepairPlan& plan,
                                                   const std::vector<TransferPayload>& payloads) {
    if (payloads.size() != plan.helpers.size())
        throw ValidationError("DimensionMismatch: one payload per helper required");
    const Field& f = code.field();
    Elem s0 = 0, s1 = 0;
    for (std::size_t idx = 0; idx < plan.helpers.size(); ++idx) {
        const HelperTransfer& h = plan.helpers[idx];
        const TransferPayload& p = payloads[idx];
        if (p.size() != h.rank)
            throw ValidationError("DimensionMismatch: helper " + std::to_string(h.node) + " payload size");
        Elem t0 = 0, t1 = 0;
        if (h.rank == 1) {
            t0 = f.mul(h.row_scale[0], p[0]);
            t1 = f.mul(h.row_scale[1], p[0]);
        } else if (h.rank == 2) {
            t0 = p[0];
            t1 = p[1];
        }
        s0 = f.add(s0, t0);
        s1 = f.add(s1, t1);
    }
    Mat rhs(f, 2, 1);
    rhs(0, 0) = f.neg(s0);
    rhs(1, 0) = f.neg(s1);
    Mat x = solve(plan.useful, rhs);
    return {Column{x(0, 0), x(1, 0)}, measure(plan)};
}

// Degraded read of f_{i,row} from the same-row symbols of all other nodes.
// Works on either row because the first parity row is all identities.
inline Elem degraded_read(const Code& code, unsigned i, unsigned row,
                          const std::vector<std::optional<Elem>>& row_symbols) {
    if (i >= code.n()) throw ValidationError("BadNodeIndex: " + std::to_string(i));
    if (row > 1) throw ValidationError("BadParameters: row must be 0 or 1");
    if (row_symbols.size() != code.n())
        throw ValidationError("MissingSymbols: need one slot per node");
    const Field& f = code.field();
    Elem s = 0;
    for (unsigned j = 0; j < code.n(); ++j) {
        if (j == i) continue;
        if (!row_symbols[j])
            throw ValidationError("MissingSymbols: node " + std::to_string(j) + " absent");
        s = f.add(s, *row_symbols[j]);
    }
    return f.neg(s);
}

// Per-node reports and their exact averages, the quantities the family
// formulas predict.
struct AverageMetrics {
    Rational bandwidth{0};  // mean_i gamma_i / (2k)
    Rational access{0};     // mean_i Gamma_i / (2k)
    std::vector<RepairReport> per_node;
};

inline AverageMetrics measured_average(const Code& code, RepairStrategy strategy) {
    AverageMetrics out;
    long long gamma_sum = 0, access_sum = 0;
    for (unsigned i = 0; i < code.n(); ++i) {
        RepairReport rep = measure(make_plan(code, i, strategy));
        gamma_sum += rep.downloaded;
        access_sum += rep.accessed;
        out.per_node.push_back(std::move(rep));
    }
    out.bandwidth = Rational(gamma_sum, 2ll * code.k() * code.n());
    out.access = Rational(access_sum, 2ll * code.k() * code.n());
    return out;
}

}  // namespace drfmds
