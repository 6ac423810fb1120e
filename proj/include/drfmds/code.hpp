#pragma once

// The two (n = k+2, k) MDS array code families with sub-packetization 2,
// plus the generalized variant of the second family with per-type block
// counts l1, l2, l3. A codeword is a 2 x n array whose column i is the
// content of node i; it satisfies the two parity equations
//
//     sum_i f_i = 0        and        sum_i A_i f_i = 0,
//
// where the A_i are the per-node 2x2 blocks fixed by the family. The first
// equation has all-identity coefficients, which is what makes single-symbol
// degraded reads a plain sum over the surviving nodes.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "drfmds/errors.hpp"
#include "drfmds/gf.hpp"
#include "drfmds/mat.hpp"

namespace drfmds {

enum class Family : std::uint8_t { C1 = 1, C2 = 2, C2Gen = 3 };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::C1: return "c1";
        case Family::C2: return "c2";
        case Family::C2Gen: return "c2gen";
    }
    throw ValidationError("BadFamily");
}

inline Family family_parse(std::string_view s) {
    if (s == "c1") return Family::C1;
    if (s == "c2") return Family::C2;
    if (s == "c2gen") return Family::C2Gen;
    throw ValidationError("BadFamily: '" + std::string(s) + "'");
}

// Node content: the length-2 column (f_{i,0}, f_{i,1}).
using Column = std::array<Elem, 2>;

// A codeword is a 2 x n Mat; column i holds node i.
using Codeword = Mat;

struct MdsReport {
    bool ok = true;
    std::vector<std::pair<unsigned, unsigned>> failing;  // block pairs with singular difference
};

class Code {
public:
    // (n=4m, k=4m-2) family over GF(2^{2t}) with q >= 3m+1. Blocks cycle
    // through four 2x2 templates built from a = w^{(q-1)/3} and b = a^2,
    // scaled by w^i for the i-th group of four nodes.
    static Code c1(unsigned m, const Field& field) {
        if (m < 1) throw ValidationError("BadParameters: m >= 1 required");
        if (field.kind() != FieldKind::BinaryExtension || field.degree() % 2 != 0)
            throw ValidationError("FieldOrderNotFourPower: c1 needs q = 2^{2t}, got " + field.id());
        const unsigned q = field.order();
        if (q < 3 * m + 1)
            throw ValidationError("FieldTooSmall: c1 with m=" + std::to_string(m) + " needs q >= " +
                                  std::to_string(3 * m + 1) + ", got q=" + std::to_string(q));

        Code code(Family::C1, field);
        const Field& f = *code.field_;
        code.m_ = m;
        code.n_ = 4 * m;
        code.k_ = code.n_ - 2;
        code.a_ = f.exp((q - 1) / 3);
        code.b_ = f.exp(2 * (q - 1) / 3);
        check_c1_identities(f, code.a_, code.b_);

        for (unsigned i = 0; i < m; ++i) {
            Elem wi = f.exp(i);
            Elem a = code.a_, b = code.b_;
            code.blocks_.push_back(scaled(Mat::of(f, 2, 2, {1, 0, 0, 1}), wi));
            code.blocks_.push_back(scaled(Mat::of(f, 2, 2, {a, 0, 0, b}), wi));
            code.blocks_.push_back(scaled(Mat::of(f, 2, 2, {b, 0, a, a}), wi));
            code.blocks_.push_back(scaled(Mat::of(f, 2, 2, {b, b, 0, a}), wi));
        }
        code.assert_mds();
        return code;
    }

    // (n=3m, k=3m-2) family: three block templates (upper triangular, lower
    // triangular, diagonal) parameterized by distinct lambdas whose pairwise
    // differences avoid +-1. Lambdas may be supplied or auto-selected.
    static Code c2(unsigned m, const Field& field, std::optional<std::vector<Elem>> lambdas = {}) {
        if (m < 1) throw ValidationError("BadParameters: m >= 1 required");
        Code code(Family::C2, field);
        code.m_ = m;
        code.n_ = 3 * m;
        code.k_ = code.n_ - 2;
        code.lambdas_ = resolve_lambdas(*code.field_, m, std::move(lambdas));
        const Field& f = *code.field_;
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < 3; ++j) code.blocks_.push_back(c2_block(f, code.lambdas_[i], j));
        code.assert_mds();
        return code;
    }

    // Generalized second family: l1 upper-triangular, l2 lower-triangular,
    // l3 diagonal blocks, indices reusing one lambda pool by offset.
    static Code c2_general(unsigned l1, unsigned l2, unsigned l3, const Field& field,
                           std::optional<std::vector<Elem>> lambdas = {}) {
        if (l1 < 1 || l2 < 1 || l3 < 1)
            throw ValidationError("BadPartition: all of l1,l2,l3 must be >= 1");
        const unsigned pool = std::max(l1, std::max(l2, l3));
        Code code(Family::C2Gen, field);
        code.l1_ = l1;
        code.l2_ = l2;
        code.l3_ = l3;
        code.m_ = pool;
        code.n_ = l1 + l2 + l3;
        code.k_ = code.n_ - 2;
        code.lambdas_ = resolve_lambdas(*code.field_, pool, std::move(lambdas));
        const Field& f = *code.field_;
        for (unsigned i = 0; i < l1; ++i) code.blocks_.push_back(c2_block(f, code.lambdas_[i], 0));
        for (unsigned i = 0; i < l2; ++i) code.blocks_.push_back(c2_block(f, code.lambdas_[i], 1));
        for (unsigned i = 0; i < l3; ++i) code.blocks_.push_back(c2_block(f, code.lambdas_[i], 2));
        code.assert_mds();
        return code;
    }

    // Unvalidated assembly from explicit blocks. Bypasses the MDS assertion
    // on purpose: verify_mds / the decode-roundtrip oracle are the checkers
    // that make sense on arbitrary block sets.
    static Code from_blocks(const Field& field, const std::vector<Mat>& blocks) {
        if (blocks.size() < 3) throw ValidationError("BadParameters: need n >= 3 blocks");
        Code code(Family::C2Gen, field);
        code.n_ = static_cast<unsigned>(blocks.size());
        code.k_ = code.n_ - 2;
        code.m_ = 0;
        const Field& f = *code.field_;
        for (const Mat& b : blocks) {
            if (b.rows() != 2 || b.cols() != 2) throw ValidationError("DimensionMismatch: blocks must be 2x2");
            if (b.field() != f) throw ValidationError("FieldMismatch");
            Mat copy(f, 2, 2);
            for (unsigned r = 0; r < 2; ++r)
                for (unsigned c = 0; c < 2; ++c) copy(r, c) = b(r, c);
            code.blocks_.push_back(std::move(copy));
        }
        return code;
    }

    Family family() const { return family_; }
    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    unsigned m() const { return m_; }
    unsigned l1() const { return l1_; }
    unsigned l2() const { return l2_; }
    unsigned l3() const { return l3_; }
    Elem a() const { return a_; }
    Elem b() const { return b_; }
    const std::vector<Elem>& lambdas() const { return lambdas_; }
    const Field& field() const { return *field_; }
    const Mat& block(unsigned i) const {
        if (i >= n_) throw ValidationError("BadNodeIndex: " + std::to_string(i));
        return blocks_[i];
    }

    // Node type: which block template node i uses (0..3 for c1, 0..2 for
    // the c2 families).
    unsigned node_type(unsigned i) const {
        if (i >= n_) throw ValidationError("BadNodeIndex: " + std::to_string(i));
        switch (family_) {
            case Family::C1: return i % 4;
            case Family::C2: return i % 3;
            case Family::C2Gen:
                if (i < l1_) return 0;
                if (i < l1_ + l2_) return 1;
                return 2;
        }
        throw ValidationError("BadFamily");
    }

private:
    Code(Family fam, const Field& f) : family_(fam), field_(std::make_shared<Field>(f)) {}

    static Mat c2_block(const Field& f, Elem lambda, unsigned type) {
        const Elem one = 1;
        const Elem lp1 = f.add(lambda, one);
        switch (type) {
            case 0: return Mat::of(f, 2, 2, {lambda, f.neg(one), 0, lp1});
            case 1: return Mat::of(f, 2, 2, {lambda, 0, one, lp1});
            case 2: return Mat::of(f, 2, 2, {lp1, 0, 0, lambda});
        }
        throw ValidationError("BadParameters: block type");
    }

    // The multiplicative identities that make the first family's repair
    // products collapse to rank 1: with a a nontrivial cube root of unity
    // in characteristic 2 they all hold at once.
    static void check_c1_identities(const Field& f, Elem a, Elem b) {
        bool ok = a != 1 && b == f.mul(a, a) && f.add(a, b) == 1 && f.mul(a, b) == f.add(a, b) &&
                  f.mul(a, b) == 1 && f.mul(b, b) != 1 && f.mul(a, a) == f.add(a, 1);
        if (!ok) throw std::logic_error("c1 coefficient identities violated");
    }

    static std::vector<Elem> resolve_lambdas(const Field& f, unsigned count,
                                             std::optional<std::vector<Elem>> given) {
        if (given) {
            if (given->size() != count)
                throw ValidationError("BadLambdas: expected " + std::to_string(count) + " values, got " +
                                      std::to_string(given->size()));
            for (Elem v : *given)
                if (v >= f.order()) throw ValidationError("BadLambdas: value " + std::to_string(v) +
                                                          " outside " + f.id());
            validate_lambda_spacing(f, *given);
            return *std::move(given);
        }
        return auto_lambdas(f, count);
    }

    static void validate_lambda_spacing(const Field& f, const std::vector<Elem>& ls) {
        const Elem one = 1;
        const Elem minus_one = f.neg(one);
        for (std::size_t i = 0; i < ls.size(); ++i)
            for (std::size_t j = i + 1; j < ls.size(); ++j) {
                Elem d = f.sub(ls[i], ls[j]);
                if (d == 0)
                    throw ValidationError("BadLambdas: duplicate value " + std::to_string(ls[i]));
                if (d == one || d == minus_one)
                    throw ValidationError("BadLambdas: lambda[" + std::to_string(i) + "]-lambda[" +
                                          std::to_string(j) + "] = +-1");
            }
    }

    // Deterministic ascending scan. The field-size gate matches the family's
    // sufficiency bound (q >= 2*pool in characteristic 2, q >= 3*pool
    // otherwise); under it the scan always finds enough values. Explicit
    // lambdas may go below these bounds when they validate.
    static std::vector<Elem> auto_lambdas(const Field& f, unsigned count) {
        const unsigned q = f.order();
        const bool even_char = f.characteristic() == 2;
        const unsigned needed = even_char ? 2 * count : 3 * count;
        if (q < needed)
            throw ValidationError("FieldTooSmall: auto lambda selection for " + std::to_string(count) +
                                  " values needs q >= " + std::to_string(needed) + ", got q=" +
                                  std::to_string(q));
        std::vector<Elem> out;
        const Elem one = 1;
        const Elem minus_one = f.neg(one);
        for (unsigned cand = 0; cand < q && out.size() < count; ++cand) {
            Elem c = static_cast<Elem>(cand);
            bool ok = true;
            for (Elem chosen : out) {
                Elem d = f.sub(c, chosen);
                if (d == 0 || d == one || d == minus_one) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back(c);
        }
        if (out.size() < count) throw std::logic_error("lambda scan failed below sufficiency bound");
        return out;
    }

    void assert_mds() const {
        MdsReport r = verify();
        if (!r.ok) {
            std::string msg = "MdsViolation: singular block difference at pairs";
            for (auto [i, j] : r.failing) msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
            throw ValidationError(msg);
        }
    }

    MdsReport verify() const {
        MdsReport r;
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned j = i + 1; j < n_; ++j)
                if (det2(blocks_[i] - blocks_[j]) == 0) {
                    r.ok = false;
                    r.failing.emplace_back(i, j);
                }
        return r;
    }

    friend MdsReport verify_mds(const Code&);

    Family family_;
    std::shared_ptr<const Field> field_;
    unsigned n_ = 0, k_ = 0, m_ = 0;
    unsigned l1_ = 0, l2_ = 0, l3_ = 0;
    Elem a_ = 0, b_ = 0;
    std::vector<Elem> lambdas_;
    std::vector<Mat> blocks_;
};

// True iff every pairwise block difference A_i - A_j is nonsingular, the
// criterion for any-2-erasure decodability.
inline MdsReport verify_mds(const Code& code) { return code.verify(); }

inline Column column(const Codeword& cw, unsigned i) { return {cw(0, i), cw(1, i)}; }

// Both parity sums, as a length-4 vector (first parity row stacked over the
// block row).
inline std::array<Elem, 4> parity_syndrome(const Code& code, const Codeword& cw) {
    const Field& f = code.field();
    std::array<Elem, 4> s{0, 0, 0, 0};
    for (unsigned i = 0; i < code.n(); ++i) {
        const Mat& a = code.block(i);
        s[0] = f.add(s[0], cw(0, i));
        s[1] = f.add(s[1], cw(1, i));
        s[2] = f.add(s[2], f.add(f.mul(a(0, 0), cw(0, i)), f.mul(a(0, 1), cw(1, i))));
        s[3] = f.add(s[3], f.add(f.mul(a(1, 0), cw(0, i)), f.mul(a(1, 1), cw(1, i))));
    }
    return s;
}

inline bool parity_ok(const Code& code, const Codeword& cw) {
    auto s = parity_syndrome(code, cw);
    return s[0] == 0 && s[1] == 0 && s[2] == 0 && s[3] == 0;
}

// Stacks [I ; A_{i1}], [I ; A_{i2}] side by side into the 4x4 system whose
// unknowns are the two missing columns, with right-hand side built from the
// partial parity sums. Nonsingular whenever A_{i1} - A_{i2} is.
namespace detail {
inline Mat pair_system(const Code& code, unsigned i1, unsigned i2) {
    const Field& f = code.field();
    Mat s(f, 4, 4);
    s(0, 0) = 1;
    s(0, 2) = 1;
    s(1, 1) = 1;
    s(1, 3) = 1;
    const Mat& a1 = code.block(i1);
    const Mat& a2 = code.block(i2);
    for (unsigned r = 0; r < 2; ++r)
        for (unsigned c = 0; c < 2; ++c) {
            s(2 + r, c) = a1(r, c);
            s(2 + r, 2 + c) = a2(r, c);
        }
    return s;
}
}  // namespace detail

// Systematic encode: data occupies nodes 0..k-1, the two parity columns on
// nodes n-2 and n-1 are solved from the parity equations.
inline Codeword encode_systematic(const Code& code, const Mat& data) {
    if (data.rows() != 2 || data.cols() != code.k())
        throw ValidationError("DimensionMismatch: data must be 2x" + std::to_string(code.k()));
    if (data.field() != code.field()) throw ValidationError("FieldMismatch");
    const Field& f = code.field();
    const unsigned n = code.n(), k = code.k();

    Codeword cw(f, 2, n);
    std::array<Elem, 4> partial{0, 0, 0, 0};
    for (unsigned j = 0; j < k; ++j) {
        cw(0, j) = data(0, j);
        cw(1, j) = data(1, j);
        const Mat& a = code.block(j);
        partial[0] = f.add(partial[0], data(0, j));
        partial[1] = f.add(partial[1], data(1, j));
        partial[2] = f.add(partial[2], f.add(f.mul(a(0, 0), data(0, j)), f.mul(a(0, 1), data(1, j))));
        partial[3] = f.add(partial[3], f.add(f.mul(a(1, 0), data(0, j)), f.mul(a(1, 1), data(1, j))));
    }
    Mat rhs(f, 4, 1);
    for (unsigned r = 0; r < 4; ++r) rhs(r, 0) = f.neg(partial[r]);
    Mat x = solve(detail::pair_system(code, n - 2, n - 1), rhs);
    cw(0, n - 2) = x(0, 0);
    cw(1, n - 2) = x(1, 0);
    cw(0, n - 1) = x(2, 0);
    cw(1, n - 1) = x(3, 0);
    return cw;
}

// Recovers the full codeword from all nodes minus at most two erased ones.
// present[i] == nullopt marks node i erased. With zero or one erasure the
// leftover parity redundancy doubles as an integrity check.
inline Codeword decode_erasures(const Code& code, const std::vector<std::optional<Column>>& present) {
    const Field& f = code.field();
    const unsigned n = code.n();
    if (present.size() != n) throw ValidationError("DimensionMismatch: need one entry per node");
    std::vector<unsigned> missing;
    for (unsigned i = 0; i < n; ++i)
        if (!present[i]) missing.push_back(i);
    if (missing.size() > 2)
        throw ValidationError("TooManyErasures: " + std::to_string(missing.size()) + " nodes missing");

    Codeword cw(f, 2, n);
    for (unsigned i = 0; i < n; ++i)
        if (present[i]) {
            cw(0, i) = (*present[i])[0];
            cw(1, i) = (*present[i])[1];
        }

    if (missing.empty()) {
        if (!parity_ok(code, cw)) throw IntegrityError("InconsistentSymbols: parity check failed");
        return cw;
    }

    if (missing.size() == 1) {
        // First parity row alone pins the missing column.
        unsigned i = missing[0];
        Elem s0 = 0, s1 = 0;
        for (unsigned j = 0; j < n; ++j) {
            if (j == i) continue;
            s0 = f.add(s0, cw(0, j));
            s1 = f.add(s1, cw(1, j));
        }
        cw(0, i) = f.neg(s0);
        cw(1, i) = f.neg(s1);
        if (!parity_ok(code, cw))
            throw IntegrityError("InconsistentSymbols: block parity row rejected the reconstruction");
        return cw;
    }

    unsigned i1 = missing[0], i2 = missing[1];
    std::array<Elem, 4> partial{0, 0, 0, 0};
    for (unsigned j = 0; j < n; ++j) {
        if (j == i1 || j == i2) continue;
        const Mat& a = code.block(j);
        partial[0] = f.add(partial[0], cw(0, j));
        partial[1] = f.add(partial[1], cw(1, j));
        partial[2] = f.add(partial[2], f.add(f.mul(a(0, 0), cw(0, j)), f.mul(a(0, 1), cw(1, j))));
        partial[3] = f.add(partial[3], f.add(f.mul(a(1, 0), cw(0, j)), f.mul(a(1, 1), cw(1, j))));
    }
    Mat rhs(f, 4, 1);
    for (unsigned r = 0; r < 4; ++r) rhs(r, 0) = f.neg(partial[r]);
    Mat x = solve(detail::pair_system(code, i1, i2), rhs);
    cw(0, i1) = x(0, 0);
    cw(1, i1) = x(1, 0);
    cw(0, i2) = x(2, 0);
    cw(1, i2) = x(3, 0);
    return cw;
}

// --- config file format ------------------------------------------------
//
// Line-oriented key=value. Keys in fixed order: family, field, m (c1/c2)
// or l1,l2,l3 (c2gen), lambdas (c2 families, resolved values). Round-trips
// byte-identically through parse -> serialize.

inline std::string to_config(const Code& code) {
    std::ostringstream out;
    out << "family=" << family_name(code.family()) << "\n";
    out << "field=" << code.field().id() << "\n";
    if (code.family() == Family::C2Gen)
        out << "l1=" << code.l1() << "\n"
            << "l2=" << code.l2() << "\n"
            << "l3=" << code.l3() << "\n";
    else
        out << "m=" << code.m() << "\n";
    if (code.family() != Family::C1) {
        out << "lambdas=";
        for (std::size_t i = 0; i < code.lambdas().size(); ++i) {
            if (i) out << ",";
            out << code.lambdas()[i];
        }
        out << "\n";
    }
    return out.str();
}

namespace detail {
inline unsigned config_uint(const std::string& value, const std::string& key) {
    if (value.empty()) throw ValidationError("BadConfig: empty value for " + key);
    unsigned v = 0;
    for (char c : value) {
        if (c < '0' || c > '9') throw ValidationError("BadConfig: non-numeric value for " + key);
        v = v * 10 + unsigned(c - '0');
        if (v > (1u << 20)) throw ValidationError("BadConfig: value out of range for " + key);
    }
    return v;
}
}  // namespace detail

inline Code from_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError("BadConfig: missing '=' in line '" + line + "'");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ValidationError("BadConfig: missing key '" + key + "'");
        return it->second;
    };
    Family fam = family_parse(need("family"));
    Field field = Field::parse(need("field"));
    std::optional<std::vector<Elem>> lambdas;
    if (auto it = kv.find("lambdas"); it != kv.end()) {
        std::vector<Elem> ls;
        std::istringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ','))
            ls.push_back(static_cast<Elem>(detail::config_uint(tok, "lambdas")));
        lambdas = std::move(ls);
    }
    switch (fam) {
        case Family::C1:
            return Code::c1(detail::config_uint(need("m"), "m"), field);
        case Family::C2:
            return Code::c2(detail::config_uint(need("m"), "m"), field, std::move(lambdas));
        case Family::C2Gen:
            return Code::c2_general(detail::config_uint(need("l1"), "l1"),
                                    detail::config_uint(need("l2"), "l2"),
                                    detail::config_uint(need("l3"), "l3"), field, std::move(lambdas));
    }
    throw ValidationError("BadFamily");
}

}  // namespace drfmds
