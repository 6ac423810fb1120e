#pragma once

// Closed-form repair metrics and lower bounds for (n = k+2, k) array codes
// with sub-packetization 2: the cut-set bandwidth bound, the
// degraded-read-friendly rebuilding-access bound (partition minimizations
// Delta_3 and Delta_4), the non-DRF bounds, the per-family average
// formulas, and the partition optimizer for the generalized second family.
// Every value is an exact rational; floating point appears only in output
// formatting.

#include <array>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "drfmds/code.hpp"
#include "drfmds/errors.hpp"
#include "drfmds/rational.hpp"
#include "drfmds/repair.hpp"

namespace drfmds {

// Minimum download to rebuild one node from d helpers, normalized to
// symbols: k when N = 1, dN/(d-k+1) otherwise.
inline Rational cutset_bound(unsigned n, unsigned k, unsigned d, unsigned N) {
    if (N < 1 || k > d || d >= n) throw ValidationError("BadParameters: need k <= d < n, N >= 1");
    if (N == 1) return Rational(k);
    return Rational(std::int64_t(d) * N, std::int64_t(d) - k + 1);
}

struct DrfAccessBound {
    std::int64_t delta3 = 0;
    std::array<unsigned, 3> argmin3{0, 0, 0};
    std::int64_t delta4 = 0;
    std::array<unsigned, 4> argmin4{0, 0, 0, 0};
    Rational bound_min{0};     // min{Delta_3, Delta_4} / (2nk)
    Rational bound_delta3{0};  // Delta_3 / (2nk)
};

// Brute-force minimization of the two printed partition expressions. The
// Delta_4 expression is evaluated verbatim even though it goes negative
// (and therefore drags min{Delta_3, Delta_4} below the Delta_3-only value);
// callers get both so nothing is silently chosen.
inline DrfAccessBound drf_access_bound(unsigned n, unsigned k, bool allow_empty_parts = false) {
    if (n < 4 || k != n - 2) throw ValidationError("BadParameters: need n >= 4 and k = n-2");
    const unsigned lo = allow_empty_parts ? 0 : 1;
    DrfAccessBound out;

    std::int64_t best3 = std::numeric_limits<std::int64_t>::max();
    for (unsigned a = lo; a <= n; ++a)
        for (unsigned b = std::max(a, lo); a + b <= n; ++b) {
            if (n < a + b + lo) continue;
            const unsigned c = n - a - b;
            // l1 <= l2 is the printed constraint; l3 free
            const std::int64_t v = 2ll * n * (n - 1) - std::int64_t(n) * n +
                                   std::int64_t(a) * a + std::int64_t(b) * b + std::int64_t(c) * c +
                                   std::int64_t(a) * (std::int64_t(c) - 1);
            if (v < best3) {
                best3 = v;
                out.argmin3 = {a, b, c};
            }
        }
    out.delta3 = best3;

    std::int64_t best4 = std::numeric_limits<std::int64_t>::max();
    for (unsigned a = lo; a <= n; ++a)
        for (unsigned b = std::max(a, lo); a + b <= n; ++b)
            for (unsigned c = lo; a + b + c <= n; ++c) {
                const unsigned d = n - a - b - c;
                if (d < std::max(c, lo)) continue;
                const std::int64_t v = std::int64_t(a) * (b + 1) -
                                       std::int64_t(b) * (std::int64_t(n) - b) -
                                       std::int64_t(c) * (d + 1) -
                                       std::int64_t(d) * (std::int64_t(n) - d);
                if (v < best4) {
                    best4 = v;
                    out.argmin4 = {a, b, c, d};
                }
            }
    out.delta4 = best4;

    const std::int64_t den = 2ll * n * k;
    out.bound_min = Rational(std::min(best3, best4), den);
    out.bound_delta3 = Rational(best3, den);
    return out;
}

// Bandwidth and access lower bounds without the degraded-read-friendly
// restriction: 5/8 and (4k+1)/(6k).
inline std::pair<Rational, Rational> nondrf_bounds(unsigned k) {
    if (k < 2) throw ValidationError("BadParameters: k >= 2");
    return {Rational(5, 8), Rational(4ll * k + 1, 6ll * k)};
}

struct FamilyMetrics {
    Rational bandwidth{0};  // average normalized repair bandwidth
    Rational access{0};     // average normalized rebuilding access
};

// Closed-form averages per family and strategy. Strategy only matters for
// the second family.
inline FamilyMetrics family_metrics(Family family, unsigned n, RepairStrategy strategy) {
    const std::int64_t sn = n;
    switch (family) {
        case Family::C1:
            if (n < 4 || n % 4 != 0)
                throw ValidationError("BadLength: c1 needs n = 4m, got n=" + std::to_string(n));
            return {Rational(5 * sn - 8, 8 * sn - 16), Rational(13 * sn - 16, 16 * sn - 32)};
        case Family::C2:
        case Family::C2Gen:
            if (n < 3 || n % 3 != 0)
                throw ValidationError("BadLength: c2 needs n = 3m, got n=" + std::to_string(n));
            if (strategy == RepairStrategy::Bandwidth)
                return {Rational(2 * sn - 3, 3 * sn - 6), Rational(7 * sn - 9, 9 * sn - 18)};
            return {Rational(13 * sn - 18, 18 * sn - 36), Rational(13 * sn - 18, 18 * sn - 36)};
    }
    throw ValidationError("BadFamily");
}

// Average normalized rebuilding access of the generalized second family
// under the access strategy, as a function of the partition.
inline Rational c2gen_access_metric(unsigned l1, unsigned l2, unsigned l3) {
    const std::int64_t n = std::int64_t(l1) + l2 + l3;
    const std::int64_t k = n - 2;
    if (k < 1) throw ValidationError("BadParameters: n >= 3");
    const std::int64_t num = n * n - 2 * n + std::int64_t(l1) * l1 + std::int64_t(l2) * l2 +
                             std::int64_t(l3) * l3 + std::int64_t(l2) * l3;
    return Rational(num, 2 * n * k);
}

struct PartitionOpt {
    std::array<unsigned, 3> parts{0, 0, 0};
    Rational value{0};
};

// Minimizes the generalized family's access average over partitions
// l1+l2+l3 = n with l3 <= l1, lexicographically smallest argmin on ties.
inline PartitionOpt remark_partition_opt(unsigned n, unsigned k, bool allow_empty_parts = false) {
    if (n < 3 || k != n - 2) throw ValidationError("BadParameters: need n >= 3 and k = n-2");
    const unsigned lo = allow_empty_parts ? 0 : 1;
    PartitionOpt out;
    bool first = true;
    for (unsigned a = lo; a <= n; ++a)
        for (unsigned b = lo; a + b <= n; ++b) {
            if (n < a + b + lo) continue;
            const unsigned c = n - a - b;
            if (c > a) continue;  // constraint l3 <= l1
            Rational v = c2gen_access_metric(a, b, c);
            if (first || v < out.value) {
                first = false;
                out.value = v;
                out.parts = {a, b, c};
            }
        }
    return out;
}

// ---- report -------------------------------------------------------------

struct BoundsReport {
    unsigned n = 0, k = 0, d = 0;
    Rational cutset{0};
    DrfAccessBound drf;
    Rational nondrf_bandwidth{0};
    Rational nondrf_access{0};
    std::optional<FamilyMetrics> c1;         // when 4 | n
    std::optional<FamilyMetrics> c2_bw;      // when 3 | n
    std::optional<FamilyMetrics> c2_access;  // when 3 | n
    std::optional<PartitionOpt> partition_opt;
};

inline BoundsReport bounds_report(unsigned n, bool allow_empty_parts = false) {
    if (n < 4) throw ValidationError("BadParameters: n >= 4");
    BoundsReport rep;
    rep.n = n;
    rep.k = n - 2;
    rep.d = n - 1;
    rep.cutset = cutset_bound(n, rep.k, rep.d, 2);
    rep.drf = drf_access_bound(n, rep.k, allow_empty_parts);
    auto [bw, acc] = nondrf_bounds(rep.k);
    rep.nondrf_bandwidth = bw;
    rep.nondrf_access = acc;
    if (n % 4 == 0) rep.c1 = family_metrics(Family::C1, n, RepairStrategy::Bandwidth);
    if (n % 3 == 0) {
        rep.c2_bw = family_metrics(Family::C2, n, RepairStrategy::Bandwidth);
        rep.c2_access = family_metrics(Family::C2, n, RepairStrategy::Access);
    }
    rep.partition_opt = remark_partition_opt(n, rep.k, allow_empty_parts);
    return rep;
}

namespace detail {
inline std::string fmt_rat(const Rational& r) {
    std::ostringstream os;
    os << to_string(r) << " (" << std::fixed << std::setprecision(6) << to_double(r) << ")";
    return os.str();
}
}  // namespace detail

inline std::string render_text(const BoundsReport& r) {
    std::ostringstream os;
    auto line = [&](const std::string& name, const std::string& value) {
        os << std::left << std::setw(34) << name << value << "\n";
    };
    os << "bounds for n=" << r.n << " k=" << r.k << " d=" << r.d << " N=2\n";
    line("cutset bandwidth bound", detail::fmt_rat(r.cutset));
    line("drf access bound (Delta3)", detail::fmt_rat(r.drf.bound_delta3));
    os << std::left << std::setw(34) << "  Delta3, argmin"
       << r.drf.delta3 << " at (" << r.drf.argmin3[0] << "," << r.drf.argmin3[1] << ","
       << r.drf.argmin3[2] << ")\n";
    line("drf access bound (min{D3,D4})", detail::fmt_rat(r.drf.bound_min));
    os << std::left << std::setw(34) << "  Delta4 (verbatim), argmin"
       << r.drf.delta4 << " at (" << r.drf.argmin4[0] << "," << r.drf.argmin4[1] << ","
       << r.drf.argmin4[2] << "," << r.drf.argmin4[3] << ")";
    if (r.drf.delta4 < r.drf.delta3)
        os << "  [negative form, dominated by Delta3; reported unmodified]";
    os << "\n";
    line("non-drf bandwidth bound", detail::fmt_rat(r.nondrf_bandwidth));
    line("non-drf access bound", detail::fmt_rat(r.nondrf_access));
    if (r.c1) {
        line("c1 bandwidth", detail::fmt_rat(r.c1->bandwidth));
        line("c1 access", detail::fmt_rat(r.c1->access));
    }
    if (r.c2_bw) {
        line("c2 bandwidth strategy: gamma", detail::fmt_rat(r.c2_bw->bandwidth));
        line("c2 bandwidth strategy: Gamma", detail::fmt_rat(r.c2_bw->access));
        line("c2 access strategy: gamma=Gamma", detail::fmt_rat(r.c2_access->bandwidth));
    }
    if (r.partition_opt) {
        os << std::left << std::setw(34) << "c2gen best partition"
           << "(" << r.partition_opt->parts[0] << "," << r.partition_opt->parts[1] << ","
           << r.partition_opt->parts[2] << ") -> " << detail::fmt_rat(r.partition_opt->value) << "\n";
    }
    return os.str();
}

inline std::string render_machine(const BoundsReport& r) {
    std::ostringstream os;
    auto line = [&](const std::string& name, const Rational& v) {
        os << name << "=" << v.numerator() << "/" << v.denominator() << "\n";
    };
    os << "n=" << r.n << "\nk=" << r.k << "\nd=" << r.d << "\n";
    line("cutset", r.cutset);
    os << "delta3=" << r.drf.delta3 << "\n";
    os << "delta3_argmin=" << r.drf.argmin3[0] << "," << r.drf.argmin3[1] << "," << r.drf.argmin3[2]
       << "\n";
    os << "delta4=" << r.drf.delta4 << "\n";
    os << "delta4_argmin=" << r.drf.argmin4[0] << "," << r.drf.argmin4[1] << "," << r.drf.argmin4[2]
       << "," << r.drf.argmin4[3] << "\n";
    line("drf_access_bound_delta3", r.drf.bound_delta3);
    line("drf_access_bound_min", r.drf.bound_min);
    line("nondrf_bandwidth_bound", r.nondrf_bandwidth);
    line("nondrf_access_bound", r.nondrf_access);
    if (r.c1) {
        line("c1_bandwidth", r.c1->bandwidth);
        line("c1_access", r.c1->access);
    }
    if (r.c2_bw) {
        line("c2_bw_bandwidth", r.c2_bw->bandwidth);
        line("c2_bw_access", r.c2_bw->access);
        line("c2_access_both", r.c2_access->bandwidth);
    }
    if (r.partition_opt) {
        os << "c2gen_opt_partition=" << r.partition_opt->parts[0] << "," << r.partition_opt->parts[1]
           << "," << r.partition_opt->parts[2] << "\n";
        line("c2gen_opt_value", r.partition_opt->value);
    }
    return os.str();
}

}  // namespace drfmds
