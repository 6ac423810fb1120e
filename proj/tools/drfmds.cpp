// drfmds: build and inspect (k+2, k) MDS array codes with sub-packetization
// 2, stripe files into shards, decode with up to two lost shards, repair a
// single shard with exact byte accounting, serve degraded reads, and print
// the bound/comparison reports.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "drfmds/bounds.hpp"
#include "drfmds/code.hpp"
#include "drfmds/errors.hpp"
#include "drfmds/gf.hpp"
#include "drfmds/oracle.hpp"
#include "drfmds/repair.hpp"
#include "drfmds/shard.hpp"

namespace fs = std::filesystem;
using namespace drfmds;

namespace {

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed on " + path.string());
    return bytes;
}

// write-temp-then-rename so partially written files never carry a final name
void write_file_atomic(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
        if (!out) throw IoError("write failed on " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

Code load_code(const fs::path& cfg) {
    std::ifstream in(cfg);
    if (!in) throw IoError("cannot open code config " + cfg.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_config(text);
}

fs::path shard_path(const fs::path& dir, unsigned node) {
    char name[32];
    std::snprintf(name, sizeof(name), "node_%02u.shard", node);
    return dir / name;
}

struct ShardData {
    ShardHeader header;
    std::vector<Elem> symbols;  // 2 per stripe: row 0 then row 1
};

ShardData read_shard(const fs::path& path, const Field& field) {
    std::vector<std::uint8_t> bytes = read_file(path);
    if (bytes.size() < kShardHeaderSize)
        throw IntegrityError("TruncatedShard: " + path.string() + " shorter than header");
    std::array<std::uint8_t, kShardHeaderSize> raw;
    std::copy(bytes.begin(), bytes.begin() + kShardHeaderSize, raw.begin());
    ShardData s{unpack(raw), {}};
    const unsigned width = symbol_bytes(field);
    const std::size_t expected = std::size_t(s.header.stripes) * 2 * width;
    if (bytes.size() - kShardHeaderSize != expected)
        throw IntegrityError("TruncatedShard: " + path.string() + " payload size mismatch");
    std::vector<std::uint8_t> payload(bytes.begin() + kShardHeaderSize, bytes.end());
    s.symbols = bytes_to_symbols(field, payload);
    return s;
}

void write_shard(const fs::path& path, const ShardHeader& header, const std::vector<Elem>& symbols,
                 const Field& field) {
    auto raw = pack(header);
    std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
    auto payload = symbols_to_bytes(field, symbols);
    bytes.insert(bytes.end(), payload.begin(), payload.end());
    write_file_atomic(path, bytes);
}

std::optional<std::vector<Elem>> parse_lambda_list(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<Elem> out;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ValidationError("BadLambdas: empty entry in list");
        unsigned v = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') throw ValidationError("BadLambdas: non-numeric '" + tok + "'");
            v = v * 10 + unsigned(c - '0');
        }
        if (v >= (1u << 16)) throw ValidationError("BadLambdas: value out of range");
        out.push_back(Elem(v));
    }
    return out;
}

// ---- subcommand bodies --------------------------------------------------

struct NewArgs {
    std::string family;
    unsigned m = 0, l1 = 0, l2 = 0, l3 = 0;
    std::string field;
    std::string lambdas;
    std::string out;
};

int cmd_code_new(const NewArgs& a) {
    std::string field_id = a.field;
    if (field_id.empty()) field_id = "gf2^8";
    Field field = Field::parse(field_id);
    auto lambdas = parse_lambda_list(a.lambdas);

    std::optional<Code> code;
    Family fam = family_parse(a.family);
    if (fam == Family::C1) {
        if (a.m == 0) throw ValidationError("BadParameters: c1 requires --m");
        if (lambdas) throw ValidationError("BadParameters: c1 takes no lambdas");
        code = Code::c1(a.m, field);
    } else if (fam == Family::C2) {
        if (a.m == 0) throw ValidationError("BadParameters: c2 requires --m");
        code = Code::c2(a.m, field, std::move(lambdas));
    } else {
        if (a.l1 == 0 && a.l2 == 0 && a.l3 == 0)
            throw ValidationError("BadParameters: c2gen requires --l1/--l2/--l3");
        code = Code::c2_general(a.l1, a.l2, a.l3, field, std::move(lambdas));
    }

    std::string text = to_config(*code);
    std::vector<std::uint8_t> bytes(text.begin(), text.end());
    write_file_atomic(a.out, bytes);
    std::cout << "wrote " << a.out << " (family=" << family_name(code->family())
              << " n=" << code->n() << " k=" << code->k() << " field=" << code->field().id()
              << ")\n";
    return 0;
}

int cmd_encode(const std::string& cfg, const std::string& input, const std::string& out_dir) {
    Code code = load_code(cfg);
    const Field& field = code.field();
    const unsigned width = symbol_bytes(field);
    std::vector<std::uint8_t> bytes = read_file(input);
    const std::uint64_t original_len = bytes.size();
    while (bytes.size() % width != 0) bytes.push_back(0);

    std::vector<Elem> symbols = bytes_to_symbols(field, bytes);
    StripeLayout layout{code.k()};
    const std::uint64_t stripes = layout.stripes_for(symbols.size());
    symbols.resize(std::size_t(stripes) * layout.symbols_per_stripe(), 0);

    fs::create_directories(out_dir);
    std::vector<std::vector<Elem>> node_symbols(code.n());
    for (auto& v : node_symbols) v.reserve(2 * stripes);

    Mat data(field, 2, code.k());
    for (std::uint64_t s = 0; s < stripes; ++s) {
        for (unsigned j = 0; j < code.k(); ++j) {
            data(0, j) = symbols[layout.position(s, j, 0)];
            data(1, j) = symbols[layout.position(s, j, 1)];
        }
        Codeword cw = encode_systematic(code, data);
        for (unsigned j = 0; j < code.n(); ++j) {
            node_symbols[j].push_back(cw(0, j));
            node_symbols[j].push_back(cw(1, j));
        }
    }
    for (unsigned j = 0; j < code.n(); ++j)
        write_shard(shard_path(out_dir, j), header_for(code, j, stripes, original_len),
                    node_symbols[j], field);
    std::cout << "encoded " << original_len << " bytes into " << code.n() << " shards ("
              << stripes << " stripes) under " << out_dir << "\n";
    return 0;
}

// gathers present shards, validates headers against the config and each
// other, returns per-node data plus the common header of some present shard
std::pair<std::vector<std::optional<ShardData>>, ShardHeader> load_shard_set(
    const Code& code, const fs::path& dir, unsigned max_missing) {
    std::vector<std::optional<ShardData>> shards(code.n());
    std::optional<ShardHeader> ref;
    unsigned missing = 0;
    for (unsigned j = 0; j < code.n(); ++j) {
        fs::path p = shard_path(dir, j);
        if (!fs::exists(p)) {
            ++missing;
            continue;
        }
        ShardData s = read_shard(p, code.field());
        if (s.header.node != j)
            throw IntegrityError("HeaderMismatch: " + p.string() + " claims node " +
                                 std::to_string(s.header.node));
        check_matches(s.header, code);
        if (ref && !ref->same_encoding(s.header))
            throw IntegrityError("HeaderMismatch: shards disagree about the encoding");
        if (!ref) ref = s.header;
        shards[j] = std::move(s);
    }
    if (!ref) throw IoError("no shards found in " + dir.string());
    if (missing > max_missing)
        throw IoError("missing " + std::to_string(missing) + " shards in " + dir.string() +
                      ", tolerance is " + std::to_string(max_missing));
    return {std::move(shards), *ref};
}

int cmd_decode(const std::string& cfg, const std::string& dir, const std::string& output) {
    Code code = load_code(cfg);
    const Field& f = code.field();
    auto [shards, ref] = load_shard_set(code, dir, 2);
    const std::uint64_t stripes = ref.stripes;

    std::vector<unsigned> missing;
    for (unsigned j = 0; j < code.n(); ++j)
        if (!shards[j]) missing.push_back(j);

    StripeLayout layout{code.k()};
    std::vector<Elem> data_symbols(std::size_t(stripes) * layout.symbols_per_stripe(), 0);

    // two erasures: factor the 4x4 pair system once, reuse per stripe
    std::optional<Mat> pair_inv;
    if (missing.size() == 2)
        pair_inv = inverse(detail::pair_system(code, missing[0], missing[1]));

    for (std::uint64_t s = 0; s < stripes; ++s) {
        Codeword cw(f, 2, code.n());
        for (unsigned j = 0; j < code.n(); ++j)
            if (shards[j]) {
                cw(0, j) = shards[j]->symbols[2 * s];
                cw(1, j) = shards[j]->symbols[2 * s + 1];
            }
        if (missing.size() < 2) {
            std::vector<std::optional<Column>> present(code.n());
            for (unsigned j = 0; j < code.n(); ++j)
                if (shards[j]) present[j] = Column{cw(0, j), cw(1, j)};
            Codeword full = decode_erasures(code, present);  // includes parity verification
            cw = full;
        } else {
            std::array<Elem, 4> partial{0, 0, 0, 0};
            for (unsigned j = 0; j < code.n(); ++j) {
                if (!shards[j]) continue;
                const Mat& a = code.block(j);
                partial[0] = f.add(partial[0], cw(0, j));
                partial[1] = f.add(partial[1], cw(1, j));
                partial[2] = f.add(partial[2], f.add(f.mul(a(0, 0), cw(0, j)), f.mul(a(0, 1), cw(1, j))));
                partial[3] = f.add(partial[3], f.add(f.mul(a(1, 0), cw(0, j)), f.mul(a(1, 1), cw(1, j))));
            }
            std::array<Elem, 4> x{0, 0, 0, 0};
            for (unsigned r = 0; r < 4; ++r) {
                Elem acc = 0;
                for (unsigned c = 0; c < 4; ++c)
                    acc = f.add(acc, f.mul((*pair_inv)(r, c), f.neg(partial[c])));
                x[r] = acc;
            }
            cw(0, missing[0]) = x[0];
            cw(1, missing[0]) = x[1];
            cw(0, missing[1]) = x[2];
            cw(1, missing[1]) = x[3];
        }
        for (unsigned j = 0; j < code.k(); ++j) {
            data_symbols[layout.position(s, j, 0)] = cw(0, j);
            data_symbols[layout.position(s, j, 1)] = cw(1, j);
        }
    }

    std::vector<std::uint8_t> bytes = symbols_to_bytes(f, data_symbols);
    bytes.resize(ref.original_len);
    write_file_atomic(output, bytes);
    std::cout << "decoded " << ref.original_len << " bytes to " << output;
    if (!missing.empty()) {
        std::cout << " (missing shards:";
        for (unsigned j : missing) std::cout << " " << j;
        std::cout << ")";
    }
    std::cout << "\n";
    return 0;
}

int cmd_repair(const std::string& cfg, const std::string& dir, unsigned lost,
               const std::string& strategy_str, const std::string& out_override) {
    Code code = load_code(cfg);
    const Field& f = code.field();
    if (lost >= code.n()) throw ValidationError("BadNodeIndex: " + std::to_string(lost));
    RepairStrategy strategy = strategy_parse(strategy_str);

    // every helper must be present; the lost shard may or may not still exist
    std::vector<std::optional<ShardData>> shards(code.n());
    std::optional<ShardHeader> ref;
    for (unsigned j = 0; j < code.n(); ++j) {
        if (j == lost) continue;
        fs::path p = shard_path(dir, j);
        if (!fs::exists(p)) throw IoError("helper shard missing: " + p.string());
        ShardData s = read_shard(p, f);
        if (s.header.node != j)
            throw IntegrityError("HeaderMismatch: " + p.string() + " claims node " +
                                 std::to_string(s.header.node));
        check_matches(s.header, code);
        if (ref && !ref->same_encoding(s.header))
            throw IntegrityError("HeaderMismatch: shards disagree about the encoding");
        if (!ref) ref = s.header;
        shards[j] = std::move(s);
    }
    const std::uint64_t stripes = ref->stripes;

    RepairPlan plan = make_plan(code, lost, strategy);
    RepairReport per_stripe = measure(plan);

    std::vector<Elem> rebuilt;
    rebuilt.reserve(2 * stripes);
    std::uint64_t downloaded = 0, accessed = 0;
    for (std::uint64_t s = 0; s < stripes; ++s) {
        std::vector<TransferPayload> payloads;
        payloads.reserve(plan.helpers.size());
        for (const auto& h : plan.helpers) {
            const auto& sym = shards[h.node]->symbols;
            Column fj{sym[2 * s], sym[2 * s + 1]};
            payloads.push_back(helper_extract(plan, h.node, fj));
            downloaded += payloads.back().size();
            accessed += unsigned(h.col_nonzero[0]) + unsigned(h.col_nonzero[1]);
        }
        Column col = repair_node(code, plan, payloads).first;
        rebuilt.push_back(col[0]);
        rebuilt.push_back(col[1]);
    }

    if (downloaded != std::uint64_t(per_stripe.downloaded) * stripes)
        throw std::logic_error("download accounting mismatch");

    fs::path out = out_override.empty() ? shard_path(dir, lost) : fs::path(out_override);
    ShardHeader header = header_for(code, lost, stripes, ref->original_len);
    write_shard(out, header, rebuilt, f);

    const unsigned width = symbol_bytes(f);
    std::cout << "rebuilt node " << lost << " -> " << out.string() << "\n";
    std::cout << "downloaded_symbols=" << downloaded << "\n";
    std::cout << "accessed_symbols=" << accessed << "\n";
    std::cout << "downloaded_bytes=" << downloaded * width << "\n";
    std::cout << "per_stripe_gamma=" << per_stripe.downloaded << "\n";
    std::cout << "per_stripe_access=" << per_stripe.accessed << "\n";
    return 0;
}

int cmd_read(const std::string& cfg, const std::string& dir, unsigned node, unsigned row,
             std::uint64_t stripe) {
    Code code = load_code(cfg);
    if (node >= code.n()) throw ValidationError("BadNodeIndex: " + std::to_string(node));
    if (row > 1) throw ValidationError("BadParameters: --row must be 0 or 1");

    std::vector<std::optional<Elem>> symbols(code.n());
    for (unsigned j = 0; j < code.n(); ++j) {
        if (j == node) continue;
        fs::path p = shard_path(dir, j);
        if (!fs::exists(p)) throw IoError("shard missing for degraded read: " + p.string());
        ShardData s = read_shard(p, code.field());
        check_matches(s.header, code);
        if (stripe >= s.header.stripes)
            throw ValidationError("BadParameters: stripe " + std::to_string(stripe) +
                                  " out of range (have " + std::to_string(s.header.stripes) + ")");
        symbols[j] = s.symbols[2 * stripe + row];
    }
    Elem value = degraded_read(code, node, row, symbols);
    std::cout << "symbol=" << value << "\n";
    std::cout << "accessed_symbols=" << code.n() - 1 << "\n";
    return 0;
}

int cmd_verify(const std::string& cfg, const std::string& dir) {
    Code code = load_code(cfg);
    const Field& f = code.field();
    auto [shards, ref] = load_shard_set(code, dir, 0);
    for (std::uint64_t s = 0; s < ref.stripes; ++s) {
        Codeword cw(f, 2, code.n());
        for (unsigned j = 0; j < code.n(); ++j) {
            cw(0, j) = shards[j]->symbols[2 * s];
            cw(1, j) = shards[j]->symbols[2 * s + 1];
        }
        if (!parity_ok(code, cw))
            throw IntegrityError("InconsistentSymbols: parity violated at stripe " +
                                 std::to_string(s));
    }
    std::cout << "ok: " << code.n() << " shards, " << ref.stripes << " stripes, parity holds\n";
    return 0;
}

int cmd_bounds(unsigned n, bool allow_empty, bool machine_only) {
    BoundsReport rep = bounds_report(n, allow_empty);
    if (!machine_only) std::cout << render_text(rep) << "\n";
    std::cout << render_machine(rep);
    return 0;
}

int cmd_compare(unsigned nmax) {
    std::cout << std::left << std::setw(34) << "code" << std::setw(6) << "n" << std::setw(31)
              << "gamma_avg" << std::setw(31) << "Gamma_avg" << std::setw(22) << "field size"
              << "\n";
    auto rowv = [&](const std::string& name, const std::string& n, const std::string& g,
                    const std::string& G, const std::string& q) {
        std::cout << std::left << std::setw(34) << name << std::setw(6) << n << std::setw(31) << g
                  << std::setw(31) << G << std::setw(22) << q << "\n";
    };
    std::cout << "-- reference rows (quoted, not computed) --\n";
    rowv("product-matrix MSR code", "5", "2/3", "4/3", ">= 10");
    rowv("long MDS code", "6", "3/4", "23/24", ">= 4");
    rowv("GKW code", "5", "2/3", "7/6", ">= 4");
    rowv("GKWX code", "6", "5/8", "47/48", ">= 4");
    rowv("WHLBZZW code", "any", "> 0.72", "> 0.72", "sufficiently large");
    rowv("non-DRF code 1", "any", "(k+fl(n/4)+(n%4)cl(n/4)/n)/2k", "n/a", "> n+2");
    rowv("non-DRF code 2", "any", "n/a", "(k+fl(n/3)+(n%3)cl(n/3)/n)/2k", "> n");

    std::cout << "-- computed rows --\n";
    for (unsigned n = 4; n <= nmax; ++n) {
        const unsigned k = n - 2;
        std::string bw_bound = to_string(Rational(5, 8));
        std::string ac_bound = to_string(drf_access_bound(n, k).bound_delta3);
        if (n % 4 == 0) {
            FamilyMetrics m = family_metrics(Family::C1, n, RepairStrategy::Bandwidth);
            rowv("c1", std::to_string(n), to_string(m.bandwidth), to_string(m.access),
                 "2^{2t} >= 3n/4+1");
            rowv("  vs bounds", "", "bw bound " + bw_bound, "access bound " + ac_bound, "");
        }
        if (n % 3 == 0) {
            FamilyMetrics bw = family_metrics(Family::C2, n, RepairStrategy::Bandwidth);
            FamilyMetrics ac = family_metrics(Family::C2, n, RepairStrategy::Access);
            rowv("c2 (bandwidth strategy)", std::to_string(n), to_string(bw.bandwidth),
                 to_string(bw.access), "2n/3 (even q), n (odd)");
            rowv("c2 (access strategy)", std::to_string(n), to_string(ac.bandwidth),
                 to_string(ac.access), "2n/3 (even q), n (odd)");
            rowv("  vs bounds", "", "bw bound " + bw_bound, "access bound " + ac_bound, "");
        }
    }
    return 0;
}

int cmd_oracle(const std::string& cfg, int node) {
    Code code = load_code(cfg);
    auto show = [&](unsigned i) {
        SearchResult res = best_repair(code, i);
        RepairReport bw = measure(make_plan(code, i, RepairStrategy::Bandwidth));
        RepairReport ac = measure(make_plan(code, i, RepairStrategy::Access));
        std::cout << "node " << i << ": min_gamma=" << res.best_bandwidth
                  << " plan_gamma=" << bw.downloaded << " | min_Gamma=" << res.best_access
                  << " plan_Gamma(bw)=" << bw.accessed << " plan_Gamma(access)=" << ac.accessed
                  << " | rowspaces=" << res.spaces_total << " admissible=" << res.spaces_admissible
                  << "\n";
        if (res.best_bandwidth < bw.downloaded || res.best_access < ac.accessed)
            std::cout << "  note: exhaustive search beats the built-in plan on this node\n";
    };
    if (node >= 0)
        show(unsigned(node));
    else
        for (unsigned i = 0; i < code.n(); ++i) show(i);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(k+2, k) MDS array codes with sub-packetization 2: encode, decode, repair"};
    app.require_subcommand(1);

    // code new
    auto* code_cmd = app.add_subcommand("code", "code config management");
    code_cmd->require_subcommand(1);
    NewArgs new_args;
    auto* new_cmd = code_cmd->add_subcommand("new", "build and validate a code, write its config");
    new_cmd->add_option("--family", new_args.family, "c1 | c2 | c2gen")->required();
    new_cmd->add_option("--m", new_args.m, "group count (c1: n=4m, c2: n=3m)");
    new_cmd->add_option("--l1", new_args.l1, "c2gen type-0 block count");
    new_cmd->add_option("--l2", new_args.l2, "c2gen type-1 block count");
    new_cmd->add_option("--l3", new_args.l3, "c2gen type-2 block count");
    new_cmd->add_option("--field", new_args.field, "gf2^E or prime:P (default gf2^8)");
    new_cmd->add_option("--lambdas", new_args.lambdas, "comma-separated element values");
    new_cmd->add_option("-o,--out", new_args.out, "config output path")->required();

    // encode
    std::string enc_cfg, enc_in, enc_out;
    auto* enc = app.add_subcommand("encode", "stripe a file into n shards");
    enc->add_option("--code", enc_cfg, "code config")->required();
    enc->add_option("--in", enc_in, "input file")->required();
    enc->add_option("--out", enc_out, "output shard directory")->required();

    // decode
    std::string dec_cfg, dec_dir, dec_out;
    auto* dec = app.add_subcommand("decode", "recover the original file (up to 2 missing shards)");
    dec->add_option("--code", dec_cfg, "code config")->required();
    dec->add_option("--from", dec_dir, "shard directory")->required();
    dec->add_option("--out", dec_out, "output file")->required();

    // repair
    std::string rep_cfg, rep_dir, rep_strategy = "bw", rep_out;
    unsigned rep_lost = 0;
    auto* rep = app.add_subcommand("repair", "rebuild one lost shard from all others");
    rep->add_option("--code", rep_cfg, "code config")->required();
    rep->add_option("--from", rep_dir, "shard directory")->required();
    rep->add_option("--lost", rep_lost, "failed node index")->required();
    rep->add_option("--strategy", rep_strategy, "bw | access (default bw)");
    rep->add_option("-o,--out", rep_out, "override output shard path");

    // read
    std::string read_cfg, read_dir;
    unsigned read_node = 0, read_row = 0;
    std::uint64_t read_stripe = 0;
    auto* rd = app.add_subcommand("read", "degraded read of one symbol");
    rd->add_option("--code", read_cfg, "code config")->required();
    rd->add_option("--from", read_dir, "shard directory")->required();
    rd->add_option("--node", read_node, "unavailable node")->required();
    rd->add_option("--row", read_row, "row 0 or 1")->required();
    rd->add_option("--stripe", read_stripe, "stripe index (default 0)");

    // verify
    std::string ver_cfg, ver_dir;
    auto* ver = app.add_subcommand("verify", "check parity of a full shard set");
    ver->add_option("--code", ver_cfg, "code config")->required();
    ver->add_option("--from", ver_dir, "shard directory")->required();

    // bounds
    unsigned bounds_n = 0;
    bool bounds_empty = false, bounds_machine = false;
    auto* bnd = app.add_subcommand("bounds", "bound and metric report for one n");
    bnd->add_option("--n", bounds_n, "code length")->required();
    bnd->add_flag("--allow-empty-parts", bounds_empty, "permit zero-size partition parts");
    bnd->add_flag("--machine", bounds_machine, "machine-readable lines only");

    // compare
    unsigned cmp_nmax = 0;
    auto* cmp = app.add_subcommand("compare", "comparison table across code lengths");
    cmp->add_option("--nmax", cmp_nmax, "largest code length")->required();

    // oracle
    std::string orc_cfg;
    int orc_node = -1;
    auto* orc = app.add_subcommand("oracle", "brute-force optimal repair search (q <= 16)");
    orc->add_option("--code", orc_cfg, "code config")->required();
    orc->add_option("--node", orc_node, "single node (default: all)");

    try {
        app.parse(argc, argv);
        if (new_cmd->parsed()) return cmd_code_new(new_args);
        if (enc->parsed()) return cmd_encode(enc_cfg, enc_in, enc_out);
        if (dec->parsed()) return cmd_decode(dec_cfg, dec_dir, dec_out);
        if (rep->parsed()) return cmd_repair(rep_cfg, rep_dir, rep_lost, rep_strategy, rep_out);
        if (rd->parsed()) return cmd_read(read_cfg, read_dir, read_node, read_row, read_stripe);
        if (ver->parsed()) return cmd_verify(ver_cfg, ver_dir);
        if (bnd->parsed()) return cmd_bounds(bounds_n, bounds_empty, bounds_machine);
        if (cmp->parsed()) return cmd_compare(cmp_nmax);
        if (orc->parsed()) return cmd_oracle(orc_cfg, orc_node);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
