#ifndef EXTBWT_COMMANDS_HPP
#define EXTBWT_COMMANDS_HPP

#include "extbwt/alphabet.hpp"
#include "extbwt/error.hpp"
#include "extbwt/ingest.hpp"
#include "extbwt/merge.hpp"
#include "extbwt/oracle.hpp"
#include "extbwt/partial_bwt.hpp"
#include "extbwt/stats_report.hpp"
#include "extbwt/workspace.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

namespace extbwt {

enum exit_code : int {
    exit_ok = 0,
    exit_input = 1,
    exit_io = 2,
    exit_mismatch = 3,
    exit_oracle_guard = 4,
};

struct RunConfig {
    fs::path input;
    InputFormat format = InputFormat::lines;
    std::string alphabet = "ACGT";
    fs::path workdir = "extbwt_work";
    std::optional<fs::path> out_bwt; // list base path, without extension
    std::optional<fs::path> out_lcp;
    bool text = false;
    unsigned int_width = 0; // 0 = automatic
    std::size_t buffer_bytes = std::size_t{1} << 20;
    bool keep_intermediates = false;
    bool reuse_partials = false;
    std::uint64_t max_oracle_size = 100000;
};

namespace detail {

/// Error raised by a named pipeline stage, keeping the exit code to use.
struct StageFailure {
    int code;
    std::string message;
};

template <typename F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const input_error& e) {
        throw StageFailure{exit_input, std::string(stage) + ": " + e.what()};
    } catch (const encoding_error& e) {
        throw StageFailure{exit_input, std::string(stage) + ": " + e.what()};
    } catch (const io_error& e) {
        throw StageFailure{exit_io, std::string(stage) + ": " + e.what()};
    } catch (const fs::filesystem_error& e) {
        throw StageFailure{exit_io, std::string(stage) + ": " + e.what()};
    }
}

inline void validate(const RunConfig& cfg) {
    if (cfg.int_width != 0 && !valid_width(cfg.int_width))
        throw input_error("--int-width must be 1, 4 or 8");
    if (cfg.buffer_bytes == 0) throw input_error("--buffer-bytes must be positive");
    std::error_code ec;
    if (!cfg.input.empty() && fs::exists(cfg.workdir, ec) && fs::equivalent(cfg.workdir, cfg.input, ec))
        throw input_error("workdir must differ from the input path");
    if (!cfg.input.empty() && fs::weakly_canonical(cfg.workdir, ec) == fs::weakly_canonical(cfg.input, ec))
        throw input_error("workdir must differ from the input path");
}

inline void check_widths(const Workspace& ws, std::uint64_t m, std::uint64_t k) {
    if (!ws.int_width) return;
    if (!fits_width(static_cast<std::int64_t>(m), ws.int_width, false) ||
        !fits_width(static_cast<std::int64_t>(k), ws.int_width, true))
        throw encoding_error("--int-width " + std::to_string(ws.int_width) + " cannot hold m = " +
                             std::to_string(m) + " and k = " + std::to_string(k));
}

inline ListMeta move_list(const ListMeta& meta, const fs::path& base) {
    if (base == meta.base) return meta;
    if (base.has_parent_path()) fs::create_directories(base.parent_path());
    ListMeta out = meta;
    out.base = base;
    fs::copy_file(meta.data_path(), out.data_path(), fs::copy_options::overwrite_existing);
    write_manifest(out);
    remove_list(meta);
    return out;
}

inline void write_bwt_text(const ListMeta& bwt, const Alphabet& alphabet, const fs::path& path,
                           const ListConfig& cfg) {
    std::ofstream out(path, std::ios::trunc);
    ListReader r(bwt, cfg);
    while (!r.done()) out << alphabet.char_of(static_cast<SymbolCode>(r.next()));
    out << "\n";
    if (!out) throw io_error("cannot write '" + path.string() + "'");
}

inline void write_lcp_text(const ListMeta& lcp, const fs::path& path, const ListConfig& cfg) {
    std::ofstream out(path, std::ios::trunc);
    ListReader r(lcp, cfg);
    while (!r.done()) out << r.next() << "\n";
    if (!out) throw io_error("cannot write '" + path.string() + "'");
}

inline std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input '" + path.string() + "'");
    return in;
}

} // namespace detail

inline fs::path stats_path(const fs::path& workdir) { return workdir / "stats.txt"; }

/// ingest -> partial BWTs -> merge, then outputs and stats.txt.
inline int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        detail::run_stage("config", [&] {
            detail::validate(cfg);
            fs::create_directories(cfg.workdir);
        });
        const Alphabet alphabet = detail::run_stage("config", [&] { return Alphabet(cfg.alphabet); });

        IoAccounting io;
        MemoryLedger memory;
        Workspace ws{cfg.workdir, ListConfig{cfg.buffer_bytes, &io}, &memory, cfg.int_width};

        ColumnSet columns = detail::run_stage("ingest", [&] {
            auto in = detail::open_input(cfg.input);
            auto cs = stream_columns(in, cfg.format, alphabet, ws);
            detail::check_widths(ws, cs.m, cs.k);
            return cs;
        });

        BuildResult result = detail::run_stage("bwt+lcp", [&] {
            return run_bwt_lcp(columns, alphabet.size(), ws, {cfg.keep_intermediates, {}});
        });

        detail::run_stage("output", [&] {
            if (!cfg.keep_intermediates)
                for (const auto& t : columns.T) remove_list(t);
            auto bwt = detail::move_list(result.bwt, cfg.out_bwt.value_or(cfg.workdir / "bwt"));
            auto lcp = detail::move_list(result.lcp, cfg.out_lcp.value_or(cfg.workdir / "lcp"));
            if (cfg.text) {
                detail::write_bwt_text(bwt, alphabet, fs::path(bwt.base.string() + ".txt"), {});
                detail::write_lcp_text(lcp, fs::path(lcp.base.string() + ".txt"), {});
            }
            write_stats_file(result.stats, stats_path(cfg.workdir));
        });
        print_stats_table(result.stats, out);
        return exit_ok;
    } catch (const detail::StageFailure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    }
}

namespace detail {

template <typename A, typename B>
std::optional<std::size_t> first_divergence(const A& a, const B& b) {
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (static_cast<std::int64_t>(a[i]) != static_cast<std::int64_t>(b[i])) return i;
    if (a.size() != b.size()) return n;
    return std::nullopt;
}

} // namespace detail

/// Runs the pipeline and the brute-force oracle and compares BWT, LCP and
/// the final encoding element by element.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        detail::run_stage("config", [&] {
            detail::validate(cfg);
            fs::create_directories(cfg.workdir);
        });
        const Alphabet alphabet = detail::run_stage("config", [&] { return Alphabet(cfg.alphabet); });

        // Size the input before materializing it for the oracle.
        auto [m, k] = detail::run_stage("ingest", [&] {
            auto in = detail::open_input(cfg.input);
            RecordReader reader(in, cfg.format);
            std::uint64_t count = 0, length = 0;
            while (auto r = reader.next()) {
                ++count;
                length = std::max<std::uint64_t>(length, r->text.size());
            }
            return std::pair{count, length};
        });
        if (m * (k + 1) > cfg.max_oracle_size) {
            err << "error: input has " << m * (k + 1) << " suffixes, above the oracle limit of "
                << cfg.max_oracle_size << "; raise it with --max-oracle-size\n";
            return exit_oracle_guard;
        }
        StringCollection collection = detail::run_stage("ingest", [&] {
            auto in = detail::open_input(cfg.input);
            return load_collection(in, cfg.format, alphabet);
        });

        IoAccounting io;
        MemoryLedger memory;
        Workspace ws{cfg.workdir, ListConfig{cfg.buffer_bytes, &io}, &memory, cfg.int_width};
        detail::run_stage("ingest", [&] { detail::check_widths(ws, collection.m, collection.k); });

        BuildResult result;
        try {
            result = detail::run_stage("bwt+lcp", [&] {
                if (cfg.reuse_partials) {
                    auto partials = open_partial_bwts(cfg.workdir, collection.m, collection.k);
                    return merge_partials(partials, alphabet.size(), ws);
                }
                auto columns = compute_columns(collection, ws);
                auto r = run_bwt_lcp(columns, alphabet.size(), ws, {cfg.keep_intermediates, {}});
                if (!cfg.keep_intermediates)
                    for (const auto& t : columns.T) remove_list(t);
                return r;
            });
        } catch (const malformed_encoding_error& e) {
            err << "mismatch: pipeline rejected its partial BWTs: " << e.what() << "\n";
            return exit_mismatch;
        }

        auto expected = oracle::bwt_lcp(collection);
        auto [bwt, lcp, enc] = detail::run_stage("compare", [&] {
            return std::tuple{read_all(result.bwt), read_all(result.lcp), read_all(result.encoding)};
        });
        struct Check {
            const char* name;
            std::optional<std::size_t> at;
        };
        const Check checks[] = {
            {"BWT", detail::first_divergence(bwt, expected.bwt)},
            {"LCP", detail::first_divergence(lcp, expected.lcp)},
            {"encoding", detail::first_divergence(enc, expected.encoding)},
        };
        for (const auto& c : checks) {
            if (c.at) {
                err << "mismatch: " << c.name << " diverges from the oracle at position " << *c.at << "\n";
                return exit_mismatch;
            }
        }
        out << "ok: BWT, LCP and encoding match the oracle (" << expected.bwt.size() << " suffixes, "
            << result.stats.passes << " passes)\n";
        return exit_ok;
    } catch (const detail::StageFailure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    }
}

inline int cmd_stats(const fs::path& workdir, std::ostream& out, std::ostream& err) {
    try {
        auto s = read_stats_file(stats_path(workdir));
        print_stats_table(s, out);
        return exit_ok;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

} // namespace extbwt

#endif
