#ifndef EXTBWT_PARTIAL_BWT_HPP
#define EXTBWT_PARTIAL_BWT_HPP

#include "extbwt/alphabet.hpp"
#include "extbwt/error.hpp"
#include "extbwt/ingest.hpp"
#include "extbwt/seq_list.hpp"
#include "extbwt/workspace.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace extbwt {

/// B_0..B_k: B_l lists the symbols preceding the l-suffixes in sorted
/// l-suffix order.
struct PartialBwtSet {
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::vector<ListMeta> B;
};

struct PartialBwtIteration {
    std::uint64_t level = 0;
    std::uint64_t projection_reads = 0; // elements of B_{l-1} and N_{l-1}
    std::uint64_t bucket_writes = 0;
    std::uint64_t relabel_reads = 0;    // elements of N_l
    std::uint64_t lookups = 0;          // random accesses into the resident T_l
    std::uint64_t bwt_writes = 0;
    IoAccounting io;
};

struct PartialBwtStats {
    std::vector<PartialBwtIteration> iterations;
    IoAccounting io;
};

struct PartialBwtOptions {
    /// Keep N_0..N_k on disk instead of deleting them once consumed.
    bool keep_intermediates = false;
};

inline std::string partial_bwt_name(std::uint64_t l) { return "B_" + std::to_string(l); }
inline std::string origin_name(std::uint64_t l) { return "N_" + std::to_string(l); }

/// Bucket scan: appends N_prev[i] to bucket P(B_prev[i]). Buckets are
/// returned in symbol order, each in scan order, so their concatenation is
/// a stable partition of N_prev by preceding symbol.
inline std::vector<ListMeta> project(const ListMeta& b_prev, const ListMeta& n_prev, std::size_t alphabet_size,
                                     const Workspace& ws, std::string_view prefix = "P_") {
    if (b_prev.length != n_prev.length)
        throw contract_error("project: |B| = " + std::to_string(b_prev.length) +
                             " but |N| = " + std::to_string(n_prev.length));
    auto handles = ws.reserve(alphabet_size);
    std::vector<ListWriter> buckets;
    buckets.reserve(alphabet_size);
    for (std::size_t h = 0; h < alphabet_size; ++h)
        buckets.emplace_back(ws.list(std::string(prefix) + std::to_string(h)), n_prev.width, false, ws.lists);

    ListReader symbols(b_prev, ws.lists);
    ListReader origins(n_prev, ws.lists);
    while (!symbols.done()) {
        auto c = symbols.next();
        auto q = origins.next();
        if (c < 0 || static_cast<std::size_t>(c) >= alphabet_size)
            throw contract_error("symbol code " + std::to_string(c) + " outside alphabet of size " +
                                 std::to_string(alphabet_size));
        buckets[static_cast<std::size_t>(c)].append(q);
    }

    std::vector<ListMeta> out;
    out.reserve(alphabet_size);
    for (auto& b : buckets) out.push_back(b.seal());
    return out;
}

/// Phase 1. Only B lists survive; at most one T_l is resident at a time.
inline PartialBwtSet build_partial_bwts(const ColumnSet& columns, std::size_t alphabet_size, const Workspace& ws,
                                        PartialBwtStats* stats = nullptr, PartialBwtOptions options = {}) {
    if (columns.T.size() != columns.k + 1) throw contract_error("column set must hold k+1 lists");
    const auto m = columns.m;
    const auto k = columns.k;
    const unsigned index_width = ws.index_width(m);
    if (!fits_width(static_cast<std::int64_t>(m), index_width, false))
        throw encoding_error("index width " + std::to_string(index_width) + " cannot hold m = " +
                             std::to_string(m));
    const IoAccounting io_start = ws.lists.io ? *ws.lists.io : IoAccounting{};

    PartialBwtSet out;
    out.m = m;
    out.k = k;

    // B_0 = T_0, N_0 = <1..m>
    ListMeta n_prev;
    {
        ListReader t0(columns.T[0], ws.lists);
        ListWriter b0(ws.list(partial_bwt_name(0)), symbol_width, false, ws.lists);
        ListWriter n0(ws.list(origin_name(0)), index_width, false, ws.lists);
        for (std::uint64_t i = 1; i <= m; ++i) {
            b0.append(t0.next());
            n0.append(static_cast<std::int64_t>(i));
        }
        out.B.push_back(b0.seal());
        n_prev = n0.seal();
    }

    std::vector<ListMeta> buckets;
    for (std::uint64_t l = 1; l <= k; ++l) {
        PartialBwtIteration it;
        it.level = l;
        const IoAccounting io_before = ws.lists.io ? *ws.lists.io : IoAccounting{};

        buckets = project(out.B[l - 1], n_prev, alphabet_size, ws);
        it.projection_reads = 2 * m;
        for (const auto& b : buckets) it.bucket_writes += b.length;
        ListMeta n_cur = concatenate(buckets, ws.list(origin_name(l)), ws.lists);

        std::vector<SymbolCode> column;
        auto resident = ws.reserve(m);
        column.reserve(static_cast<std::size_t>(m));
        {
            ListReader t(columns.T[l], ws.lists);
            while (!t.done()) column.push_back(static_cast<SymbolCode>(t.next()));
        }

        ListReader origins(n_cur, ws.lists);
        ListWriter b(ws.list(partial_bwt_name(l)), symbol_width, false, ws.lists);
        while (!origins.done()) {
            auto q = origins.next();
            if (q < 1 || static_cast<std::uint64_t>(q) > m)
                throw contract_error("string index " + std::to_string(q) + " outside 1.." + std::to_string(m));
            b.append(column[static_cast<std::size_t>(q - 1)]);
            ++it.lookups;
        }
        it.relabel_reads = origins.consumed();
        out.B.push_back(b.seal());
        it.bwt_writes = out.B.back().length;

        if (!options.keep_intermediates) remove_list(n_prev);
        n_prev = n_cur;
        if (ws.lists.io) it.io = *ws.lists.io - io_before;
        if (stats) stats->iterations.push_back(it);
    }
    if (!options.keep_intermediates) remove_list(n_prev);
    for (const auto& b : buckets) remove_list(b);
    if (stats && ws.lists.io) stats->io = *ws.lists.io - io_start;
    return out;
}

inline PartialBwtSet open_partial_bwts(const fs::path& dir, std::uint64_t m, std::uint64_t k) {
    PartialBwtSet set;
    set.m = m;
    set.k = k;
    for (std::uint64_t l = 0; l <= k; ++l) {
        auto meta = read_manifest(dir / partial_bwt_name(l));
        if (meta.length != m || meta.width != symbol_width)
            throw contract_error("partial BWT '" + meta.base.string() + "' does not match m = " +
                                 std::to_string(m));
        set.B.push_back(meta);
    }
    return set;
}

} // namespace extbwt

#endif
