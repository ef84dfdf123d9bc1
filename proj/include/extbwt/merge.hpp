#ifndef EXTBWT_MERGE_HPP
#define EXTBWT_MERGE_HPP

#include "extbwt/alphabet.hpp"
#include "extbwt/error.hpp"
#include "extbwt/ingest.hpp"
#include "extbwt/multi_cursor.hpp"
#include "extbwt/partial_bwt.hpp"
#include "extbwt/seq_list.hpp"
#include "extbwt/workspace.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace extbwt {

/// Encoding I of the p-interleave together with LCP_p.
struct MergeState {
    std::uint64_t p = 0;
    ListMeta encoding;
    ListMeta lcp;
};

/// Element traffic of one refinement pass.
struct PassStats {
    std::uint64_t level = 0; // the level p+1 this pass produced
    std::uint64_t encoding_reads = 0;
    std::uint64_t lcp_reads = 0;
    std::uint64_t bwt_reads = 0;
    std::uint64_t encoding_writes = 0; // into the I(c) buckets
    std::uint64_t lcp_writes = 0;      // into the L(c) buckets
    std::int64_t max_lcp = -1;
    IoAccounting io;
};

struct BuildStats {
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::uint64_t sigma = 0;
    std::uint64_t passes = 0;
    std::int64_t max_lcp = -1;
    std::vector<PassStats> pass_stats;
    PartialBwtStats phase1;
    IoAccounting io;
    std::uint64_t peak_resident_elements = 0;
};

inline ListMeta rename_list(const ListMeta& meta, const fs::path& new_base) {
    ListMeta out = meta;
    out.base = new_base;
    fs::rename(meta.data_path(), out.data_path());
    fs::rename(meta.meta_path(), out.meta_path());
    return out;
}

/// I_{X^0} = m 0s, m 1s, ..., m k's and LCP_0 = -1 followed by zeros.
inline MergeState init_state(std::uint64_t m, std::uint64_t k, const Workspace& ws,
                             std::string_view encoding_name = "I_cur", std::string_view lcp_name = "L_cur") {
    if (m == 0 || k == 0) throw contract_error("init_state requires m >= 1 and k >= 1");
    ListWriter enc(ws.list(encoding_name), ws.level_width(k), false, ws.lists);
    ListWriter lcp(ws.list(lcp_name), ws.lcp_width(k), true, ws.lists);
    for (std::uint64_t l = 0; l <= k; ++l)
        for (std::uint64_t i = 0; i < m; ++i) {
            enc.append(static_cast<std::int64_t>(l));
            lcp.append(l == 0 && i == 0 ? -1 : 0);
        }
    return MergeState{0, enc.seal(), lcp.seal()};
}

namespace detail {

/// The sigma+1 bucket writers of one pass, plus per-level counts of what
/// was appended so that level conservation can be checked at the end.
class EncodingBuckets {
public:
    EncodingBuckets(std::size_t alphabet_size, std::uint64_t m, std::uint64_t k, const Workspace& ws,
                    std::string_view prefix)
        : k_(k), m_(m), counts_(static_cast<std::size_t>(k + 1), 0),
          handles_(ws.reserve(alphabet_size + k + 1)) {
        writers_.reserve(alphabet_size);
        for (std::size_t h = 0; h < alphabet_size; ++h)
            writers_.emplace_back(ws.list(std::string(prefix) + std::to_string(h)), ws.level_width(k), false,
                                  ws.lists);
        // Suffixes starting with $ are the m empty ones, in string order.
        for (std::uint64_t i = 0; i < m; ++i) writers_[sentinel].append(0);
        counts_[0] = m;
    }

    void append(SymbolCode c, std::int64_t level) {
        if (static_cast<std::uint64_t>(level) > k_)
            throw malformed_encoding_error("a suffix of length " + std::to_string(k_) +
                                           " is preceded by a non-sentinel symbol");
        writers_[c].append(level);
        ++counts_[static_cast<std::size_t>(level)];
    }

    std::uint64_t written() const {
        std::uint64_t n = 0;
        for (const auto& w : writers_) n += w.length();
        return n;
    }

    std::vector<ListMeta> seal() {
        for (std::size_t l = 0; l < counts_.size(); ++l)
            if (counts_[l] != m_)
                throw malformed_encoding_error("level " + std::to_string(l) + " occurs " +
                                               std::to_string(counts_[l]) + " times, expected " +
                                               std::to_string(m_));
        std::vector<ListMeta> out;
        for (auto& w : writers_) out.push_back(w.seal());
        return out;
    }

private:
    std::uint64_t k_;
    std::uint64_t m_;
    std::vector<ListWriter> writers_;
    std::vector<std::uint64_t> counts_;
    MemoryLedger::Reservation handles_;
};

inline SymbolCode checked_symbol(std::int64_t c, std::size_t alphabet_size) {
    if (c < 0 || static_cast<std::size_t>(c) >= alphabet_size)
        throw malformed_encoding_error("symbol code " + std::to_string(c) + " outside alphabet of size " +
                                       std::to_string(alphabet_size));
    return static_cast<SymbolCode>(c);
}

inline void check_partials(const PartialBwtSet& bwt, const ListMeta& encoding) {
    if (bwt.B.size() != bwt.k + 1) throw contract_error("partial BWT set must hold k+1 lists");
    if (encoding.length != bwt.m * (bwt.k + 1))
        throw contract_error("encoding has " + std::to_string(encoding.length) + " entries, expected m(k+1) = " +
                             std::to_string(bwt.m * (bwt.k + 1)));
}

inline ListMeta concat_and_drop(const std::vector<ListMeta>& buckets, const fs::path& out, const ListConfig& cfg) {
    auto result = concatenate(buckets, out, cfg);
    for (const auto& b : buckets) remove_list(b);
    return result;
}

} // namespace detail

/// One refinement pass over the encoding only: I_{X^p} -> I_{X^{p+1}}.
inline ListMeta interleave_step(const ListMeta& encoding, const PartialBwtSet& bwt, std::size_t alphabet_size,
                                const Workspace& ws, std::string_view out_name = "I_next") {
    detail::check_partials(bwt, encoding);
    ListReader levels(encoding, ws.lists);
    MultiCursor cursor(bwt.B, ws.lists, ws.memory);
    detail::EncodingBuckets buckets(alphabet_size, bwt.m, bwt.k, ws, "Ib_");
    while (!levels.done()) {
        auto l = levels.next();
        auto c = detail::checked_symbol(cursor.next(l), alphabet_size);
        if (c != sentinel) buckets.append(c, l + 1);
    }
    cursor.require_exhausted();
    return detail::concat_and_drop(buckets.seal(), ws.list(out_name), ws.lists);
}

struct StepResult {
    MergeState state;
    std::int64_t max_lcp = -1;
    PassStats stats;
};

/// One refinement pass producing I_{X^{p+1}} and LCP_{p+1}.
///
/// alpha[c] tracks the running minimum of LCP_p since the last suffix
/// preceded by c; -1 until c has been seen in this pass, k+1 standing for
/// infinity right after a reset. L(c) receives 0 at c's first occurrence
/// and alpha[c] + 1 afterwards, so |I(c)| = |L(c)| always holds.
inline StepResult interleave_lcp_step(const MergeState& current, const PartialBwtSet& bwt, std::size_t alphabet_size,
                                      const Workspace& ws, std::string_view encoding_out = "I_next",
                                      std::string_view lcp_out = "L_next") {
    if (current.encoding.length != current.lcp.length)
        throw contract_error("|I| = " + std::to_string(current.encoding.length) + " but |LCP| = " +
                             std::to_string(current.lcp.length));
    detail::check_partials(bwt, current.encoding);
    const IoAccounting io_before = ws.lists.io ? *ws.lists.io : IoAccounting{};
    const auto m = bwt.m;
    const auto k = bwt.k;
    const std::int64_t infinity = static_cast<std::int64_t>(k) + 1;

    ListReader levels(current.encoding, ws.lists);
    ListReader lcps(current.lcp, ws.lists);
    MultiCursor cursor(bwt.B, ws.lists, ws.memory);
    detail::EncodingBuckets enc_buckets(alphabet_size, m, k, ws, "Ib_");

    auto lcp_handles = ws.reserve(alphabet_size);
    std::vector<ListWriter> lcp_buckets;
    lcp_buckets.reserve(alphabet_size);
    for (std::size_t h = 0; h < alphabet_size; ++h)
        lcp_buckets.emplace_back(ws.list("Lb_" + std::to_string(h)), ws.lcp_width(k), true, ws.lists);
    std::int64_t max_lcp = -1;
    for (std::uint64_t i = 0; i < m; ++i) {
        std::int64_t v = i == 0 ? -1 : 0;
        lcp_buckets[sentinel].append(v);
        max_lcp = std::max(max_lcp, v);
    }

    // alpha[0] is the unused sentinel slot.
    auto alpha_slots = ws.reserve(alphabet_size - 1);
    std::vector<std::int64_t> alpha(alphabet_size, -1);

    while (!levels.done()) {
        auto l = levels.next();
        auto lcp = lcps.next();
        auto c = detail::checked_symbol(cursor.next(l), alphabet_size);
        if (c != sentinel) enc_buckets.append(c, l + 1);

        for (std::size_t d = 1; d < alphabet_size; ++d) alpha[d] = std::min(alpha[d], lcp);

        if (c != sentinel) {
            std::int64_t v = alpha[c] >= 0 ? alpha[c] + 1 : 0;
            lcp_buckets[c].append(v);
            max_lcp = std::max(max_lcp, v);
            alpha[c] = infinity;
        }
    }
    cursor.require_exhausted();

    StepResult result;
    result.stats.level = current.p + 1;
    result.stats.encoding_reads = levels.consumed();
    result.stats.lcp_reads = lcps.consumed();
    result.stats.bwt_reads = cursor.consumed();
    result.stats.encoding_writes = enc_buckets.written();

    auto enc_lists = enc_buckets.seal();
    std::vector<ListMeta> lcp_lists;
    for (auto& w : lcp_buckets) {
        result.stats.lcp_writes += w.length();
        lcp_lists.push_back(w.seal());
    }
    result.state.p = current.p + 1;
    result.state.encoding = detail::concat_and_drop(enc_lists, ws.list(encoding_out), ws.lists);
    result.state.lcp = detail::concat_and_drop(lcp_lists, ws.list(lcp_out), ws.lists);
    result.max_lcp = max_lcp;
    result.stats.max_lcp = max_lcp;
    if (ws.lists.io) result.stats.io = *ws.lists.io - io_before;
    return result;
}

/// Called with every state (I_{X^p}, LCP_p) the merge produces, p = 0 first.
using StepObserver = std::function<void(const MergeState&)>;

struct RunOptions {
    bool keep_intermediates = false;
    StepObserver observer;
};

struct BuildResult {
    ListMeta bwt;
    ListMeta lcp;
    ListMeta encoding;
    BuildStats stats;
};

/// Phase 2: refine until a pass producing level p+1 finds max LCP < p+1,
/// then rebuild the BWT from the final encoding.
inline BuildResult merge_partials(const PartialBwtSet& bwt, std::size_t alphabet_size, const Workspace& ws,
                                  const RunOptions& options = {}) {
    BuildResult result;
    auto& stats = result.stats;
    stats.m = bwt.m;
    stats.k = bwt.k;
    stats.sigma = alphabet_size - 1;

    MergeState state = init_state(bwt.m, bwt.k, ws);
    if (options.observer) options.observer(state);
    while (true) {
        if (state.p > bwt.k + 1)
            throw malformed_encoding_error("merge did not saturate within k+1 passes");
        auto step = interleave_lcp_step(state, bwt, alphabet_size, ws);
        stats.pass_stats.push_back(step.stats);
        ++stats.passes;
        if (options.observer) options.observer(step.state);
        remove_list(state.encoding);
        remove_list(state.lcp);
        state.p = step.state.p;
        state.encoding = rename_list(step.state.encoding, ws.list("I_cur"));
        state.lcp = rename_list(step.state.lcp, ws.list("L_cur"));
        if (step.max_lcp < static_cast<std::int64_t>(state.p)) {
            stats.max_lcp = step.max_lcp;
            break;
        }
    }

    result.encoding = state.encoding;
    result.lcp = rename_list(state.lcp, ws.list("lcp"));
    result.bwt = reconstruct_interleave(state.encoding, bwt.B, ws.list("bwt"), ws.lists, ws.memory);
    return result;
}

/// Phase 1 followed by Phase 2 on an already written column set.
inline BuildResult run_bwt_lcp(const ColumnSet& columns, std::size_t alphabet_size, const Workspace& ws,
                               const RunOptions& options = {}) {
    const IoAccounting io_start = ws.lists.io ? *ws.lists.io : IoAccounting{};
    PartialBwtStats phase1;
    auto partials = build_partial_bwts(columns, alphabet_size, ws, &phase1, {options.keep_intermediates});
    auto result = merge_partials(partials, alphabet_size, ws, options);
    result.stats.phase1 = std::move(phase1);
    if (ws.lists.io) result.stats.io = *ws.lists.io - io_start;
    if (ws.memory) result.stats.peak_resident_elements = ws.memory->peak();
    if (!options.keep_intermediates)
        for (const auto& b : partials.B) remove_list(b);
    return result;
}

} // namespace extbwt

#endif
