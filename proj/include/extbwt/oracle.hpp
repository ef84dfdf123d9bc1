#ifndef EXTBWT_ORACLE_HPP
#define EXTBWT_ORACLE_HPP

#include "extbwt/alphabet.hpp"
#include "extbwt/ingest.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <vector>

// In-memory brute force over all m(k+1) suffixes. Quadratic and meant for
// test-sized inputs only; it shares no code with the streaming pipeline.
namespace extbwt::oracle {

/// The l-suffix of string `string_index` (1-based); the sentinel is implicit.
struct SuffixRef {
    std::uint64_t string_index = 1;
    std::uint64_t length = 0;
};

inline constexpr std::uint64_t unbounded = std::numeric_limits<std::uint64_t>::max();

namespace detail {

inline const SymbolCode* text(const StringCollection& c, const SuffixRef& s) {
    const auto& row = c.rows[s.string_index - 1];
    return row.data() + (c.k - s.length);
}

} // namespace detail

/// The p-order: compare p-prefixes lexicographically (a shorter suffix's
/// p-prefix is its whole text, and a proper prefix is smaller), then by
/// length, then by string index. Pass `unbounded` for the full order.
inline std::strong_ordering compare_p(const StringCollection& c, const SuffixRef& a, const SuffixRef& b,
                                      std::uint64_t p) {
    const auto la = std::min(a.length, p);
    const auto lb = std::min(b.length, p);
    const auto* ta = detail::text(c, a);
    const auto* tb = detail::text(c, b);
    const auto n = std::min(la, lb);
    for (std::uint64_t i = 0; i < n; ++i)
        if (ta[i] != tb[i]) return ta[i] <=> tb[i];
    if (la != lb) return la <=> lb;
    if (a.length != b.length) return a.length <=> b.length;
    return a.string_index <=> b.string_index;
}

/// Length of the longest common prefix of two suffix texts, sentinels
/// excluded (two sentinels never match each other).
inline std::uint64_t lcp(const StringCollection& c, const SuffixRef& a, const SuffixRef& b,
                         std::uint64_t cap = unbounded) {
    const auto* ta = detail::text(c, a);
    const auto* tb = detail::text(c, b);
    const auto n = std::min({a.length, b.length, cap});
    std::uint64_t i = 0;
    while (i < n && ta[i] == tb[i]) ++i;
    return i;
}

inline std::vector<SuffixRef> all_suffixes(const StringCollection& c) {
    std::vector<SuffixRef> out;
    out.reserve(c.m * (c.k + 1));
    for (std::uint64_t j = 1; j <= c.m; ++j)
        for (std::uint64_t l = 0; l <= c.k; ++l) out.push_back({j, l});
    return out;
}

inline std::vector<SuffixRef> sorted_suffixes(const StringCollection& c, std::uint64_t p) {
    auto sa = all_suffixes(c);
    std::sort(sa.begin(), sa.end(),
              [&](const SuffixRef& a, const SuffixRef& b) { return compare_p(c, a, b, p) < 0; });
    return sa;
}

struct PState {
    std::vector<std::int64_t> encoding;
    std::vector<std::int64_t> lcp;
};

/// Encoding of the p-interleave and LCP_p computed from adjacent p-prefixes.
inline PState p_state(const StringCollection& c, std::uint64_t p) {
    auto sa = sorted_suffixes(c, p);
    PState s;
    s.encoding.reserve(sa.size());
    s.lcp.reserve(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        s.encoding.push_back(static_cast<std::int64_t>(sa[i].length));
        s.lcp.push_back(i == 0 ? -1 : static_cast<std::int64_t>(lcp(c, sa[i - 1], sa[i], p)));
    }
    return s;
}

struct BwtLcp {
    std::vector<SymbolCode> bwt;
    std::vector<std::int64_t> lcp;
    std::vector<std::int64_t> encoding;
    std::vector<SuffixRef> suffixes;
};

inline SymbolCode preceding_symbol(const StringCollection& c, const SuffixRef& s) {
    if (s.length == c.k) return sentinel;
    return c.rows[s.string_index - 1][c.k - s.length - 1];
}

inline BwtLcp bwt_lcp(const StringCollection& c) {
    BwtLcp out;
    out.suffixes = sorted_suffixes(c, unbounded);
    for (std::size_t i = 0; i < out.suffixes.size(); ++i) {
        const auto& s = out.suffixes[i];
        out.bwt.push_back(preceding_symbol(c, s));
        out.encoding.push_back(static_cast<std::int64_t>(s.length));
        out.lcp.push_back(i == 0 ? -1 : static_cast<std::int64_t>(lcp(c, out.suffixes[i - 1], s)));
    }
    return out;
}

/// Preceding symbols of the sorted l-suffixes: the oracle's B_l.
inline std::vector<SymbolCode> partial_bwt(const StringCollection& c, std::uint64_t l) {
    std::vector<SuffixRef> xs;
    for (std::uint64_t j = 1; j <= c.m; ++j) xs.push_back({j, l});
    std::sort(xs.begin(), xs.end(),
              [&](const SuffixRef& a, const SuffixRef& b) { return compare_p(c, a, b, unbounded) < 0; });
    std::vector<SymbolCode> out;
    for (const auto& s : xs) out.push_back(preceding_symbol(c, s));
    return out;
}

} // namespace extbwt::oracle

#endif
