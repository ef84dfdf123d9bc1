#ifndef EXTBWT_MULTI_CURSOR_HPP
#define EXTBWT_MULTI_CURSOR_HPP

#include "extbwt/error.hpp"
#include "extbwt/io_accounting.hpp"
#include "extbwt/seq_list.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace extbwt {

/// One forward reader per level. Asking for level l yields the next unread
/// element of component l, so the j-th request for l returns V_l[j]: the
/// rank lookup of an interleave encoding without any random access.
class MultiCursor {
public:
    MultiCursor(std::span<const ListMeta> components, const ListConfig& config,
                MemoryLedger* memory = nullptr)
        : positions_(memory ? memory->reserve(components.size()) : MemoryLedger::Reservation{}) {
        readers_.reserve(components.size());
        for (const auto& c : components) readers_.emplace_back(c, config);
    }

    std::size_t levels() const { return readers_.size(); }

    std::int64_t next(std::int64_t level) {
        if (level < 0 || static_cast<std::uint64_t>(level) >= readers_.size())
            throw malformed_encoding_error("encoding level " + std::to_string(level) +
                                           " exceeds highest component " +
                                           std::to_string(readers_.size() - 1));
        auto& r = readers_[static_cast<std::size_t>(level)];
        if (r.done())
            throw malformed_encoding_error("component " + std::to_string(level) + " exhausted after " +
                                           std::to_string(r.consumed()) + " elements");
        ++consumed_;
        return r.next();
    }

    std::uint64_t position(std::size_t level) const { return readers_.at(level).consumed(); }
    std::uint64_t consumed() const { return consumed_; }

    bool all_exhausted() const {
        for (const auto& r : readers_)
            if (!r.done()) return false;
        return true;
    }

    /// Throws unless every component was read to its end.
    void require_exhausted() const {
        for (std::size_t l = 0; l < readers_.size(); ++l)
            if (!readers_[l].done())
                throw malformed_encoding_error("component " + std::to_string(l) + " has " +
                                               std::to_string(readers_[l].remaining()) +
                                               " unread elements");
    }

private:
    std::vector<ListReader> readers_;
    MemoryLedger::Reservation positions_;
    std::uint64_t consumed_ = 0;
};

/// Rebuilds the interleave W from its encoding in one sequential pass:
/// W[q] = V_{I[q]}[rank of I[q] in I[1..q]].
inline ListMeta reconstruct_interleave(const ListMeta& encoding, std::span<const ListMeta> components,
                                       const fs::path& out_base, const ListConfig& config,
                                       MemoryLedger* memory = nullptr) {
    if (components.empty()) throw contract_error("reconstruct_interleave needs at least one component");
    for (const auto& c : components)
        if (c.width != components.front().width || c.is_signed != components.front().is_signed)
            throw contract_error("components of an interleave must share one element width");

    ListReader in(encoding, config);
    MultiCursor cursor(components, config, memory);
    ListWriter out(out_base, components.front().width, components.front().is_signed, config);
    while (!in.done()) out.append(cursor.next(in.next()));
    cursor.require_exhausted();
    return out.seal();
}

} // namespace extbwt

#endif
