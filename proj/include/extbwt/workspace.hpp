#ifndef EXTBWT_WORKSPACE_HPP
#define EXTBWT_WORKSPACE_HPP

#include "extbwt/error.hpp"
#include "extbwt/io_accounting.hpp"
#include "extbwt/seq_list.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace extbwt {

/// Where a pipeline keeps its lists and how it sizes them.
struct Workspace {
    fs::path dir;
    ListConfig lists;
    MemoryLedger* memory = nullptr;
    /// Overrides the width of every integer list (N, I, LCP); 0 picks the
    /// narrowest width that holds the data.
    unsigned int_width = 0;

    fs::path list(std::string_view name) const { return dir / std::string(name); }

    MemoryLedger::Reservation reserve(std::uint64_t elements) const {
        return memory ? memory->reserve(elements) : MemoryLedger::Reservation{};
    }

    unsigned index_width(std::uint64_t m) const {
        if (int_width) return int_width;
        return m < (std::uint64_t{1} << 32) ? 4 : 8;
    }
    unsigned level_width(std::uint64_t k) const {
        return int_width ? int_width : unsigned_width_for(k);
    }
    unsigned lcp_width(std::uint64_t k) const {
        return int_width ? int_width : signed_width_for(static_cast<std::int64_t>(k));
    }
};

/// Symbol lists always use one byte per element.
inline constexpr unsigned symbol_width = 1;

} // namespace extbwt

#endif
