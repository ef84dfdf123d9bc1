#ifndef EXTBWT_ALPHABET_HPP
#define EXTBWT_ALPHABET_HPP

#include "extbwt/error.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace extbwt {

using SymbolCode = std::uint8_t;

inline constexpr SymbolCode sentinel = 0;
inline constexpr char sentinel_char = '$';

/// Ordered alphabet c_0 < c_1 < ... < c_sigma with c_0 = '$'. The order of
/// the remaining characters is the order in which they are declared.
class Alphabet {
public:
    explicit Alphabet(std::string_view symbols = "ACGT") {
        if (symbols.empty()) throw alphabet_error("alphabet must contain at least one symbol");
        if (symbols.size() > 255) throw alphabet_error("alphabet is limited to 255 symbols");
        codes_.fill(-1);
        chars_.push_back(sentinel_char);
        codes_[static_cast<unsigned char>(sentinel_char)] = sentinel;
        for (char ch : symbols) {
            auto u = static_cast<unsigned char>(ch);
            if (ch == sentinel_char) throw alphabet_error("'$' is reserved for the sentinel");
            if (codes_[u] >= 0) throw alphabet_error(std::string("duplicate alphabet symbol '") + ch + "'");
            codes_[u] = static_cast<int>(chars_.size());
            chars_.push_back(ch);
        }
    }

    /// Number of non-sentinel symbols.
    std::size_t sigma() const { return chars_.size() - 1; }
    /// sigma + 1, the sentinel included.
    std::size_t size() const { return chars_.size(); }

    /// Code of ch; a lowercase letter falls back to its uppercase form.
    std::optional<SymbolCode> code_of(char ch) const {
        auto u = static_cast<unsigned char>(ch);
        if (codes_[u] > 0) return static_cast<SymbolCode>(codes_[u]);
        auto up = static_cast<unsigned char>(std::toupper(u));
        if (up != u && codes_[up] > 0) return static_cast<SymbolCode>(codes_[up]);
        return std::nullopt;
    }

    char char_of(SymbolCode code) const {
        if (code >= chars_.size()) throw alphabet_error("symbol code " + std::to_string(code) + " out of range");
        return chars_[code];
    }

    const std::string& symbols() const { return chars_; }

    /// String without the leading sentinel, suitable for reconstructing.
    std::string declared() const { return chars_.substr(1); }

private:
    std::array<int, 256> codes_{};
    std::string chars_;
};

} // namespace extbwt

#endif
