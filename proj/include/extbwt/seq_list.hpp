#ifndef EXTBWT_SEQ_LIST_HPP
#define EXTBWT_SEQ_LIST_HPP

#include "extbwt/error.hpp"
#include "extbwt/io_accounting.hpp"
#include "extbwt/raw_file.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace extbwt {

/// Settings shared by every list opened within one pipeline.
struct ListConfig {
    std::size_t buffer_bytes = std::size_t{1} << 20;
    IoAccounting* io = nullptr;
};

/// Description of a sealed list on disk: `<base>.bin` holds raw little-endian
/// values, `<base>.meta` holds `width=<w> len=<n> signed=<0|1>`.
struct ListMeta {
    fs::path base;
    unsigned width = 1;
    std::uint64_t length = 0;
    bool is_signed = false;

    fs::path data_path() const { return fs::path(base.string() + ".bin"); }
    fs::path meta_path() const { return fs::path(base.string() + ".meta"); }
    std::uint64_t byte_size() const { return length * width; }
};

inline bool valid_width(unsigned w) { return w == 1 || w == 4 || w == 8; }

/// Smallest width in {1,4,8} holding every value in [0, max_value].
inline unsigned unsigned_width_for(std::uint64_t max_value) {
    if (max_value <= 0xFFu) return 1;
    if (max_value <= 0xFFFFFFFFu) return 4;
    return 8;
}

/// Smallest width in {1,4,8} holding every value in [-1, max_value].
inline unsigned signed_width_for(std::int64_t max_value) {
    if (max_value <= std::numeric_limits<std::int8_t>::max()) return 1;
    if (max_value <= std::numeric_limits<std::int32_t>::max()) return 4;
    return 8;
}

inline bool fits_width(std::int64_t v, unsigned width, bool is_signed) {
    if (is_signed) {
        if (width == 8) return true;
        const std::int64_t half = std::int64_t{1} << (8 * width - 1);
        return v >= -half && v < half;
    }
    if (v < 0) return false;
    if (width == 8) return true;
    return static_cast<std::uint64_t>(v) < (std::uint64_t{1} << (8 * width));
}

inline void write_manifest(const ListMeta& meta) {
    std::ofstream out(meta.meta_path(), std::ios::trunc);
    out << "width=" << meta.width << " len=" << meta.length
        << " signed=" << (meta.is_signed ? 1 : 0) << "\n";
    out.flush();
    if (!out) throw io_error("cannot write manifest '" + meta.meta_path().string() + "'");
}

inline ListMeta read_manifest(const fs::path& base) {
    ListMeta meta;
    meta.base = base;
    std::ifstream in(meta.meta_path());
    if (!in) throw io_error("cannot open manifest '" + meta.meta_path().string() + "'");
    std::string line;
    std::getline(in, line);
    std::istringstream fields(line);
    std::string field;
    int seen = 0;
    while (fields >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        auto key = field.substr(0, eq);
        auto value = field.substr(eq + 1);
        try {
            if (key == "width") {
                meta.width = static_cast<unsigned>(std::stoul(value));
                seen |= 1;
            } else if (key == "len") {
                meta.length = std::stoull(value);
                seen |= 2;
            } else if (key == "signed") {
                meta.is_signed = value == "1";
                seen |= 4;
            }
        } catch (const std::exception&) {
            throw io_error("malformed manifest '" + meta.meta_path().string() + "'");
        }
    }
    if (seen != 7 || !valid_width(meta.width))
        throw io_error("malformed manifest '" + meta.meta_path().string() + "'");
    return meta;
}

inline void remove_list(const ListMeta& meta) {
    std::error_code ec;
    fs::remove(meta.data_path(), ec);
    fs::remove(meta.meta_path(), ec);
}

namespace detail {

inline void store_le(std::byte* dst, std::uint64_t v, unsigned width) {
    for (unsigned i = 0; i < width; ++i) dst[i] = static_cast<std::byte>((v >> (8 * i)) & 0xFF);
}

inline std::int64_t load_le(const std::byte* src, unsigned width, bool is_signed) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i)
        v |= static_cast<std::uint64_t>(std::to_integer<unsigned>(src[i])) << (8 * i);
    if (is_signed && width < 8) {
        const std::uint64_t sign = std::uint64_t{1} << (8 * width - 1);
        if (v & sign) v |= ~((sign << 1) - 1);
    }
    return static_cast<std::int64_t>(v);
}

inline std::size_t buffer_elements(std::size_t buffer_bytes, unsigned width) {
    return std::max<std::size_t>(1, buffer_bytes / width);
}

} // namespace detail

/// Append-only writer. The list becomes readable only after seal(); a writer
/// destroyed unsealed leaves its data file but no manifest.
class ListWriter {
public:
    ListWriter(fs::path base, unsigned width, bool is_signed, const ListConfig& config)
        : meta_{std::move(base), width, 0, is_signed} {
        if (!valid_width(width))
            throw contract_error("element width must be 1, 4 or 8, got " + std::to_string(width));
        capacity_ = detail::buffer_elements(config.buffer_bytes, width) * width;
        file_ = RawFile(meta_.data_path(), RawFile::Mode::write_truncate, config.io);
    }

    ListWriter(ListWriter&&) noexcept = default;
    ListWriter& operator=(ListWriter&&) noexcept = default;

    ~ListWriter() {
        if (file_.is_open()) {
            try {
                flush();
            } catch (...) {
            }
        }
    }

    void append(std::int64_t value) {
        if (!fits_width(value, meta_.width, meta_.is_signed))
            throw encoding_error("value " + std::to_string(value) + " does not fit width " +
                                 std::to_string(meta_.width) + " of list '" +
                                 meta_.base.string() + "'");
        if (!file_.is_open()) throw contract_error("append to sealed list '" + meta_.base.string() + "'");
        if (buffer_.empty()) buffer_.resize(capacity_);
        detail::store_le(buffer_.data() + used_, static_cast<std::uint64_t>(value), meta_.width);
        used_ += meta_.width;
        ++meta_.length;
        if (used_ == capacity_) flush();
    }

    std::uint64_t length() const { return meta_.length; }
    const fs::path& base() const { return meta_.base; }

    ListMeta seal() {
        flush();
        file_.close();
        buffer_.clear();
        buffer_.shrink_to_fit();
        write_manifest(meta_);
        return meta_;
    }

private:
    void flush() {
        if (used_ == 0) return;
        file_.write(std::span<const std::byte>(buffer_.data(), used_));
        used_ = 0;
    }

    ListMeta meta_;
    RawFile file_;
    std::vector<std::byte> buffer_;
    std::size_t capacity_ = 0;
    std::size_t used_ = 0;
};

/// Forward-only reader yielding each element once, in append order.
class ListReader {
public:
    ListReader(const ListMeta& meta, const ListConfig& config) : meta_(meta) {
        std::error_code ec;
        auto size = fs::file_size(meta_.data_path(), ec);
        if (ec) throw io_error("cannot stat '" + meta_.data_path().string() + "': " + ec.message());
        if (size != meta_.byte_size())
            throw io_error("size of '" + meta_.data_path().string() + "' is " + std::to_string(size) +
                           " bytes, manifest says " + std::to_string(meta_.byte_size()));
        capacity_ = std::min<std::uint64_t>(
            detail::buffer_elements(config.buffer_bytes, meta_.width) * meta_.width, meta_.byte_size());
        file_ = RawFile(meta_.data_path(), RawFile::Mode::read, config.io);
    }

    bool done() const { return consumed_ == meta_.length; }
    std::uint64_t consumed() const { return consumed_; }
    std::uint64_t remaining() const { return meta_.length - consumed_; }
    const ListMeta& meta() const { return meta_; }

    std::int64_t next() {
        if (done()) throw contract_error("read past end of list '" + meta_.base.string() + "'");
        if (pos_ == filled_) refill();
        auto v = detail::load_le(buffer_.data() + pos_, meta_.width, meta_.is_signed);
        pos_ += meta_.width;
        ++consumed_;
        return v;
    }

private:
    void refill() {
        if (buffer_.empty()) buffer_.resize(static_cast<std::size_t>(capacity_));
        auto want = std::min<std::uint64_t>(capacity_, remaining() * meta_.width);
        filled_ = file_.read(std::span<std::byte>(buffer_.data(), static_cast<std::size_t>(want)));
        pos_ = 0;
        if (filled_ < meta_.width)
            throw io_error("unexpected end of '" + meta_.data_path().string() + "'");
    }

    ListMeta meta_;
    RawFile file_;
    std::vector<std::byte> buffer_;
    std::uint64_t capacity_ = 0;
    std::size_t filled_ = 0;
    std::size_t pos_ = 0;
    std::uint64_t consumed_ = 0;
};

/// Joins sealed buckets into one list by appending their bytes in order.
inline ListMeta concatenate(std::span<const ListMeta> buckets, const fs::path& out_base,
                            const ListConfig& config) {
    if (buckets.empty()) throw contract_error("concatenate needs at least one bucket");
    ListMeta out{out_base, buckets.front().width, 0, buckets.front().is_signed};
    for (const auto& b : buckets) {
        if (b.width != out.width || b.is_signed != out.is_signed)
            throw contract_error("bucket '" + b.base.string() + "' has width " +
                                 std::to_string(b.width) + ", expected " + std::to_string(out.width));
        out.length += b.length;
    }
    RawFile dst(out.data_path(), RawFile::Mode::write_truncate, config.io);
    std::vector<std::byte> buffer;
    for (const auto& b : buckets) {
        if (b.length == 0) continue;
        if (buffer.empty())
            buffer.resize(std::max<std::size_t>(out.width, std::min<std::uint64_t>(config.buffer_bytes, out.byte_size())));
        RawFile src(b.data_path(), RawFile::Mode::read, config.io);
        std::uint64_t left = b.byte_size();
        while (left > 0) {
            auto want = static_cast<std::size_t>(std::min<std::uint64_t>(left, buffer.size()));
            auto got = src.read(std::span<std::byte>(buffer.data(), want));
            if (got == 0) throw io_error("bucket '" + b.data_path().string() + "' shorter than manifest");
            dst.write(std::span<const std::byte>(buffer.data(), got));
            left -= got;
        }
    }
    dst.close();
    write_manifest(out);
    return out;
}

inline ListMeta concatenate(std::initializer_list<ListMeta> buckets, const fs::path& out_base,
                            const ListConfig& config) {
    return concatenate(std::span<const ListMeta>(buckets.begin(), buckets.size()), out_base, config);
}

/// Convenience for tests and the oracle comparison: materialize a whole list.
inline std::vector<std::int64_t> read_all(const ListMeta& meta, const ListConfig& config = {}) {
    ListReader r(meta, config);
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(meta.length));
    while (!r.done()) out.push_back(r.next());
    return out;
}

template <typename Range>
ListMeta write_list(const fs::path& base, unsigned width, bool is_signed, const Range& values,
                    const ListConfig& config = {}) {
    ListWriter w(base, width, is_signed, config);
    for (auto v : values) w.append(static_cast<std::int64_t>(v));
    return w.seal();
}

} // namespace extbwt

#endif
