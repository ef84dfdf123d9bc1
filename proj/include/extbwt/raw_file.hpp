#ifndef EXTBWT_RAW_FILE_HPP
#define EXTBWT_RAW_FILE_HPP

#include "extbwt/error.hpp"
#include "extbwt/io_accounting.hpp"

#include <cerrno>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>

#include <fcntl.h>
#include <sys/types.h>
#include <unistd.h>

namespace extbwt {

namespace fs = std::filesystem;

/// Thin POSIX descriptor wrapper. Every read and write is reported to an
/// optional IoAccounting, and the kernel offset is checked before each
/// operation so that a backward seek by anyone on the descriptor is counted.
class RawFile {
public:
    enum class Mode { read, write_truncate, append };

    RawFile() = default;

    RawFile(const fs::path& path, Mode mode, IoAccounting* io = nullptr)
        : path_(path), io_(io) {
        int flags = O_CLOEXEC;
        switch (mode) {
        case Mode::read: flags |= O_RDONLY; break;
        case Mode::write_truncate: flags |= O_WRONLY | O_CREAT | O_TRUNC; break;
        case Mode::append: flags |= O_WRONLY | O_CREAT | O_APPEND; break;
        }
        fd_ = ::open(path.c_str(), flags, 0644);
        if (fd_ < 0) fail("open");
        if (io_) ++io_->files_opened;
        last_offset_ = current_offset();
    }

    RawFile(RawFile&& o) noexcept
        : path_(std::move(o.path_)), io_(o.io_), fd_(o.fd_), last_offset_(o.last_offset_) {
        o.fd_ = -1;
    }

    RawFile& operator=(RawFile&& o) noexcept {
        if (this != &o) {
            close_quietly();
            path_ = std::move(o.path_);
            io_ = o.io_;
            fd_ = o.fd_;
            last_offset_ = o.last_offset_;
            o.fd_ = -1;
        }
        return *this;
    }

    RawFile(const RawFile&) = delete;
    RawFile& operator=(const RawFile&) = delete;

    ~RawFile() { close_quietly(); }

    bool is_open() const { return fd_ >= 0; }
    const fs::path& path() const { return path_; }

    /// Reads up to buf.size() bytes; returns 0 only at end of file.
    std::size_t read(std::span<std::byte> buf) {
        check_sequential();
        std::size_t got = 0;
        while (got < buf.size()) {
            ssize_t r = ::read(fd_, buf.data() + got, buf.size() - got);
            if (r < 0) {
                if (errno == EINTR) continue;
                fail("read");
            }
            if (r == 0) break;
            got += static_cast<std::size_t>(r);
        }
        last_offset_ += static_cast<std::int64_t>(got);
        if (io_) {
            io_->bytes_read += got;
            ++io_->read_calls;
        }
        return got;
    }

    void write(std::span<const std::byte> buf) {
        check_sequential();
        std::size_t done = 0;
        while (done < buf.size()) {
            ssize_t r = ::write(fd_, buf.data() + done, buf.size() - done);
            if (r < 0) {
                if (errno == EINTR) continue;
                fail("write");
            }
            done += static_cast<std::size_t>(r);
        }
        last_offset_ = current_offset();
        if (io_) {
            io_->bytes_written += done;
            ++io_->write_calls;
        }
    }

    /// Repositions the descriptor. Nothing in the pipeline calls this; it
    /// exists so the seek detector itself can be tested.
    void seek(std::int64_t offset) {
        if (::lseek(fd_, offset, SEEK_SET) < 0) fail("seek");
    }

    void close() {
        if (fd_ >= 0 && ::close(fd_) != 0) {
            fd_ = -1;
            fail("close");
        }
        fd_ = -1;
    }

private:
    std::int64_t current_offset() const {
        off_t off = ::lseek(fd_, 0, SEEK_CUR);
        return off < 0 ? 0 : static_cast<std::int64_t>(off);
    }

    void check_sequential() {
        std::int64_t off = current_offset();
        if (off < last_offset_ && io_) ++io_->backward_seeks;
        last_offset_ = off;
    }

    void close_quietly() noexcept {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

    [[noreturn]] void fail(const char* what) const {
        throw io_error(std::string(what) + " failed for '" + path_.string() +
                       "': " + std::strerror(errno));
    }

    fs::path path_;
    IoAccounting* io_ = nullptr;
    int fd_ = -1;
    std::int64_t last_offset_ = 0;
};

} // namespace extbwt

#endif
