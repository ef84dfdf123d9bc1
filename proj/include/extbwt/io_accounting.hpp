#ifndef EXTBWT_IO_ACCOUNTING_HPP
#define EXTBWT_IO_ACCOUNTING_HPP

#include <algorithm>
#include <cstdint>
#include <string>

namespace extbwt {

/// Byte and call counters fed by every RawFile that is bound to them.
///
/// A backward seek is recorded whenever the kernel file offset observed
/// before a read or write is smaller than the offset reached by the previous
/// operation on the same descriptor. The pipeline never seeks, so any
/// non-zero value means a pass was not purely sequential.
struct IoAccounting {
    std::uint64_t bytes_read = 0;
    std::uint64_t bytes_written = 0;
    std::uint64_t read_calls = 0;
    std::uint64_t write_calls = 0;
    std::uint64_t backward_seeks = 0;
    std::uint64_t files_opened = 0;

    IoAccounting& operator+=(const IoAccounting& o) {
        bytes_read += o.bytes_read;
        bytes_written += o.bytes_written;
        read_calls += o.read_calls;
        write_calls += o.write_calls;
        backward_seeks += o.backward_seeks;
        files_opened += o.files_opened;
        return *this;
    }

    friend IoAccounting operator-(IoAccounting a, const IoAccounting& b) {
        a.bytes_read -= b.bytes_read;
        a.bytes_written -= b.bytes_written;
        a.read_calls -= b.read_calls;
        a.write_calls -= b.write_calls;
        a.backward_seeks -= b.backward_seeks;
        a.files_opened -= b.files_opened;
        return a;
    }
};

/// Counts elements held in main memory by the algorithms (the T_l array,
/// alpha, cursor positions, bucket handles, level counters). I/O buffers are
/// not elements and are reported separately through ListConfig.
class MemoryLedger {
public:
    class Reservation {
    public:
        Reservation() = default;
        Reservation(MemoryLedger* ledger, std::uint64_t n) : ledger_(ledger), n_(n) {
            if (ledger_) ledger_->acquire(n_);
        }
        Reservation(Reservation&& o) noexcept : ledger_(o.ledger_), n_(o.n_) {
            o.ledger_ = nullptr;
        }
        Reservation& operator=(Reservation&& o) noexcept {
            if (this != &o) {
                reset();
                ledger_ = o.ledger_;
                n_ = o.n_;
                o.ledger_ = nullptr;
            }
            return *this;
        }
        Reservation(const Reservation&) = delete;
        Reservation& operator=(const Reservation&) = delete;
        ~Reservation() { reset(); }

        void reset() {
            if (ledger_) ledger_->release(n_);
            ledger_ = nullptr;
        }

    private:
        MemoryLedger* ledger_ = nullptr;
        std::uint64_t n_ = 0;
    };

    [[nodiscard]] Reservation reserve(std::uint64_t n) { return Reservation(this, n); }

    std::uint64_t current() const { return current_; }
    std::uint64_t peak() const { return peak_; }

private:
    void acquire(std::uint64_t n) {
        current_ += n;
        peak_ = std::max(peak_, current_);
    }
    void release(std::uint64_t n) { current_ -= n; }

    std::uint64_t current_ = 0;
    std::uint64_t peak_ = 0;
};

} // namespace extbwt

#endif
