#ifndef EXTBWT_INGEST_HPP
#define EXTBWT_INGEST_HPP

#include "extbwt/alphabet.hpp"
#include "extbwt/error.hpp"
#include "extbwt/seq_list.hpp"
#include "extbwt/workspace.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extbwt {

enum class InputFormat { lines, fasta };

inline InputFormat parse_format(std::string_view name) {
    if (name == "lines") return InputFormat::lines;
    if (name == "fasta") return InputFormat::fasta;
    throw input_error("unknown input format '" + std::string(name) + "' (expected lines or fasta)");
}

/// One input string as read from the source, before symbol coding.
struct Record {
    std::uint64_t number = 0; // 1-based
    std::string name;
    std::string text;
};

/// Streams records from plain one-per-line text (LF or CRLF) or FASTA.
/// Blank lines are skipped in both formats.
class RecordReader {
public:
    RecordReader(std::istream& in, InputFormat format) : in_(in), format_(format) {}

    std::optional<Record> next() {
        return format_ == InputFormat::lines ? next_line() : next_fasta();
    }

private:
    bool getline(std::string& line) {
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

    std::optional<Record> next_line() {
        std::string line;
        while (getline(line)) {
            if (line.empty()) continue;
            Record r;
            r.number = ++count_;
            r.text = std::move(line);
            return r;
        }
        return std::nullopt;
    }

    std::optional<Record> next_fasta() {
        std::string line;
        if (!pending_header_) {
            while (getline(line)) {
                if (line.empty()) continue;
                if (line.front() != '>')
                    throw input_error("FASTA sequence data before the first '>' header");
                pending_header_ = line.substr(1);
                break;
            }
            if (!pending_header_) return std::nullopt;
        }
        Record r;
        r.number = ++count_;
        r.name = std::move(*pending_header_);
        pending_header_.reset();
        while (getline(line)) {
            if (line.empty()) continue;
            if (line.front() == '>') {
                pending_header_ = line.substr(1);
                break;
            }
            r.text += line;
        }
        return r;
    }

    std::istream& in_;
    InputFormat format_;
    std::uint64_t count_ = 0;
    std::optional<std::string> pending_header_;
};

inline std::string describe(const Record& r) {
    std::string s = "record " + std::to_string(r.number);
    if (!r.name.empty()) s += " ('" + r.name + "')";
    return s;
}

inline std::vector<SymbolCode> encode_record(const Record& r, const Alphabet& alphabet) {
    std::vector<SymbolCode> row;
    row.reserve(r.text.size());
    for (std::size_t i = 0; i < r.text.size(); ++i) {
        auto code = alphabet.code_of(r.text[i]);
        if (!code)
            throw alphabet_error("character '" + std::string(1, r.text[i]) + "' at position " +
                                 std::to_string(i + 1) + " of " + describe(r) +
                                 " is not in the alphabet");
        row.push_back(*code);
    }
    return row;
}

/// m equal-length strings of k symbols each, none of them the sentinel.
struct StringCollection {
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::vector<std::vector<SymbolCode>> rows;
    std::vector<std::string> source_ids;

    static StringCollection from_rows(std::vector<std::vector<SymbolCode>> rows) {
        StringCollection c;
        if (rows.empty()) throw empty_input_error("collection is empty");
        c.k = rows.front().size();
        if (c.k == 0) throw length_error("strings must have at least one symbol");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c.k)
                throw length_error("record " + std::to_string(i + 1) + " has length " +
                                   std::to_string(rows[i].size()) + ", expected " + std::to_string(c.k));
            for (auto s : rows[i])
                if (s == sentinel)
                    throw alphabet_error("record " + std::to_string(i + 1) + " contains the sentinel");
        }
        c.m = rows.size();
        c.rows = std::move(rows);
        return c;
    }
};

namespace detail {

/// Applies the equal-length rule incrementally while streaming records.
class LengthCheck {
public:
    void check(const Record& r, std::size_t length) {
        if (length == 0) throw length_error(describe(r) + " is empty");
        if (!k_) {
            k_ = length;
        } else if (*k_ != length) {
            throw length_error(describe(r) + " has length " + std::to_string(length) + ", expected " +
                               std::to_string(*k_));
        }
    }
    std::optional<std::uint64_t> k() const { return k_; }

private:
    std::optional<std::uint64_t> k_;
};

} // namespace detail

inline StringCollection load_collection(std::istream& source, InputFormat format, const Alphabet& alphabet) {
    RecordReader reader(source, format);
    detail::LengthCheck lengths;
    StringCollection c;
    while (auto r = reader.next()) {
        lengths.check(*r, r->text.size());
        c.rows.push_back(encode_record(*r, alphabet));
        c.source_ids.push_back(r->name);
    }
    if (c.rows.empty()) throw empty_input_error("input contains no strings");
    c.m = c.rows.size();
    c.k = *lengths.k();
    return c;
}

/// T_0..T_k where T_l[i] = s_i[k-l] (1-based positions) and T_k is all
/// sentinels.
struct ColumnSet {
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::vector<ListMeta> T;
};

inline std::string column_name(std::uint64_t l) { return "T_" + std::to_string(l); }

namespace detail {

class ColumnWriter {
public:
    ColumnWriter(std::uint64_t k, const Workspace& ws)
        : k_(k), handles_(ws.reserve(k + 1)) {
        writers_.reserve(static_cast<std::size_t>(k + 1));
        for (std::uint64_t l = 0; l <= k; ++l)
            writers_.emplace_back(ws.list(column_name(l)), symbol_width, false, ws.lists);
    }

    void add(const std::vector<SymbolCode>& row) {
        for (std::uint64_t l = 0; l < k_; ++l) writers_[l].append(row[k_ - 1 - l]);
        writers_[k_].append(sentinel);
        ++m_;
    }

    ColumnSet seal() {
        ColumnSet cs;
        cs.m = m_;
        cs.k = k_;
        for (auto& w : writers_) cs.T.push_back(w.seal());
        return cs;
    }

private:
    std::uint64_t k_;
    std::uint64_t m_ = 0;
    std::vector<ListWriter> writers_;
    MemoryLedger::Reservation handles_;
};

} // namespace detail

/// Writes the column lists of an in-memory collection.
inline ColumnSet compute_columns(const StringCollection& collection, const Workspace& ws) {
    detail::ColumnWriter out(collection.k, ws);
    for (const auto& row : collection.rows) out.add(row);
    return out.seal();
}

/// Single pass from source to column lists holding one record at a time.
/// The first record fixes k; every later record is checked against it.
inline ColumnSet stream_columns(std::istream& source, InputFormat format, const Alphabet& alphabet,
                                const Workspace& ws) {
    RecordReader reader(source, format);
    detail::LengthCheck lengths;
    std::optional<detail::ColumnWriter> out;
    std::optional<MemoryLedger::Reservation> record_slot;
    while (auto r = reader.next()) {
        lengths.check(*r, r->text.size());
        auto row = encode_record(*r, alphabet);
        if (!out) {
            out.emplace(row.size(), ws);
            record_slot.emplace(ws.reserve(row.size()));
        }
        out->add(row);
    }
    if (!out) throw empty_input_error("input contains no strings");
    return out->seal();
}

/// Reads T_{k-1}..T_0 back into rows; the inverse of compute_columns.
inline StringCollection collection_from_columns(const ColumnSet& columns, const ListConfig& config = {}) {
    std::vector<std::vector<SymbolCode>> rows(columns.m, std::vector<SymbolCode>(columns.k));
    for (std::uint64_t l = 0; l < columns.k; ++l) {
        ListReader r(columns.T[l], config);
        for (std::uint64_t i = 0; i < columns.m; ++i)
            rows[i][columns.k - 1 - l] = static_cast<SymbolCode>(r.next());
    }
    return StringCollection::from_rows(std::move(rows));
}

} // namespace extbwt

#endif
