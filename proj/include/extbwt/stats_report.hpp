#ifndef EXTBWT_STATS_REPORT_HPP
#define EXTBWT_STATS_REPORT_HPP

#include "extbwt/error.hpp"
#include "extbwt/merge.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>

namespace extbwt {

/// stats.txt: one `key=value` line per counter. Timings are deliberately
/// absent so two builds of one input produce identical files.
inline void write_stats(const BuildStats& s, std::ostream& out) {
    out << "m=" << s.m << "\n"
        << "k=" << s.k << "\n"
        << "sigma=" << s.sigma << "\n"
        << "passes=" << s.passes << "\n"
        << "max_lcp=" << s.max_lcp << "\n"
        << "bytes_read=" << s.io.bytes_read << "\n"
        << "bytes_written=" << s.io.bytes_written << "\n"
        << "backward_seeks=" << s.io.backward_seeks << "\n"
        << "peak_resident_elements=" << s.peak_resident_elements << "\n"
        << "phase1_bytes_read=" << s.phase1.io.bytes_read << "\n"
        << "phase1_bytes_written=" << s.phase1.io.bytes_written << "\n";
    for (const auto& p : s.pass_stats) {
        const std::string key = "pass_" + std::to_string(p.level) + "_";
        out << key << "encoding_reads=" << p.encoding_reads << "\n"
            << key << "lcp_reads=" << p.lcp_reads << "\n"
            << key << "bwt_reads=" << p.bwt_reads << "\n"
            << key << "encoding_writes=" << p.encoding_writes << "\n"
            << key << "lcp_writes=" << p.lcp_writes << "\n"
            << key << "max_lcp=" << p.max_lcp << "\n"
            << key << "bytes_read=" << p.io.bytes_read << "\n"
            << key << "bytes_written=" << p.io.bytes_written << "\n";
    }
}

inline void write_stats_file(const BuildStats& s, const fs::path& path) {
    std::ofstream out(path, std::ios::trunc);
    write_stats(s, out);
    out.flush();
    if (!out) throw io_error("cannot write stats file '" + path.string() + "'");
}

inline BuildStats read_stats_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("no stats file at '" + path.string() + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto u = [&](const std::string& key) -> std::uint64_t {
        auto it = kv.find(key);
        if (it == kv.end()) throw io_error("stats file '" + path.string() + "' lacks key '" + key + "'");
        return std::stoull(it->second);
    };
    auto i = [&](const std::string& key) -> std::int64_t {
        auto it = kv.find(key);
        if (it == kv.end()) throw io_error("stats file '" + path.string() + "' lacks key '" + key + "'");
        return std::stoll(it->second);
    };
    BuildStats s;
    try {
        s.m = u("m");
        s.k = u("k");
        s.sigma = u("sigma");
        s.passes = u("passes");
        s.max_lcp = i("max_lcp");
        s.io.bytes_read = u("bytes_read");
        s.io.bytes_written = u("bytes_written");
        s.io.backward_seeks = u("backward_seeks");
        s.peak_resident_elements = u("peak_resident_elements");
        s.phase1.io.bytes_read = u("phase1_bytes_read");
        s.phase1.io.bytes_written = u("phase1_bytes_written");
        for (std::uint64_t p = 1; p <= s.passes; ++p) {
            const std::string key = "pass_" + std::to_string(p) + "_";
            PassStats ps;
            ps.level = p;
            ps.encoding_reads = u(key + "encoding_reads");
            ps.lcp_reads = u(key + "lcp_reads");
            ps.bwt_reads = u(key + "bwt_reads");
            ps.encoding_writes = u(key + "encoding_writes");
            ps.lcp_writes = u(key + "lcp_writes");
            ps.max_lcp = i(key + "max_lcp");
            ps.io.bytes_read = u(key + "bytes_read");
            ps.io.bytes_written = u(key + "bytes_written");
            s.pass_stats.push_back(ps);
        }
    } catch (const std::logic_error&) {
        throw io_error("stats file '" + path.string() + "' holds a malformed number");
    }
    return s;
}

inline void print_stats_table(const BuildStats& s, std::ostream& out) {
    out << "strings (m)             " << s.m << "\n"
        << "length (k)              " << s.k << "\n"
        << "alphabet (sigma)        " << s.sigma << "\n"
        << "merge passes            " << s.passes << "\n"
        << "max LCP (l)             " << s.max_lcp << "\n"
        << "bytes read              " << s.io.bytes_read << "\n"
        << "bytes written           " << s.io.bytes_written << "\n"
        << "backward seeks          " << s.io.backward_seeks << "\n"
        << "peak resident elements  " << s.peak_resident_elements << "\n\n";
    out << std::setw(5) << "pass" << std::setw(10) << "reads" << std::setw(10) << "writes" << std::setw(9)
        << "max_lcp" << std::setw(14) << "bytes_read" << std::setw(14) << "bytes_written" << "\n";
    for (const auto& p : s.pass_stats) {
        out << std::setw(5) << p.level << std::setw(10) << (p.encoding_reads + p.lcp_reads + p.bwt_reads)
            << std::setw(10) << (p.encoding_writes + p.lcp_writes) << std::setw(9) << p.max_lcp << std::setw(14)
            << p.io.bytes_read << std::setw(14) << p.io.bytes_written << "\n";
    }
}

} // namespace extbwt

#endif
