#include "extbwt/multi_cursor.hpp"
#include "extbwt/seq_list.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <random>

namespace extbwt {
namespace {

using testing::TempDir;

std::vector<unsigned char> file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(SeqList, EmptyListHasNoBytes) {
    TempDir dir;
    ListWriter w(dir / "empty", 4, false, {});
    auto meta = w.seal();
    EXPECT_EQ(meta.length, 0u);
    EXPECT_EQ(fs::file_size(meta.data_path()), 0u);
    EXPECT_TRUE(read_all(meta).empty());
}

TEST(SeqList, Width4IsLittleEndian) {
    TempDir dir;
    auto meta = write_list(dir / "w4", 4, false, std::vector<int>{1, 2, 3});
    EXPECT_EQ(file_bytes(meta.data_path()),
              (std::vector<unsigned char>{1, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0}));
}

TEST(SeqList, SymbolListRoundTrip) {
    TempDir dir;
    const auto& a = testing::dna();
    auto meta = write_list(dir / "sym", 1, false, testing::codes(a, "TTA"));
    EXPECT_EQ(fs::file_size(meta.data_path()), 3u);
    EXPECT_EQ(testing::chars(a, read_all(meta)), "TTA");
}

TEST(SeqList, ManifestLine) {
    TempDir dir;
    auto meta = write_list(dir / "lcp", 1, true, std::vector<int>{-1, 0, 2});
    std::ifstream in(meta.meta_path());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "width=1 len=3 signed=1");
    auto back = read_manifest(dir / "lcp");
    EXPECT_EQ(back.width, 1u);
    EXPECT_EQ(back.length, 3u);
    EXPECT_TRUE(back.is_signed);
}

TEST(SeqList, AppendToBucket) {
    TempDir dir;
    ListWriter bucket(dir / "P_1", 4, false, {});
    bucket.append(3);
    EXPECT_EQ(read_all(bucket.seal()), (std::vector<std::int64_t>{3}));
}

TEST(SeqList, SignedSentinelRoundTrip) {
    TempDir dir;
    for (unsigned w : {1u, 4u, 8u}) {
        auto meta = write_list(dir / ("s" + std::to_string(w)), w, true, std::vector<int>{-1, 5, -1});
        EXPECT_EQ(read_all(meta), (std::vector<std::int64_t>{-1, 5, -1})) << "width " << w;
    }
}

TEST(SeqList, OutOfRangeValueIsRejected) {
    TempDir dir;
    ListWriter w(dir / "x", 4, false, {});
    EXPECT_THROW(w.append(std::int64_t{1} << 32), encoding_error);
    EXPECT_NO_THROW(w.append((std::int64_t{1} << 32) - 1));
    EXPECT_THROW(w.append(-1), encoding_error);

    ListWriter s(dir / "y", 1, true, {});
    EXPECT_THROW(s.append(128), encoding_error);
    EXPECT_THROW(s.append(-129), encoding_error);
    EXPECT_NO_THROW(s.append(127));
}

TEST(SeqList, InvalidWidthIsContractError) {
    TempDir dir;
    EXPECT_THROW(ListWriter(dir / "z", 2, false, {}), contract_error);
}

TEST(SeqList, ReaderRejectsTruncatedData) {
    TempDir dir;
    auto meta = write_list(dir / "t", 4, false, std::vector<int>{1, 2});
    fs::resize_file(meta.data_path(), 6);
    EXPECT_THROW(ListReader(meta, {}), io_error);
}

TEST(SeqList, ReadPastEndThrows) {
    TempDir dir;
    auto meta = write_list(dir / "t", 1, false, std::vector<int>{7});
    ListReader r(meta, {});
    EXPECT_EQ(r.next(), 7);
    EXPECT_TRUE(r.done());
    EXPECT_THROW(r.next(), contract_error);
}

TEST(SeqList, RoundTripProperty) {
    std::mt19937_64 rng(11);
    TempDir dir;
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned width = std::array<unsigned, 3>{1, 4, 8}[rng() % 3];
        const bool is_signed = rng() % 2;
        const std::size_t n = rng() % 300;
        const std::size_t buffer = 1 + rng() % 50;
        std::vector<std::int64_t> values;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t v;
            if (width == 8) {
                v = static_cast<std::int64_t>(rng() >> 1);
                if (is_signed && rng() % 2) v = -v;
            } else {
                const std::int64_t range = std::int64_t{1} << (8 * width - (is_signed ? 1 : 0));
                v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(range));
                if (is_signed && rng() % 2) v = -v - 1;
            }
            values.push_back(v);
        }
        ListConfig cfg{buffer, nullptr};
        auto meta = write_list(dir / "rt", width, is_signed, values, cfg);
        ASSERT_EQ(fs::file_size(meta.data_path()), values.size() * width);
        ASSERT_EQ(read_all(meta, cfg), values) << "trial " << trial;
    }
}

TEST(Concatenate, BucketsInOrder) {
    TempDir dir;
    std::vector<ListMeta> buckets{
        write_list(dir / "P_0", 4, false, std::vector<int>{}),
        write_list(dir / "P_1", 4, false, std::vector<int>{3}),
        write_list(dir / "P_2", 4, false, std::vector<int>{}),
        write_list(dir / "P_3", 4, false, std::vector<int>{}),
        write_list(dir / "P_4", 4, false, std::vector<int>{1, 2}),
    };
    auto n1 = concatenate(buckets, dir / "N_1", {});
    EXPECT_EQ(read_all(n1), (std::vector<std::int64_t>{3, 1, 2}));
    EXPECT_EQ(read_manifest(dir / "N_1").length, 3u);
}

TEST(Concatenate, AllEmpty) {
    TempDir dir;
    auto a = write_list(dir / "a", 1, false, std::vector<int>{});
    auto b = write_list(dir / "b", 1, false, std::vector<int>{});
    auto out = concatenate({a, b}, dir / "out", {});
    EXPECT_EQ(out.length, 0u);
    EXPECT_EQ(fs::file_size(out.data_path()), 0u);
}

TEST(Concatenate, PreservesOrder) {
    TempDir dir;
    auto a = write_list(dir / "a", 8, false, std::vector<int>{1});
    auto b = write_list(dir / "b", 8, false, std::vector<int>{});
    auto c = write_list(dir / "c", 8, false, std::vector<int>{2, 3});
    EXPECT_EQ(read_all(concatenate({a, b, c}, dir / "out", {ListConfig{8, nullptr}})),
              (std::vector<std::int64_t>{1, 2, 3}));
}

TEST(Concatenate, WidthMismatchIsContractError) {
    TempDir dir;
    auto a = write_list(dir / "a", 1, false, std::vector<int>{1});
    auto b = write_list(dir / "b", 4, false, std::vector<int>{1});
    EXPECT_THROW(concatenate({a, b}, dir / "out", {}), contract_error);
    auto s = write_list(dir / "s", 1, true, std::vector<int>{1});
    EXPECT_THROW(concatenate({a, s}, dir / "out", {}), contract_error);
}

TEST(Concatenate, AssociativeInContent) {
    std::mt19937_64 rng(5);
    TempDir dir;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ListMeta> parts;
        for (int i = 0; i < 3; ++i) {
            std::vector<std::int64_t> v(rng() % 20);
            for (auto& x : v) x = static_cast<std::int64_t>(rng() % 1000);
            parts.push_back(write_list(dir / ("part" + std::to_string(i)), 4, false, v));
        }
        auto ab = concatenate({parts[0], parts[1]}, dir / "ab", {});
        auto ab_c = concatenate({ab, parts[2]}, dir / "ab_c", {});
        auto abc = concatenate(parts, dir / "abc", {});
        ASSERT_EQ(read_all(ab_c), read_all(abc));
    }
}

TEST(SeekDetection, CountsBackwardSeeksOnly) {
    TempDir dir;
    IoAccounting io;
    ListConfig cfg{4, &io};
    auto meta = write_list(dir / "seq", 1, false, std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9}, cfg);
    read_all(meta, cfg);
    EXPECT_EQ(io.backward_seeks, 0u);

    RawFile f(meta.data_path(), RawFile::Mode::read, &io);
    std::array<std::byte, 4> buf{};
    f.read(buf);
    f.read(buf);
    f.seek(2);
    f.read(buf);
    EXPECT_EQ(io.backward_seeks, 1u);
}

TEST(SeekDetection, ByteCounters) {
    TempDir dir;
    IoAccounting io;
    ListConfig cfg{16, &io};
    auto meta = write_list(dir / "seq", 4, false, testing::iota_values(1, 10), cfg);
    EXPECT_EQ(io.bytes_written, 40u);
    read_all(meta, cfg);
    EXPECT_EQ(io.bytes_read, 40u);
    // 16-byte buffer -> 4+4+2 elements
    EXPECT_EQ(io.read_calls, 3u);
}

// --- reconstruct_interleave ------------------------------------------------

TEST(ReconstructInterleave, FourArrays) {
    TempDir dir;
    const auto& a = testing::dna();
    std::vector<ListMeta> v{
        write_list(dir / "V_0", 1, false, testing::codes(a, "TTA")),
        write_list(dir / "V_1", 1, false, testing::codes(a, "CGG")),
        write_list(dir / "V_2", 1, false, testing::codes(a, "ACC")),
        write_list(dir / "V_3", 1, false, testing::codes(a, "AAT")),
    };
    auto enc = write_list(dir / "I", 1, false, std::vector<int>{0, 2, 3, 3, 1, 2, 2, 1, 1, 0, 0, 3});
    auto w = reconstruct_interleave(enc, v, dir / "W", {});
    EXPECT_EQ(testing::chars(a, read_all(w)), "TAAACCCGGTAT");
}

TEST(ReconstructInterleave, SingleComponentIsIdentity) {
    TempDir dir;
    auto v0 = write_list(dir / "V_0", 4, false, std::vector<int>{9, 8, 7});
    auto enc = write_list(dir / "I", 1, false, std::vector<int>{0, 0, 0});
    std::vector<ListMeta> comps{v0};
    EXPECT_EQ(read_all(reconstruct_interleave(enc, comps, dir / "W", {})), read_all(v0));
}

TEST(ReconstructInterleave, PartialBwtsOfExampleReads) {
    TempDir dir;
    const auto& a = testing::dna();
    std::vector<ListMeta> b;
    const char* parts[] = {"TTA", "CGC", "ACC", "AAT", "$$$"};
    for (int l = 0; l < 5; ++l)
        b.push_back(write_list(dir / ("B_" + std::to_string(l)), 1, false, testing::codes(a, parts[l])));
    auto enc = write_list(dir / "I", 1, false, std::vector<int>{0, 0, 0, 1, 4, 3, 4, 2, 3, 3, 2, 2, 1, 1, 4});
    EXPECT_EQ(testing::chars(a, read_all(reconstruct_interleave(enc, b, dir / "W", {}))), "TTAC$A$AATCCGC$");
}

TEST(ReconstructInterleave, LevelBeyondComponents) {
    TempDir dir;
    std::vector<ListMeta> comps{write_list(dir / "V_0", 1, false, std::vector<int>{1})};
    auto enc = write_list(dir / "I", 1, false, std::vector<int>{1});
    EXPECT_THROW(reconstruct_interleave(enc, comps, dir / "W", {}), malformed_encoding_error);
}

TEST(ReconstructInterleave, ComponentExhaustedEarly) {
    TempDir dir;
    std::vector<ListMeta> comps{write_list(dir / "V_0", 1, false, std::vector<int>{1}),
                                write_list(dir / "V_1", 1, false, std::vector<int>{2})};
    auto enc = write_list(dir / "I", 1, false, std::vector<int>{0, 0});
    EXPECT_THROW(reconstruct_interleave(enc, comps, dir / "W", {}), malformed_encoding_error);
    auto short_enc = write_list(dir / "I2", 1, false, std::vector<int>{0});
    EXPECT_THROW(reconstruct_interleave(short_enc, comps, dir / "W", {}), malformed_encoding_error);
}

// Builds an interleave by the definition (each component keeps its order),
// then checks reconstruction and that psi is increasing per component.
TEST(ReconstructInterleave, RandomInterleavesProperty) {
    std::mt19937_64 rng(17);
    TempDir dir;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<std::vector<std::int64_t>> comps(n);
        for (auto& c : comps) {
            c.resize(rng() % 15);
            for (auto& x : c) x = static_cast<std::int64_t>(rng() % 200);
        }
        std::vector<std::int64_t> encoding;
        for (std::size_t i = 0; i < n; ++i) encoding.insert(encoding.end(), comps[i].size(), static_cast<std::int64_t>(i));
        std::shuffle(encoding.begin(), encoding.end(), rng);
        std::vector<std::int64_t> expected;
        std::vector<std::size_t> next(n, 0);
        std::vector<std::vector<std::size_t>> psi(n);
        for (std::size_t q = 0; q < encoding.size(); ++q) {
            auto i = static_cast<std::size_t>(encoding[q]);
            expected.push_back(comps[i][next[i]++]);
            psi[i].push_back(q);
        }
        for (const auto& positions : psi) ASSERT_TRUE(std::is_sorted(positions.begin(), positions.end()));

        std::vector<ListMeta> metas;
        for (std::size_t i = 0; i < n; ++i)
            metas.push_back(write_list(dir / ("V_" + std::to_string(i)), 4, false, comps[i]));
        auto enc = write_list(dir / "I", 1, false, encoding);
        IoAccounting io;
        auto w = reconstruct_interleave(enc, metas, dir / "W", ListConfig{8, &io});
        ASSERT_EQ(read_all(w), expected);
        ASSERT_EQ(io.backward_seeks, 0u);
    }
}

} // namespace
} // namespace extbwt
