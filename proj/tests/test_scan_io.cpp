#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hlprime/checkpoint.hpp"
#include "hlprime/scan.hpp"
#include "hlprime/scan_io.hpp"

using namespace hlprime;
namespace fs = std::filesystem;

namespace {

const PrimeCounter& counter() {
    static const PrimeCounter c(4'000'000, CountMethod::SieveTable);
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / ("hlprime_io_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

ScanReport sample_report() {
    return scan(counter(), RangeFamily::log_power(1), GridSpec::geometric(100, 1'000'000, 120));
}

} // namespace

// --- CSV ---------------------------------------------------------------------

using CsvTest = TempDir;

TEST_F(CsvTest, RowFormatting) {
    const auto rep = scan(counter(), RangeFamily::explicit_pairs({{100, 100}}), {});
    const std::string line = csv_line(rep.rows[0]);
    EXPECT_EQ(line.rfind("100,100,25,25,46,4,LESS,", 0), 0u) << line;
    EXPECT_EQ(line.back(), '0');
}

TEST_F(CsvTest, SkippedRowsLeaveCountsEmpty) {
    ScanRow r;
    r.x = 5;
    r.y = 9;
    r.skipped = true;
    r.err_rh = 2.5;
    EXPECT_EQ(csv_line(r), "5,9,,,,,,,2.5,,1");
}

TEST_F(CsvTest, EmptyReportIsHeaderOnly) {
    ScanReport rep;
    write_csv(rep, path("e.csv"));
    EXPECT_EQ(slurp(path("e.csv")), std::string(kCsvHeader) + "\n");
    EXPECT_TRUE(read_csv(path("e.csv")).empty());
}

TEST_F(CsvTest, RewriteIsByteIdentical) {
    const auto rep = sample_report();
    write_csv(rep, path("a.csv"));
    write_csv(rep, path("b.csv"));
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    const auto again = sample_report();
    write_csv(again, path("c.csv"));
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("c.csv")));
}

TEST_F(CsvTest, RoundTrip) {
    auto rep = sample_report();
    ScanRow skipped;
    skipped.x = 3;
    skipped.y = 7;
    skipped.y_real = 7;
    skipped.skipped = true;
    skipped.err_rh = 1.0;
    skipped.err_uncond = 2.0;
    rep.rows.push_back(skipped);
    write_csv(rep, path("r.csv"));
    const auto back = read_csv(path("r.csv"));
    ASSERT_EQ(back.size(), rep.rows.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        ScanRow want = rep.rows[i];
        want.y_real = static_cast<double>(want.y);
        EXPECT_EQ(back[i], want) << i;
    }
}

TEST_F(CsvTest, ParseErrorsCarryOffsets) {
    const std::string header(kCsvHeader);
    io_detail::write_file(path("bad.csv"), header + "\n1,2,3\n");
    try {
        read_csv(path("bad.csv"));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), header.size() + 1);
    }
    io_detail::write_file(path("hdr.csv"), "nope\n");
    EXPECT_THROW(read_csv(path("hdr.csv")), ParseError);
    EXPECT_THROW(write_csv(ScanReport{}, path("missing/dir/x.csv")), std::runtime_error);
}

// --- JSONL -------------------------------------------------------------------

using JsonlTest = TempDir;

TEST_F(JsonlTest, RoundTripIsExact) {
    auto rep = sample_report();
    rep.meta.command = "hlcheck scan --family logpow";
    rep.meta.seed = 99;
    write_jsonl(rep, path("r.jsonl"));
    const auto back = read_jsonl(path("r.jsonl"));
    EXPECT_EQ(back.rows, rep.rows);
    EXPECT_EQ(scan_identity(back.meta), scan_identity(rep.meta));
    EXPECT_EQ(back.meta.command, rep.meta.command);
    EXPECT_EQ(back.meta.seed, 99u);
    EXPECT_EQ(back.meta.wall_time_s, rep.meta.wall_time_s);
}

TEST_F(JsonlTest, MetaForEveryFamily) {
    for (const RangeFamily& f : {RangeFamily::fixed_ratio(0.25), RangeFamily::log_power(2),
                                 RangeFamily::sqrt_log_cube(3), RangeFamily::short_interval(1.5),
                                 RangeFamily::explicit_pairs({{2, 2}, {7, 9}})}) {
        ScanMeta m;
        m.family = f;
        m.grid = GridSpec::arithmetic(10, 100, 3);
        m.counter_limit = 1234;
        m.method = CountMethod::Sublinear;
        const auto back = meta_from_json(meta_json(m));
        EXPECT_EQ(scan_identity(back), scan_identity(m));
        EXPECT_EQ(scan_hash(back), scan_hash(m));
    }
}

TEST_F(JsonlTest, HashIgnoresThreadsAndTime) {
    ScanMeta a, b;
    a.family = b.family = RangeFamily::log_power(1);
    b.threads = 8;
    b.wall_time_s = 12.5;
    b.command = "anything";
    EXPECT_EQ(scan_hash(a), scan_hash(b));
    b.c0 = 0.3;
    EXPECT_NE(scan_hash(a), scan_hash(b));
}

TEST_F(JsonlTest, BadLineOffset) {
    const auto rep = sample_report();
    std::string text = to_jsonl(rep);
    const std::size_t where = text.size();
    text += "{not json}\n";
    try {
        parse_jsonl(text);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), where);
    }
    EXPECT_THROW(parse_jsonl(""), ParseError);
    EXPECT_THROW(parse_jsonl("{\"type\":\"row\"}\n"), ParseError);
}

TEST_F(JsonlTest, CsvAndJsonlAgree) {
    const auto rep = sample_report();
    write_csv(rep, path("a.csv"));
    write_jsonl(rep, path("a.jsonl"));
    const auto from_csv = read_csv(path("a.csv"));
    const auto from_json = read_jsonl(path("a.jsonl")).rows;
    ASSERT_EQ(from_csv.size(), from_json.size());
    for (std::size_t i = 0; i < from_csv.size(); ++i) {
        ScanRow j = from_json[i];
        j.y_real = static_cast<double>(j.y);
        EXPECT_EQ(from_csv[i], j);
    }
}

// --- plot data ---------------------------------------------------------------

using PlotTest = TempDir;

TEST_F(PlotTest, ColumnsAndRows) {
    auto rep = sample_report();
    ScanRow s;
    s.x = 1;
    s.skipped = true;
    rep.rows.insert(rep.rows.begin(), s);
    write_plotdata(rep, path("p.dat"), {"x", "margin"});
    std::istringstream in(slurp(path("p.dat")));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# x margin");
    std::size_t n = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::int64_t x, m;
        ASSERT_TRUE(ls >> x >> m);
        EXPECT_EQ(x, rep.rows[n + 1].x);
        EXPECT_EQ(m, rep.rows[n + 1].margin);
        ++n;
    }
    EXPECT_EQ(n, rep.rows.size() - 1);
}

TEST_F(PlotTest, Log10Column) {
    const auto rep = scan(counter(), RangeFamily::explicit_pairs({{1000, 10}}), {});
    write_plotdata(rep, path("l.dat"), {"log10_x"});
    std::istringstream in(slurp(path("l.dat")));
    std::string header;
    double v = 0;
    std::getline(in, header);
    in >> v;
    EXPECT_DOUBLE_EQ(v, 3.0);
}

TEST_F(PlotTest, UnknownColumn) {
    try {
        write_plotdata(sample_report(), path("u.dat"), {"x", "bogus"});
        FAIL();
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("bogus"), std::string::npos);
        EXPECT_NE(msg.find("err_uncond"), std::string::npos);
    }
}

// --- checkpoints ---------------------------------------------------------------

using CheckpointTest = TempDir;

TEST_F(CheckpointTest, SaveLoad) {
    const Checkpoint cp{0xdeadbeef12345678ull, 987654321, 42};
    checkpoint_save(cp, path("cp"));
    EXPECT_EQ(checkpoint_load(path("cp")), cp);
    EXPECT_FALSE(fs::exists(path("cp.tmp")));
    const Checkpoint neg{1, -5, 0};
    EXPECT_EQ(parse_checkpoint(checkpoint_text(neg)), neg);
}

TEST_F(CheckpointTest, CorruptFilesReportOffsets) {
    const std::string good = checkpoint_text({0xabcull, 77, 3});
    const std::size_t rows_at = good.find("rows");
    std::string bad = good;
    bad.replace(rows_at + 5, 1, "x");
    try {
        parse_checkpoint(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), rows_at + 5);
    }
    try {
        parse_checkpoint(good.substr(0, rows_at));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), rows_at);
    }
    EXPECT_THROW(parse_checkpoint("garbage\n"), ParseError);
    EXPECT_THROW(parse_checkpoint(good + "extra\n"), ParseError);
}

namespace {

struct Interrupt {};

} // namespace

TEST_F(CheckpointTest, ResumeAfterInterruptMatchesUninterrupted) {
    const auto fam = RangeFamily::log_power(1);
    const auto grid = GridSpec::geometric(100, 1'000'000, 300);
    ScanOptions opts;
    opts.chunk_rows = 50;
    const auto whole = scan(counter(), fam, grid, opts);

    const std::string cp = path("scan.cp");
    EXPECT_THROW(resumable_scan(counter(), fam, grid, opts, cp,
                                [](const Checkpoint& c) {
                                    if (c.rows >= 100) throw Interrupt{};
                                }),
                 Interrupt);
    EXPECT_EQ(checkpoint_load(cp).rows, 100u);

    // a torn line after the checkpointed rows, as a kill mid-append leaves
    {
        std::ofstream j(journal_path(cp), std::ios::app | std::ios::binary);
        j << "{\"x\":12";
    }
    opts.threads = 3;
    const auto resumed = resumable_scan(counter(), fam, grid, opts, cp);
    EXPECT_EQ(resumed.rows, whole.rows);
    EXPECT_EQ(to_csv(resumed), to_csv(whole));
    EXPECT_EQ(checkpoint_load(cp).rows, whole.rows.size());

    // finished checkpoint: nothing left to do, same rows again
    const auto again = resumable_scan(counter(), fam, grid, opts, cp);
    EXPECT_EQ(again.rows, whole.rows);
}

TEST_F(CheckpointTest, ChangedGridIsRejected) {
    const auto fam = RangeFamily::log_power(1);
    ScanOptions opts;
    opts.chunk_rows = 10;
    const std::string cp = path("scan.cp");
    EXPECT_THROW(resumable_scan(counter(), fam, GridSpec::geometric(100, 100'000, 40), opts, cp,
                                [](const Checkpoint&) { throw Interrupt{}; }),
                 Interrupt);
    EXPECT_THROW(resumable_scan(counter(), fam, GridSpec::geometric(100, 100'000, 41), opts, cp), ResumeMismatch);
    EXPECT_THROW(resumable_scan(counter(), RangeFamily::log_power(2), GridSpec::geometric(100, 100'000, 40), opts, cp),
                 ResumeMismatch);
}

TEST_F(CheckpointTest, ShortJournalIsRejected) {
    const auto fam = RangeFamily::log_power(1);
    const auto grid = GridSpec::geometric(100, 100'000, 40);
    ScanOptions opts;
    opts.chunk_rows = 10;
    const std::string cp = path("scan.cp");
    EXPECT_THROW(resumable_scan(counter(), fam, grid, opts, cp,
                                [](const Checkpoint& c) {
                                    if (c.rows >= 20) throw Interrupt{};
                                }),
                 Interrupt);
    io_detail::write_file(journal_path(cp), "");
    EXPECT_THROW(resumable_scan(counter(), fam, grid, opts, cp), ResumeMismatch);
}
