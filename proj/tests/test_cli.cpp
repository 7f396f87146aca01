#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hlcheck_app.hpp"
#include "numeric_flags.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hlcheck");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = hlcheck::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / ("hlcheck_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

// Runs the real binary; returns its exit status (128 + signal if killed).
int run_binary(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + HLCHECK_BIN + std::string(" ") + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return 128 + WTERMSIG(status);
}

} // namespace

// --- numeric flags ----------------------------------------------------------------

TEST(NumericFlags, ScientificNotation) {
    using hlcheck::parse_integer_flag;
    EXPECT_EQ(parse_integer_flag("100000"), 100000);
    EXPECT_EQ(parse_integer_flag("1e8"), 100'000'000);
    EXPECT_EQ(parse_integer_flag("2.5e3"), 2500);
    EXPECT_EQ(parse_integer_flag("1E2"), 100);
    EXPECT_EQ(parse_integer_flag("-3"), -3);
    EXPECT_EQ(parse_integer_flag("1200e-2"), 12);
    EXPECT_EQ(parse_integer_flag("0.0e5"), 0);
    EXPECT_EQ(parse_integer_flag("9223372036854775807"), INT64_MAX);
    EXPECT_THROW(parse_integer_flag("2.5"), std::invalid_argument);
    EXPECT_THROW(parse_integer_flag("1e-1"), std::invalid_argument);
    EXPECT_THROW(parse_integer_flag("1e19"), std::invalid_argument);
    EXPECT_THROW(parse_integer_flag("abc"), std::invalid_argument);
    EXPECT_THROW(parse_integer_flag("12x"), std::invalid_argument);
    EXPECT_THROW(parse_integer_flag("1e"), std::invalid_argument);
    EXPECT_THROW(parse_integer_flag(""), std::invalid_argument);
    EXPECT_DOUBLE_EQ(hlcheck::parse_real_flag("1e300"), 1e300);
    EXPECT_THROW(hlcheck::parse_real_flag("1e3x"), std::invalid_argument);
}

// --- verify ------------------------------------------------------------------------

TEST_F(Cli, VerifySmall) {
    const auto r = run_cli({"verify", "--max-sum", "20"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "pairs 81\n"));
    EXPECT_TRUE(contains(r.out, "greater 0\n"));
    const auto one = run_cli({"verify", "--max-sum", "4"});
    EXPECT_TRUE(contains(one.out, "pairs 1\nless 0\nequal 1\n"));
    EXPECT_EQ(run_cli({"verify", "--max-sum", "3"}).code, 1);
    EXPECT_EQ(run_cli({"verify"}).code, 1);
}

TEST_F(Cli, VerifyGreaterExitsTwoWithDump) {
    hlprime::VerifyCensus census;
    census.pairs = 2;
    census.n_less = 1;
    census.n_greater = 1;
    census.greater.push_back(hlprime::make_verdict(7, 9, 4, 4, 9));
    std::ostringstream out, err;
    const int code = hlcheck::report_verify(census, path("dump.csv"), out, err);
    EXPECT_EQ(code, hlcheck::kExitSurprise);
    EXPECT_EQ(slurp(path("dump.csv")), "x,y,pi_x,pi_y,pi_xy,margin,class\n7,9,4,4,9,-1,GREATER\n");
    EXPECT_TRUE(contains(err.str(), "GREATER FOUND"));
}

// --- scan -----------------------------------------------------------------------------

TEST_F(Cli, ScanExplicitPairs) {
    const auto r = run_cli({"scan", "--family", "explicit", "--pairs", "2:2,10:10,100:100", "--out", path("e.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(path("e.csv"));
    EXPECT_TRUE(contains(csv, "\n2,2,1,1,2,0,EQUAL,"));
    EXPECT_TRUE(contains(csv, "\n10,10,4,4,8,0,EQUAL,"));
    EXPECT_TRUE(contains(csv, "\n100,100,25,25,46,4,LESS,"));
    EXPECT_TRUE(fs::exists(path("e.jsonl")));
    const auto rep = hlprime::read_jsonl(path("e.jsonl"));
    EXPECT_EQ(rep.rows.size(), 3u);
    EXPECT_TRUE(contains(rep.meta.command, "--pairs"));
}

TEST_F(Cli, ScanLogPowerGrid) {
    const auto r = run_cli({"scan", "--family", "logpow", "--c", "1", "--xmin", "1e4", "--xmax", "1e8", "--points",
                            "200", "--out", path("l.csv"), "--plot", path("l.dat"), "--oracle-check", "0.02"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "rows 200 (skipped 0)"));
    EXPECT_TRUE(contains(r.out, "less 200\n"));
    EXPECT_TRUE(contains(r.out, "rows re-verified by trial division")) << r.out;
    const auto rows = hlprime::read_csv(path("l.csv"));
    EXPECT_EQ(rows.size(), 200u);
    EXPECT_EQ(slurp(path("l.dat")).substr(0, 11), "# x margin\n");
}

TEST_F(Cli, ScanErrors) {
    const auto nc = run_cli({"scan", "--family", "logpow", "--xmin", "1e4", "--xmax", "1e6", "--out", path("a.csv")});
    EXPECT_EQ(nc.code, 1);
    EXPECT_TRUE(contains(nc.err, "usage error"));
    EXPECT_TRUE(contains(nc.err, "--c"));

    const auto sk = run_cli({"scan", "--family", "sqrtlog3", "--xmin", "1e4", "--xmax", "1e6", "--out", path("b.csv")});
    EXPECT_EQ(sk.code, 1);
    EXPECT_TRUE(contains(sk.err, "skipped"));
    EXPECT_FALSE(fs::exists(path("b.csv")));

    EXPECT_EQ(run_cli({"scan", "--family", "nope", "--xmin", "10", "--xmax", "100"}).code, 1);
    EXPECT_EQ(run_cli({"scan", "--family", "logpow", "--c", "1", "--xmin", "100", "--xmax", "100"}).code, 1);
    EXPECT_EQ(run_cli({"scan", "--family", "logpow", "--c", "1", "--xmin", "1.5e2", "--xmax", "2.5"}).code, 1);
    const auto lim = run_cli({"--limit", "1000", "scan", "--family", "logpow", "--c", "0", "--xmin", "100", "--xmax",
                              "1000", "--out", path("c.csv")});
    EXPECT_EQ(lim.code, 1);
    EXPECT_TRUE(contains(lim.err, "--limit"));
    const auto plot = run_cli({"scan", "--family", "logpow", "--c", "1", "--xmin", "100", "--xmax", "1000", "--out",
                               path("d.csv"), "--plot", path("d.dat"), "--plot-columns", "x,wrong"});
    EXPECT_EQ(plot.code, 1);
    EXPECT_TRUE(contains(plot.err, "valid columns"));
}

TEST_F(Cli, ScanMemoryBudgetFallsBackToSublinear) {
    ::setenv("HL_MEM_BUDGET_MB", "1", 1);
    const auto r = run_cli({"scan", "--family", "logpow", "--c", "1", "--xmin", "1e6", "--xmax", "1e7", "--points",
                            "5", "--out", path("m.csv")});
    ::unsetenv("HL_MEM_BUDGET_MB");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "sublinear"));
    ::setenv("HL_MEM_BUDGET_MB", "1", 1);
    const auto forced = run_cli({"--method", "sieve", "mv", "--x", "1e8", "--h", "10"});
    ::unsetenv("HL_MEM_BUDGET_MB");
    EXPECT_EQ(forced.code, 1);
    EXPECT_TRUE(contains(forced.err, "budget"));
}

TEST_F(Cli, ThreadCountAndKillResumeGiveIdenticalCsv) {
    const std::string grid = "scan --family logpow --c 1 --xmin 1e3 --xmax 1e6 --points 300";
    ASSERT_EQ(run_binary("--threads 1 " + grid + " --out " + path("one.csv")), 0);
    ASSERT_EQ(run_binary("--threads 4 " + grid + " --out " + path("four.csv")), 0);
    const std::string cp = " --checkpoint " + path("cp") + " --out " + path("res.csv");
    EXPECT_EQ(run_binary("--threads 2 " + grid + cp, "HL_ABORT_AFTER_ROWS=128"), 137);
    EXPECT_FALSE(fs::exists(path("res.csv")));
    EXPECT_EQ(hlprime::checkpoint_load(path("cp")).rows, 128u);
    ASSERT_EQ(run_binary("--threads 3 " + grid + cp), 0);
    const std::string one = slurp(path("one.csv"));
    EXPECT_GT(one.size(), 1000u);
    EXPECT_EQ(one, slurp(path("four.csv")));
    EXPECT_EQ(one, slurp(path("res.csv")));
    // a different grid must not pick up this checkpoint
    EXPECT_EQ(run_binary("scan --family logpow --c 1 --xmin 1e3 --xmax 1e6 --points 301" + cp), 1);
}

// --- audit ------------------------------------------------------------------------------

TEST_F(Cli, Audit) {
    const auto rh = run_cli({"audit", "--theorem", "2", "--K", "1", "--xmin", "1e6", "--xmax", "1e30", "--out",
                             path("a.jsonl")});
    ASSERT_EQ(rh.code, 0) << rh.err;
    EXPECT_TRUE(contains(rh.out, "crossing x 467731880.67")) << rh.out;
    EXPECT_TRUE(fs::exists(path("a.jsonl")));

    const auto warn = run_cli({"audit", "--theorem", "2", "--c", "3", "--xmin", "1e6", "--xmax", "1e30"});
    EXPECT_EQ(warn.code, 0);
    EXPECT_TRUE(contains(warn.err, "ignored"));

    const auto un = run_cli({"audit", "--theorem", "1", "--c", "1", "--K", "1"});
    EXPECT_EQ(un.code, 0);
    EXPECT_TRUE(contains(un.out, "crossing x 4.017143874")) << un.out;

    const auto hold = run_cli({"audit", "--theorem", "2", "--xmin", "1e6", "--xmax", "1e7", "--table"});
    EXPECT_TRUE(contains(hold.out, "holds on the whole grid"));
    EXPECT_TRUE(contains(hold.out, "x lhs rhs holds\n1000000 0.999999241546 1.14256588319 1\n")) << hold.out;

    EXPECT_EQ(run_cli({"audit", "--theorem", "2", "--K", "0"}).code, 1);
    EXPECT_EQ(run_cli({"audit", "--theorem", "2", "--K", "-1"}).code, 1);
    EXPECT_EQ(run_cli({"audit", "--theorem", "1"}).code, 1);
    EXPECT_EQ(run_cli({"audit", "--theorem", "3", "--c", "1"}).code, 1);
    EXPECT_EQ(run_cli({"audit", "--theorem", "2", "--xmin", "10"}).code, 1);
}

// --- mv, maier, psistat, census -------------------------------------------------------------

TEST_F(Cli, MvSinglePoint) {
    const auto r = run_cli({"mv", "--x", "100", "--h", "10"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "x 100 h 10 count 4 bound 8.685889638 holds")) << r.out;
    const auto two = run_cli({"mv", "--x", "2", "--h", "2"});
    EXPECT_TRUE(contains(two.out, "count 1 bound 5.770780164 holds")) << two.out;
    EXPECT_EQ(run_cli({"mv", "--x", "100", "--h", "1"}).code, 1);
    EXPECT_EQ(run_cli({"mv"}).code, 1);
}

TEST_F(Cli, MvGridWithOutputs) {
    const auto r = run_cli({"mv", "--xmin", "100", "--xmax", "1e6", "--points", "20", "--out", path("m.jsonl"),
                            "--csv", path("m.csv")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "checks 80 failures 0"));
    EXPECT_EQ(hlprime::io_detail::read_file(path("m.csv")).substr(0, 17), "x,h,lhs,rhs,holds");
}

TEST_F(Cli, Maier) {
    const auto r = run_cli({"maier", "--r", "2", "--x", "1e4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "x 10000 h 84 count 8 ratio 0.8685889638 e^gamma/r 0.890536209")) << r.out;
    const auto bad = run_cli({"maier", "--r", "1", "--x", "1e4"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(contains(bad.err, "r > 1"));
    EXPECT_EQ(run_cli({"maier", "--r", "2", "--xmin", "100", "--xmax", "50"}).code, 1);
}

TEST_F(Cli, Psistat) {
    const auto r = run_cli({"psistat", "--x", "100"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "psi 94.0453112293574")) << r.out;
    EXPECT_TRUE(contains(r.out, "deviation -0.255316466")) << r.out;
    EXPECT_EQ(run_cli({"psistat", "--x", "10"}).code, 1);
}

TEST_F(Cli, Census) {
    const auto r = run_cli({"census", "--r", "1", "--xmin", "10", "--xmax", "20", "--out", path("c.jsonl")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "points 11\n"));
    std::istringstream in(slurp(path("c.jsonl")));
    std::string line;
    std::vector<nlohmann::json> lines;
    while (std::getline(in, line)) lines.push_back(nlohmann::json::parse(line));
    ASSERT_EQ(lines.size(), 12u);
    EXPECT_EQ(lines[0]["type"], "meta");
    EXPECT_EQ(lines[0]["n_less"].get<int>() + lines[0]["n_equal"].get<int>() + lines[0]["n_greater"].get<int>(), 11);
    EXPECT_EQ(lines[1]["x"], 10);
    EXPECT_EQ(lines[1]["y"], 2);
}

TEST_F(Cli, UsageAndHelp) {
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    EXPECT_EQ(run_cli({"--threads", "0", "verify", "--max-sum", "10"}).code, 1);
    EXPECT_EQ(run_cli({"--method", "magic", "verify", "--max-sum", "10"}).code, 1);
}
