// hlcheck_app.hpp
// The hlcheck command line, kept in a header so tests can drive run() with
// captured streams.
//
// Exit codes: 0 success, 1 operational/usage failure, 2 a mathematical
// surprise (a Greater verdict in verify/scan, a failed window bound in mv).

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlprime/hlprime.hpp"
#include "numeric_flags.hpp"

namespace hlcheck {

using hlprime::CountMethod;
using hlprime::PrimeCounter;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSurprise = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GlobalFlags {
    std::string limit;
    std::string method = "auto";
    unsigned threads = hlprime::default_threads();
    double c0 = 0.2018;
    std::uint64_t seed = 1;
};

struct GridFlags {
    std::string x;
    std::string xmin;
    std::string xmax;
    std::string points;
    std::string step;
    std::string out;
    std::string csv;

    void add_to(CLI::App* sub, bool with_single) {
        if (with_single) sub->add_option("--x", x, "single x (instead of a grid)");
        sub->add_option("--xmin", xmin, "grid lower end (scientific notation ok)");
        sub->add_option("--xmax", xmax, "grid upper end");
        auto* p = sub->add_option("--points", points, "geometric grid point count");
        auto* s = sub->add_option("--step", step, "arithmetic grid step");
        p->excludes(s);
    }

    std::optional<hlprime::GridSpec> grid(std::int64_t default_points = 200) const {
        if (xmin.empty() && xmax.empty()) return std::nullopt;
        if (xmin.empty() || xmax.empty()) throw UsageError("--xmin and --xmax must be given together");
        const auto lo = parse_integer_flag(xmin, "--xmin");
        const auto hi = parse_integer_flag(xmax, "--xmax");
        if (lo >= hi) throw UsageError("empty grid: need --xmin < --xmax");
        if (!step.empty()) {
            const auto st = parse_integer_flag(step, "--step");
            if (st < 1) throw UsageError("--step must be >= 1");
            return hlprime::GridSpec::arithmetic(lo, hi, st);
        }
        const auto n = points.empty() ? default_points : parse_integer_flag(points, "--points");
        if (n < 1) throw UsageError("empty grid: --points must be >= 1");
        return hlprime::GridSpec::geometric(lo, hi, n);
    }

    /// --x or the grid's values; at least one must be given.
    std::vector<std::int64_t> xs(std::int64_t default_points = 200) const {
        if (!x.empty()) {
            if (!xmin.empty() || !xmax.empty()) throw UsageError("--x excludes --xmin/--xmax");
            return {parse_integer_flag(x, "--x")};
        }
        const auto g = grid(default_points);
        if (!g) throw UsageError("give --x or --xmin/--xmax");
        return hlprime::grid_values(*g);
    }
};

inline std::string join_command(int argc, const char* const* argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        std::string a = argv[i];
        const bool quote = a.empty() || a.find_first_of(" \t\"'$\\") != std::string::npos;
        if (i) s += ' ';
        if (quote) {
            s += '\'';
            for (const char ch : a) s += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
            s += '\'';
        } else {
            s += a;
        }
    }
    return s;
}

inline std::string fmt(double v, int prec = 10) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

inline std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Prints the verify tallies; on any Greater verdict writes them all to
/// `dump` and returns the math-surprise code.
inline int report_verify(const hlprime::VerifyCensus& census, const std::string& dump, std::ostream& out,
                         std::ostream& err) {
    out << "pairs " << census.pairs << "\n"
        << "less " << census.n_less << "\n"
        << "equal " << census.n_equal << "\n"
        << "greater " << census.n_greater << "\n";
    if (census.n_greater == 0) return kExitOk;

    std::vector<std::vector<std::string>> rows;
    for (const auto& v : census.greater) {
        rows.push_back({std::to_string(v.x), std::to_string(v.y), std::to_string(v.pi_x), std::to_string(v.pi_y),
                        std::to_string(v.pi_xy), std::to_string(v.margin), std::string(hlprime::to_token(v.relation))});
    }
    hlprime::write_records_csv(dump, "x,y,pi_x,pi_y,pi_xy,margin,class", rows);
    err << "GREATER FOUND: " << census.n_greater << " pair(s) with pi(x+y) > pi(x)+pi(y); first (x="
        << census.greater.front().x << ", y=" << census.greater.front().y << "); written to " << dump << "\n";
    return kExitSurprise;
}

class App {
public:
    App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        command_ = join_command(argc, argv);
        CLI::App app{"hlcheck: exact prime counts and Hardy-Littlewood inequality checks"};
        app.set_help_flag("--help", "print help");
        app.require_subcommand(1);
        app.fallthrough();
        app.add_option("--limit", global_.limit, "counter limit (default: what the run needs)");
        app.add_option("--method", global_.method, "auto, sieve, or sublinear")
            ->check(CLI::IsMember({"auto", "sieve", "sublinear"}));
        app.add_option("--threads", global_.threads, "worker threads")->check(CLI::PositiveNumber);
        app.add_option("--c0", global_.c0, "de la Vallee Poussin constant")->check(CLI::PositiveNumber);
        app.add_option("--seed", global_.seed, "seed for randomized subsampling");

        setup_verify(app);
        setup_scan(app);
        setup_audit(app);
        setup_mv(app);
        setup_maier(app);
        setup_psistat(app);
        setup_census(app);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out_, err_);
            return code == 0 ? kExitOk : kExitFailure;
        }
        try {
            return action_();
        } catch (const UsageError& e) {
            err_ << "usage error: " << e.what() << "\n";
        } catch (const std::invalid_argument& e) {
            err_ << "usage error: " << e.what() << "\n";
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << "\n";
        }
        return kExitFailure;
    }

private:
    // --- shared plumbing ---------------------------------------------------

    PrimeCounter make_counter(std::int64_t needed) const {
        std::int64_t limit = std::max<std::int64_t>(needed, 4);
        if (!global_.limit.empty()) {
            limit = parse_integer_flag(global_.limit, "--limit");
            if (limit < needed) {
                throw std::out_of_range("--limit " + std::to_string(limit) + " is below the " +
                                        std::to_string(needed) + " this run needs");
            }
        }
        return PrimeCounter(limit, resolve_method(limit));
    }

    CountMethod resolve_method(std::int64_t limit) const {
        if (global_.method != "auto") return hlprime::parse_count_method(global_.method);
        const auto budget = hlprime::MemoryBudget::from_env();
        const bool fits = PrimeCounter::memory_estimate(limit, CountMethod::SieveTable) <= budget.bytes / 2;
        return fits && limit <= (std::int64_t{1} << 32) ? CountMethod::SieveTable : CountMethod::Sublinear;
    }

    nlohmann::json run_meta(const std::string& subcommand, const PrimeCounter* counter) const {
        nlohmann::json m;
        m["subcommand"] = subcommand;
        m["command"] = command_;
        m["engine_version"] = hlprime::kEngineVersion;
        m["seed"] = global_.seed;
        m["c0"] = global_.c0;
        if (counter) {
            m["counter_limit"] = counter->limit();
            m["method"] = std::string(hlprime::to_string(counter->method()));
        }
        return m;
    }

    // --- verify ------------------------------------------------------------

    void setup_verify(CLI::App& app) {
        auto* sub = app.add_subcommand("verify", "exhaustive check over all 2 <= x <= y, x + y <= max-sum");
        sub->add_option("--max-sum", verify_max_sum_, "largest x + y")->required();
        sub->add_option("--dump", verify_dump_, "where Greater verdicts are written");
        sub->callback([this] { action_ = [this] { return cmd_verify(); }; });
    }

    int cmd_verify() {
        const auto max_sum = parse_integer_flag(verify_max_sum_, "--max-sum");
        if (max_sum < 4) throw UsageError("--max-sum must be >= 4");
        const PrimeCounter counter = make_counter(max_sum);
        const auto census = hlprime::verify_exhaustive(counter, max_sum);
        return report_verify(census, verify_dump_, out_, err_);
    }

    // --- scan --------------------------------------------------------------

    void setup_scan(CLI::App& app) {
        auto* sub = app.add_subcommand("scan", "range-family scan with CSV/JSONL output");
        sub->add_option("--family", scan_family_, "ratio, logpow, sqrtlog3, short, or explicit")
            ->required()
            ->check(CLI::IsMember({"ratio", "logpow", "sqrtlog3", "short", "explicit"}));
        sub->add_option("--delta", scan_delta_, "FixedRatio delta in (0, 1]");
        sub->add_option("--c", scan_c_, "LogPower exponent c >= 0");
        sub->add_option("--r", scan_r_, "ShortInterval exponent r > 0");
        sub->add_option("--band-steps", scan_band_, "SqrtLogCube: extra y values up to y = x");
        sub->add_option("--pairs", scan_pairs_, "explicit pairs, e.g. 2:2,10:10");
        scan_grid_.add_to(sub, false);
        sub->add_option("--out", scan_out_, "CSV output path");
        sub->add_option("--jsonl", scan_jsonl_, "JSONL output path (default: --out with .jsonl)");
        sub->add_option("--plot", scan_plot_, "plot data output path");
        sub->add_option("--plot-columns", scan_plot_cols_, "comma-separated plot columns")->delimiter(',');
        sub->add_option("--checkpoint", scan_checkpoint_, "checkpoint file; resumes if present");
        sub->add_option("--oracle-check", scan_oracle_frac_, "fraction of rows re-verified by trial division")
            ->check(CLI::Range(0.0, 1.0));
        sub->callback([this] { action_ = [this] { return cmd_scan(); }; });
    }

    hlprime::RangeFamily scan_family() const {
        using hlprime::RangeFamily;
        if (scan_family_ == "ratio") {
            if (!scan_delta_) throw UsageError("--family ratio needs --delta");
            return RangeFamily::fixed_ratio(*scan_delta_);
        }
        if (scan_family_ == "logpow") {
            if (!scan_c_) throw UsageError("--family logpow needs --c");
            return RangeFamily::log_power(*scan_c_);
        }
        if (scan_family_ == "sqrtlog3") return RangeFamily::sqrt_log_cube(scan_band_);
        if (scan_family_ == "short") {
            if (!scan_r_) throw UsageError("--family short needs --r");
            return RangeFamily::short_interval(*scan_r_);
        }
        if (scan_pairs_.empty()) throw UsageError("--family explicit needs --pairs");
        std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
        std::stringstream ss(scan_pairs_);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw UsageError("--pairs entries look like x:y, got '" + item + "'");
            pairs.emplace_back(parse_integer_flag(item.substr(0, colon), "--pairs x"),
                               parse_integer_flag(item.substr(colon + 1), "--pairs y"));
        }
        return RangeFamily::explicit_pairs(std::move(pairs));
    }

    int cmd_scan() {
        const hlprime::RangeFamily family = scan_family();
        hlprime::GridSpec grid;
        if (family.kind != hlprime::FamilyKind::Explicit) {
            const auto g = scan_grid_.grid();
            if (!g) throw UsageError("scan needs --xmin and --xmax");
            grid = *g;
        }
        const auto points = hlprime::range_points(family, grid);
        std::int64_t needed = 4;
        std::size_t live = 0;
        for (const auto& p : points) {
            if (p.skipped) continue;
            ++live;
            needed = std::max(needed, hlprime::checked_add(p.x, p.y));
        }
        if (live == 0) throw std::runtime_error("scan: every grid point was skipped; nothing to report");
        const PrimeCounter counter = make_counter(needed);

        hlprime::ScanOptions opts;
        opts.threads = global_.threads;
        opts.c0 = global_.c0;

        hlprime::ScanReport report;
        if (scan_checkpoint_.empty()) {
            report = hlprime::scan(counter, family, grid, opts);
        } else {
            std::optional<std::uint64_t> abort_after;
            if (const char* env = std::getenv("HL_ABORT_AFTER_ROWS"); env && *env) {
                abort_after = std::strtoull(env, nullptr, 10);
            }
            report = hlprime::resumable_scan(counter, family, grid, opts, scan_checkpoint_,
                                             [&](const hlprime::Checkpoint& cp) {
                                                 // simulated kill, for resume testing
                                                 if (abort_after && cp.rows >= *abort_after) std::_Exit(137);
                                             });
        }
        report.meta.command = command_;
        report.meta.seed = global_.seed;

        if (scan_oracle_frac_ > 0.0) oracle_subsample(report);

        const std::string csv = scan_out_.empty() ? "scan.csv" : scan_out_;
        std::string jsonl = scan_jsonl_;
        if (jsonl.empty()) jsonl = std::filesystem::path(csv).replace_extension(".jsonl").string();
        hlprime::write_csv(report, csv);
        hlprime::write_jsonl(report, jsonl);
        if (!scan_plot_.empty()) {
            const std::vector<std::string> cols =
                scan_plot_cols_.empty() ? std::vector<std::string>{"x", "margin"} : scan_plot_cols_;
            hlprime::write_plotdata(report, scan_plot_, cols);
        }

        std::int64_t less = 0, equal = 0, greater = 0, skipped = 0;
        for (const auto& r : report.rows) {
            if (r.skipped) {
                ++skipped;
                continue;
            }
            (r.relation == hlprime::Relation::StrictLess ? less
             : r.relation == hlprime::Relation::Equal    ? equal
                                                         : greater)++;
        }
        out_ << "family " << hlprime::to_string(family.kind) << "\n"
             << "rows " << report.rows.size() << " (skipped " << skipped << ")\n"
             << "less " << less << "\nequal " << equal << "\ngreater " << greater << "\n"
             << "counter " << counter.limit() << " " << hlprime::to_string(counter.method()) << "\n"
             << "wrote " << csv << " " << jsonl << "\n";
        if (greater > 0) {
            for (const auto& r : report.rows) {
                if (!r.skipped && r.relation == hlprime::Relation::Greater) {
                    err_ << "GREATER at x=" << r.x << " y=" << r.y << " pi_x=" << r.pi_x << " pi_y=" << r.pi_y
                         << " pi_xy=" << r.pi_xy << " margin=" << r.margin << "\n";
                }
            }
            return kExitSurprise;
        }
        return kExitOk;
    }

    void oracle_subsample(const hlprime::ScanReport& report) {
        std::vector<const hlprime::ScanRow*> live;
        for (const auto& r : report.rows) {
            if (!r.skipped && r.x + r.y <= hlprime::kOracleCap) live.push_back(&r);
        }
        if (live.empty()) {
            err_ << "oracle check: no rows with x + y <= 1e8; skipped\n";
            return;
        }
        std::mt19937_64 rng(global_.seed);
        const auto want = std::max<std::size_t>(1, static_cast<std::size_t>(scan_oracle_frac_ * live.size()));
        std::vector<const hlprime::ScanRow*> pick;
        std::sample(live.begin(), live.end(), std::back_inserter(pick), want, rng);
        std::vector<std::int64_t> args;
        for (const auto* r : pick) {
            args.push_back(r->x);
            args.push_back(r->y);
            args.push_back(r->x + r->y);
        }
        const auto pis = hlprime::pi_oracle_many(args);
        for (std::size_t i = 0; i < pick.size(); ++i) {
            const auto* r = pick[i];
            if (pis[3 * i] != r->pi_x || pis[3 * i + 1] != r->pi_y || pis[3 * i + 2] != r->pi_xy) {
                throw std::runtime_error("oracle mismatch at x=" + std::to_string(r->x) + " y=" + std::to_string(r->y));
            }
        }
        out_ << "oracle check: " << pick.size() << " rows re-verified by trial division\n";
    }

    // --- audit -------------------------------------------------------------

    void setup_audit(CLI::App& app) {
        auto* sub = app.add_subcommand("audit", "tabulate a proof's final inequality and locate where it fails");
        sub->add_option("--theorem", audit_theorem_, "1 (unconditional) or 2 (RH-conditional)")
            ->required()
            ->check(CLI::IsMember({1, 2}));
        sub->add_option("--c", audit_c_, "exponent c (theorem 1)");
        sub->add_option("--K", audit_K_, "implied constant K > 0");
        sub->add_option("--xmin", audit_xmin_, "grid lower end (real, >= 16)");
        sub->add_option("--xmax", audit_xmax_, "grid upper end (real)");
        sub->add_option("--points", audit_points_, "geometric grid points")->check(CLI::Range(2, 1000000));
        sub->add_option("--out", audit_out_, "JSONL output of the tabulated grid");
        sub->add_flag("--table", audit_table_, "print every grid row");
        sub->callback([this] { action_ = [this] { return cmd_audit(); }; });
    }

    int cmd_audit() {
        if (!(audit_K_ > 0.0)) throw UsageError("--K must be > 0");
        const double xmin = parse_real_flag(audit_xmin_, "--xmin");
        const double xmax = parse_real_flag(audit_xmax_, "--xmax");
        if (!(xmin >= 16.0)) throw UsageError("--xmin must be >= 16");
        if (!(xmin < xmax)) throw UsageError("empty grid: need --xmin < --xmax");
        double c = 1.0;
        if (audit_theorem_ == 2) {
            if (audit_c_) err_ << "warning: --c is ignored for theorem 2\n";
        } else {
            if (!audit_c_) throw UsageError("--theorem 1 needs --c");
            c = *audit_c_;
            if (!(c >= 0.0)) throw UsageError("--c must be >= 0");
        }
        const double K = audit_K_;
        const auto result = audit_theorem_ == 1
                                ? hlprime::find_crossing([&](double x) { return hlprime::audit_unconditional(x, c, K); },
                                                         xmin, xmax, audit_points_)
                                : hlprime::find_crossing([&](double x) { return hlprime::audit_rh(x, K); }, xmin,
                                                         xmax, audit_points_);
        if (audit_table_) {
            out_ << "x lhs rhs holds\n";
            for (const auto& r : result.grid) {
                out_ << fmt(r.x) << " " << fmt(r.lhs, 12) << " " << fmt(r.rhs, 12) << " " << (r.holds ? 1 : 0) << "\n";
            }
        }
        out_ << "theorem " << audit_theorem_ << " K " << fmt(K);
        if (audit_theorem_ == 1) out_ << " c " << fmt(c);
        out_ << "\n";
        if (result.crossing) {
            out_ << "first failing grid x " << fmt(*result.first_failing_grid_x) << "\n"
                 << "crossing x " << fmt(*result.crossing, 12) << "\n";
        } else {
            out_ << "holds on the whole grid [" << fmt(xmin) << ", " << fmt(xmax) << "]\n";
        }
        if (!audit_out_.empty()) {
            auto meta = run_meta("audit", nullptr);
            meta["theorem"] = audit_theorem_;
            meta["K"] = K;
            if (audit_theorem_ == 1) meta["c"] = c;
            meta["crossing"] = result.crossing ? nlohmann::json(*result.crossing) : nlohmann::json(nullptr);
            std::vector<nlohmann::json> recs;
            for (const auto& r : result.grid) recs.push_back({{"x", r.x}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
            hlprime::write_records_jsonl(audit_out_, meta, recs);
        }
        return kExitOk;
    }

    // --- mv ----------------------------------------------------------------

    void setup_mv(CLI::App& app) {
        auto* sub = app.add_subcommand("mv", "window bound pi(x+h) - pi(x) <= 2h/log h");
        mv_grid_.add_to(sub, true);
        sub->add_option("--h", mv_h_, "window lengths (>= 2), comma-separated")->delimiter(',');
        sub->add_option("--out", mv_grid_.out, "JSONL output");
        sub->add_option("--csv", mv_grid_.csv, "CSV output");
        sub->callback([this] { action_ = [this] { return cmd_mv(); }; });
    }

    int cmd_mv() {
        const auto xs = mv_grid_.xs(100);
        std::vector<std::int64_t> hs;
        for (const auto& s : mv_h_) hs.push_back(parse_integer_flag(s, "--h"));
        if (hs.empty()) hs = {2, 10, 100, 1000};
        for (const auto h : hs) {
            if (h < 2) throw UsageError("--h values must be >= 2");
        }
        const PrimeCounter counter = make_counter(xs.back() + *std::max_element(hs.begin(), hs.end()));
        std::vector<hlprime::MvBoundRecord> recs;
        for (const auto x : xs) {
            for (const auto h : hs) recs.push_back(hlprime::mv_bound_check(counter, x, h));
        }
        std::size_t failures = 0;
        for (const auto& r : recs) failures += !r.holds;
        if (xs.size() == 1) {
            for (const auto& r : recs) {
                out_ << "x " << r.x << " h " << r.h << " count " << r.lhs << " bound " << fmt(r.rhs) << " "
                     << (r.holds ? "holds" : "FAILS") << "\n";
            }
        }
        out_ << "checks " << recs.size() << " failures " << failures << "\n";
        if (!mv_grid_.out.empty()) {
            std::vector<nlohmann::json> j;
            for (const auto& r : recs) j.push_back({{"x", r.x}, {"h", r.h}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
            hlprime::write_records_jsonl(mv_grid_.out, run_meta("mv", &counter), j);
        }
        if (!mv_grid_.csv.empty()) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : recs) {
                rows.push_back({std::to_string(r.x), std::to_string(r.h), std::to_string(r.lhs), real17(r.rhs),
                                r.holds ? "1" : "0"});
            }
            hlprime::write_records_csv(mv_grid_.csv, "x,h,lhs,rhs,holds", rows);
        }
        return failures == 0 ? kExitOk : kExitSurprise;
    }

    // --- maier -------------------------------------------------------------

    void setup_maier(CLI::App& app) {
        auto* sub = app.add_subcommand("maier", "ratio (pi(x+h)-pi(x)) / (h/log x), h = log^r x");
        sub->add_option("--r", maier_r_, "exponent r > 1")->required();
        maier_grid_.add_to(sub, true);
        sub->add_option("--out", maier_grid_.out, "JSONL output");
        sub->add_option("--csv", maier_grid_.csv, "CSV output");
        sub->callback([this] { action_ = [this] { return cmd_maier(); }; });
    }

    int cmd_maier() {
        if (!(maier_r_ > 1.0)) throw UsageError("--r must be > 1 (the lim sup/lim inf statement needs r > 1)");
        const auto xs = maier_grid_.xs();
        for (const auto x : xs) {
            if (x < 3) throw UsageError("maier needs x >= 3");
        }
        const double hmax = std::pow(std::log(static_cast<double>(xs.back())), maier_r_);
        const PrimeCounter counter = make_counter(xs.back() + static_cast<std::int64_t>(hmax) + 1);
        std::vector<hlprime::MaierRecord> recs;
        for (const auto x : xs) recs.push_back(hlprime::maier_ratio(counter, x, maier_r_));
        for (const auto& r : recs) {
            if (xs.size() == 1 || recs.size() <= 20) {
                out_ << "x " << r.x << " h " << r.h << " count " << r.count << " ratio " << fmt(r.ratio)
                     << " e^gamma/r " << fmt(r.reference) << "\n";
            }
        }
        if (recs.size() > 1) {
            const auto [lo, hi] = std::minmax_element(recs.begin(), recs.end(),
                                                      [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
            out_ << "points " << recs.size() << " min ratio " << fmt(lo->ratio) << " at x " << lo->x << " max ratio "
                 << fmt(hi->ratio) << " at x " << hi->x << "\n";
        }
        if (!maier_grid_.out.empty()) {
            std::vector<nlohmann::json> j;
            for (const auto& r : recs) {
                j.push_back({{"x", r.x}, {"r", r.r}, {"h", r.h}, {"count", r.count}, {"ratio", r.ratio},
                             {"reference", r.reference}});
            }
            hlprime::write_records_jsonl(maier_grid_.out, run_meta("maier", &counter), j);
        }
        if (!maier_grid_.csv.empty()) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : recs) {
                rows.push_back({std::to_string(r.x), real17(r.r), std::to_string(r.h), std::to_string(r.count),
                                real17(r.ratio), real17(r.reference)});
            }
            hlprime::write_records_csv(maier_grid_.csv, "x,r,h,count,ratio,reference", rows);
        }
        return kExitOk;
    }

    // --- psistat -----------------------------------------------------------

    void setup_psistat(CLI::App& app) {
        auto* sub = app.add_subcommand("psistat", "(psi(x) - x) / (sqrt(x) (log log x)^2)");
        psi_grid_.add_to(sub, true);
        sub->add_option("--out", psi_grid_.out, "JSONL output");
        sub->add_option("--csv", psi_grid_.csv, "CSV output");
        sub->callback([this] { action_ = [this] { return cmd_psistat(); }; });
    }

    int cmd_psistat() {
        const auto xs = psi_grid_.xs();
        for (const auto x : xs) {
            if (x < 16) throw UsageError("psistat needs x >= 16");
        }
        const PrimeCounter counter = make_counter(xs.back());
        const auto recs = hlprime::psi_deviation_series(counter, xs);
        double lo = recs.front().deviation, hi = lo;
        for (const auto& r : recs) {
            lo = std::min(lo, r.deviation);
            hi = std::max(hi, r.deviation);
            if (recs.size() <= 20) {
                out_ << "x " << r.x << " theta " << fmt(r.theta, 15) << " psi " << fmt(r.psi, 15) << " deviation "
                     << fmt(r.deviation) << "\n";
            }
        }
        out_ << "points " << recs.size() << " min " << fmt(lo) << " max " << fmt(hi) << " (+-1/pi = " << fmt(1.0 / M_PI)
             << ", not asserted)\n";
        if (!psi_grid_.out.empty()) {
            std::vector<nlohmann::json> j;
            for (const auto& r : recs) j.push_back({{"x", r.x}, {"theta", r.theta}, {"psi", r.psi}, {"deviation", r.deviation}});
            hlprime::write_records_jsonl(psi_grid_.out, run_meta("psistat", &counter), j);
        }
        if (!psi_grid_.csv.empty()) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : recs) rows.push_back({std::to_string(r.x), real17(r.theta), real17(r.psi), real17(r.deviation)});
            hlprime::write_records_csv(psi_grid_.csv, "x,theta,psi,deviation", rows);
        }
        return kExitOk;
    }

    // --- census ------------------------------------------------------------

    void setup_census(CLI::App& app) {
        auto* sub = app.add_subcommand("census", "sign census of pi(x+y) vs pi(x)+pi(y) for y = log^r x");
        sub->add_option("--r", census_r_, "exponent r > 0")->required();
        sub->add_option("--xmin", census_grid_.xmin, "first x")->required();
        sub->add_option("--xmax", census_grid_.xmax, "last x")->required();
        sub->add_option("--step", census_grid_.step, "x step (default 1)");
        sub->add_option("--out", census_grid_.out, "JSONL output with every verdict");
        sub->callback([this] { action_ = [this] { return cmd_census(); }; });
    }

    int cmd_census() {
        if (!(census_r_ > 0.0)) throw UsageError("--r must be > 0");
        const auto xmin = parse_integer_flag(census_grid_.xmin, "--xmin");
        const auto xmax = parse_integer_flag(census_grid_.xmax, "--xmax");
        const auto step = census_grid_.step.empty() ? 1 : parse_integer_flag(census_grid_.step, "--step");
        if (xmin < 2 || xmin >= xmax) throw UsageError("empty grid: need 2 <= --xmin < --xmax");
        if (step < 1) throw UsageError("--step must be >= 1");
        const double ymax = std::pow(std::log(static_cast<double>(xmax)), census_r_);
        const PrimeCounter counter = make_counter(xmax + std::max<std::int64_t>(2, static_cast<std::int64_t>(ymax)) + 1);
        hlprime::CensusOptions copts;
        copts.threads = global_.threads;
        copts.keep_verdicts = !census_grid_.out.empty();
        const auto rep = hlprime::oscillation_census(counter, census_r_, xmin, xmax, step, copts);
        out_ << "points " << rep.total() << "\nless " << rep.n_less << "\nequal " << rep.n_equal << "\ngreater "
             << rep.n_greater << "\nskipped " << rep.n_skipped << "\n";
        out_ << "most negative margins:";
        for (const auto& m : rep.most_negative) out_ << " " << m.margin << "@" << m.x;
        out_ << "\nmost positive margins:";
        for (const auto& m : rep.most_positive) out_ << " " << m.margin << "@" << m.x;
        out_ << "\n";
        if (!census_grid_.out.empty()) {
            auto meta = run_meta("census", &counter);
            meta["r"] = census_r_;
            meta["n_less"] = rep.n_less;
            meta["n_equal"] = rep.n_equal;
            meta["n_greater"] = rep.n_greater;
            meta["n_skipped"] = rep.n_skipped;
            std::vector<nlohmann::json> j;
            for (const auto& v : rep.verdicts) {
                j.push_back({{"x", v.x}, {"y", v.y}, {"pi_x", v.pi_x}, {"pi_y", v.pi_y}, {"pi_xy", v.pi_xy},
                             {"margin", v.margin}, {"class", std::string(hlprime::to_token(v.relation))}});
            }
            hlprime::write_records_jsonl(census_grid_.out, meta, j);
        }
        return kExitOk;
    }

    std::ostream& out_;
    std::ostream& err_;
    std::string command_;
    GlobalFlags global_;
    std::function<int()> action_;

    std::string verify_max_sum_;
    std::string verify_dump_ = "hl_verify_greater.csv";

    std::string scan_family_;
    std::optional<double> scan_delta_, scan_c_, scan_r_;
    int scan_band_ = 0;
    std::string scan_pairs_;
    GridFlags scan_grid_;
    std::string scan_out_, scan_jsonl_, scan_plot_, scan_checkpoint_;
    std::vector<std::string> scan_plot_cols_;
    double scan_oracle_frac_ = 0.0;

    int audit_theorem_ = 1;
    std::optional<double> audit_c_;
    double audit_K_ = 1.0;
    std::string audit_xmin_ = "16";
    std::string audit_xmax_ = "1e300";
    int audit_points_ = 200;
    std::string audit_out_;
    bool audit_table_ = false;

    GridFlags mv_grid_;
    std::vector<std::string> mv_h_;

    double maier_r_ = 2.0;
    GridFlags maier_grid_;

    GridFlags psi_grid_;

    double census_r_ = 1.0;
    GridFlags census_grid_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    App app(out, err);
    return app.run(argc, argv);
}

} // namespace hlcheck
