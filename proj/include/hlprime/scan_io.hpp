// scan_io.hpp
// ScanReport serialization.
//
// CSV      header "x,y,pi_x,pi_y,pi_xy,margin,class,li_pred,err_rh,err_uncond,skipped";
//          reals printed with 17 significant digits; missing values are empty
//          cells; line-feed newlines only.
// JSONL    line 1 is {"type":"meta",...}; each following line is one row
//          object with the CSV fields plus y_real. Missing values are null.
// plot     whitespace-separated numeric columns; skipped rows left out; one
//          leading "# name ..." comment line.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hlprime/errors.hpp"
#include "hlprime/report.hpp"

namespace hlprime {

inline constexpr std::string_view kCsvHeader =
    "x,y,pi_x,pi_y,pi_xy,margin,class,li_pred,err_rh,err_uncond,skipped";

namespace io_detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_opt(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string{};
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::optional<double> json_opt(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

} // namespace io_detail

// --- CSV ---------------------------------------------------------------------

inline std::string csv_line(const ScanRow& r) {
    using io_detail::format_opt;
    std::string s = std::to_string(r.x) + "," + std::to_string(r.y) + ",";
    if (r.skipped) {
        s += ",,,,,";
    } else {
        s += std::to_string(r.pi_x) + "," + std::to_string(r.pi_y) + "," + std::to_string(r.pi_xy) +
             "," + std::to_string(r.margin) + "," + std::string(to_token(r.relation)) + ",";
    }
    s += format_opt(r.skipped ? std::nullopt : r.li_pred) + ",";
    s += format_opt(r.err_rh) + "," + format_opt(r.err_uncond) + ",";
    s += r.skipped ? "1" : "0";
    return s;
}

inline std::string to_csv(const ScanReport& report) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const ScanRow& r : report.rows) {
        out += csv_line(r);
        out += '\n';
    }
    return out;
}

inline void write_csv(const ScanReport& report, const std::string& path) {
    io_detail::write_file(path, to_csv(report));
}

/// Parses a CSV written by write_csv back into rows (y_real is not in the
/// CSV and comes back as y).
inline std::vector<ScanRow> read_csv(const std::string& path) {
    const std::string text = io_detail::read_file(path);
    std::vector<ScanRow> rows;
    std::size_t pos = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        line = std::string_view(text).substr(pos, end - pos);
        pos = end + 1;
        return true;
    };
    std::string_view line;
    if (!next_line(line) || line != kCsvHeader) throw ParseError("CSV header mismatch in '" + path + "'", 0);
    while (true) {
        const std::size_t line_start = pos;
        if (!next_line(line)) break;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t a = 0;
        while (true) {
            const std::size_t b = line.find(',', a);
            f.emplace_back(line.substr(a, b == std::string_view::npos ? std::string_view::npos : b - a));
            if (b == std::string_view::npos) break;
            a = b + 1;
        }
        if (f.size() != 11) throw ParseError("CSV row has " + std::to_string(f.size()) + " fields", line_start);
        auto opt = [](const std::string& s) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            return std::strtod(s.c_str(), nullptr);
        };
        ScanRow r;
        try {
            r.x = std::stoll(f[0]);
            r.y = std::stoll(f[1]);
            r.y_real = static_cast<double>(r.y);
            r.skipped = f[10] == "1";
            if (!r.skipped) {
                r.pi_x = std::stoll(f[2]);
                r.pi_y = std::stoll(f[3]);
                r.pi_xy = std::stoll(f[4]);
                r.margin = std::stoll(f[5]);
                r.relation = parse_relation(f[6]);
            }
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad CSV row: ") + e.what(), line_start);
        }
        r.li_pred = opt(f[7]);
        r.err_rh = opt(f[8]);
        r.err_uncond = opt(f[9]);
        rows.push_back(r);
    }
    return rows;
}

// --- JSONL -------------------------------------------------------------------

inline nlohmann::json meta_json(const ScanMeta& m) {
    nlohmann::json fam;
    fam["kind"] = std::string(to_string(m.family.kind));
    switch (m.family.kind) {
    case FamilyKind::FixedRatio: fam["delta"] = m.family.delta; break;
    case FamilyKind::LogPower: fam["c"] = m.family.c; break;
    case FamilyKind::SqrtLogCube: fam["band_steps"] = m.family.band_steps; break;
    case FamilyKind::ShortInterval: fam["r"] = m.family.r; break;
    case FamilyKind::Explicit: {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [x, y] : m.family.pairs) pairs.push_back({x, y});
        fam["pairs"] = pairs;
        break;
    }
    }
    nlohmann::json grid;
    grid["kind"] = m.grid.kind == GridSpec::Kind::Geometric ? "geometric" : "arithmetic";
    grid["x_min"] = m.grid.x_min;
    grid["x_max"] = m.grid.x_max;
    if (m.grid.kind == GridSpec::Kind::Geometric) {
        grid["points"] = m.grid.points;
    } else {
        grid["step"] = m.grid.step;
    }
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(scan_hash(m)));
    return {{"type", "meta"},
            {"family", fam},
            {"grid", grid},
            {"counter_limit", m.counter_limit},
            {"method", std::string(to_string(m.method))},
            {"c0", m.c0},
            {"engine_version", m.engine_version},
            {"wall_time_s", m.wall_time_s},
            {"threads", m.threads},
            {"command", m.command},
            {"seed", m.seed},
            {"scan_hash", hash}};
}

inline ScanMeta meta_from_json(const nlohmann::json& j) {
    ScanMeta m;
    const auto& fam = j.at("family");
    const std::string kind = fam.at("kind").get<std::string>();
    if (kind == "FixedRatio") {
        m.family = RangeFamily::fixed_ratio(fam.at("delta").get<double>());
    } else if (kind == "LogPower") {
        m.family = RangeFamily::log_power(fam.at("c").get<double>());
    } else if (kind == "SqrtLogCube") {
        m.family = RangeFamily::sqrt_log_cube(fam.at("band_steps").get<int>());
    } else if (kind == "ShortInterval") {
        m.family = RangeFamily::short_interval(fam.at("r").get<double>());
    } else if (kind == "Explicit") {
        std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
        for (const auto& p : fam.at("pairs")) pairs.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
        m.family = RangeFamily::explicit_pairs(std::move(pairs));
    } else {
        throw std::invalid_argument("unknown family kind '" + kind + "'");
    }
    const auto& grid = j.at("grid");
    m.grid.kind = grid.at("kind").get<std::string>() == "geometric" ? GridSpec::Kind::Geometric
                                                                     : GridSpec::Kind::Arithmetic;
    m.grid.x_min = grid.at("x_min").get<std::int64_t>();
    m.grid.x_max = grid.at("x_max").get<std::int64_t>();
    if (m.grid.kind == GridSpec::Kind::Geometric) {
        m.grid.points = grid.at("points").get<std::int64_t>();
    } else {
        m.grid.step = grid.at("step").get<std::int64_t>();
    }
    m.counter_limit = j.at("counter_limit").get<std::int64_t>();
    m.method = parse_count_method(j.at("method").get<std::string>());
    m.c0 = j.at("c0").get<double>();
    m.engine_version = j.at("engine_version").get<std::string>();
    m.wall_time_s = j.at("wall_time_s").get<double>();
    m.threads = j.at("threads").get<unsigned>();
    m.command = j.at("command").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    return m;
}

inline nlohmann::json row_json(const ScanRow& r) {
    using io_detail::opt_json;
    nlohmann::json j;
    j["x"] = r.x;
    j["y"] = r.y;
    j["y_real"] = r.y_real;
    if (r.skipped) {
        for (const char* k : {"pi_x", "pi_y", "pi_xy", "margin", "class", "li_pred"}) j[k] = nullptr;
    } else {
        j["pi_x"] = r.pi_x;
        j["pi_y"] = r.pi_y;
        j["pi_xy"] = r.pi_xy;
        j["margin"] = r.margin;
        j["class"] = std::string(to_token(r.relation));
        j["li_pred"] = opt_json(r.li_pred);
    }
    j["err_rh"] = opt_json(r.err_rh);
    j["err_uncond"] = opt_json(r.err_uncond);
    j["skipped"] = r.skipped;
    return j;
}

inline ScanRow row_from_json(const nlohmann::json& j) {
    using io_detail::json_opt;
    ScanRow r;
    r.x = j.at("x").get<std::int64_t>();
    r.y = j.at("y").get<std::int64_t>();
    r.y_real = j.at("y_real").get<double>();
    r.skipped = j.at("skipped").get<bool>();
    if (!r.skipped) {
        r.pi_x = j.at("pi_x").get<std::int64_t>();
        r.pi_y = j.at("pi_y").get<std::int64_t>();
        r.pi_xy = j.at("pi_xy").get<std::int64_t>();
        r.margin = j.at("margin").get<std::int64_t>();
        r.relation = parse_relation(j.at("class").get<std::string>());
        r.li_pred = json_opt(j.at("li_pred"));
    }
    r.err_rh = json_opt(j.at("err_rh"));
    r.err_uncond = json_opt(j.at("err_uncond"));
    return r;
}

inline std::string to_jsonl(const ScanReport& report) {
    std::string out = meta_json(report.meta).dump();
    out += '\n';
    for (const ScanRow& r : report.rows) {
        out += row_json(r).dump();
        out += '\n';
    }
    return out;
}

inline void write_jsonl(const ScanReport& report, const std::string& path) {
    io_detail::write_file(path, to_jsonl(report));
}

/// Parses JSONL text; `with_meta` = false accepts row lines only (journals).
/// Stops after `max_rows` rows if given; trailing partial lines past that are
/// never looked at.
inline ScanReport parse_jsonl(const std::string& text, bool with_meta = true,
                              std::optional<std::size_t> max_rows = std::nullopt) {
    ScanReport rep;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        if (max_rows && rep.rows.size() >= *max_rows) break;
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(pos, end - pos);
        const std::size_t line_start = pos;
        pos = end + 1;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            if (first && with_meta) {
                if (j.value("type", "") != "meta") throw std::invalid_argument("first line is not meta");
                rep.meta = meta_from_json(j);
            } else {
                rep.rows.push_back(row_from_json(j));
            }
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad JSONL line: ") + e.what(), line_start);
        }
        first = false;
    }
    if (with_meta && first) throw ParseError("empty JSONL input", 0);
    return rep;
}

inline ScanReport read_jsonl(const std::string& path) { return parse_jsonl(io_detail::read_file(path)); }

// --- plot data ----------------------------------------------------------------

inline const std::vector<std::string>& plot_columns() {
    static const std::vector<std::string> names = {"x", "y", "y_real", "pi_x", "pi_y", "pi_xy", "margin",
                                                   "li_pred", "err_rh", "err_uncond", "log10_x"};
    return names;
}

/// Writes the named columns for every non-skipped row. "log10_x" is computed
/// at write time. Unknown names are rejected with the list of valid ones.
inline void write_plotdata(const ScanReport& report, const std::string& path,
                           const std::vector<std::string>& columns) {
    if (columns.empty()) throw std::invalid_argument("write_plotdata: no columns requested");
    for (const auto& c : columns) {
        bool known = false;
        for (const auto& n : plot_columns()) known = known || n == c;
        if (!known) {
            std::string valid;
            for (const auto& n : plot_columns()) valid += (valid.empty() ? "" : ", ") + n;
            throw std::invalid_argument("unknown plot column '" + c + "'; valid columns: " + valid);
        }
    }
    using io_detail::format_real;
    auto cell = [](const ScanRow& r, const std::string& c) -> std::string {
        if (c == "x") return std::to_string(r.x);
        if (c == "y") return std::to_string(r.y);
        if (c == "y_real") return format_real(r.y_real);
        if (c == "pi_x") return std::to_string(r.pi_x);
        if (c == "pi_y") return std::to_string(r.pi_y);
        if (c == "pi_xy") return std::to_string(r.pi_xy);
        if (c == "margin") return std::to_string(r.margin);
        if (c == "log10_x") return format_real(std::log10(static_cast<double>(r.x)));
        const std::optional<double>& v = c == "li_pred" ? r.li_pred : c == "err_rh" ? r.err_rh : r.err_uncond;
        return v ? format_real(*v) : std::string("nan");
    };
    std::string out = "#";
    for (const auto& c : columns) out += " " + c;
    out += '\n';
    for (const ScanRow& r : report.rows) {
        if (r.skipped) continue;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ' ';
            out += cell(r, columns[i]);
        }
        out += '\n';
    }
    io_detail::write_file(path, out);
}

// --- auxiliary tables ---------------------------------------------------------

/// JSONL table: `meta` (with "type":"meta") on line 1, one record per line.
inline void write_records_jsonl(const std::string& path, nlohmann::json meta,
                                const std::vector<nlohmann::json>& records) {
    meta["type"] = "meta";
    std::string out = meta.dump() + "\n";
    for (const auto& r : records) out += r.dump() + "\n";
    io_detail::write_file(path, out);
}

/// Plain CSV table with a fixed header line.
inline void write_records_csv(const std::string& path, const std::string& header,
                              const std::vector<std::vector<std::string>>& rows) {
    std::string out = header + "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    io_detail::write_file(path, out);
}

} // namespace hlprime
