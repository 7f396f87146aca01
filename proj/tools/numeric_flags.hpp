// numeric_flags.hpp
// Integer flags written in plain or scientific notation ("100000", "1e8",
// "2.5e3"). The value is computed exactly from the decimal digits; anything
// that is not an integer is rejected rather than rounded.

#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hlcheck {

inline std::int64_t parse_integer_flag(std::string_view text, std::string_view flag = "value") {
    const std::string ctx = std::string(flag) + " '" + std::string(text) + "'";
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    std::string digits;    // all mantissa digits
    long long frac_digits = 0;
    bool seen_point = false, any_digit = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            any_digit = true;
            if (seen_point) ++frac_digits;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw std::invalid_argument(ctx + " is not a number");

    long long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_neg = text[i++] == '-';
        if (i == text.size()) throw std::invalid_argument(ctx + " has an empty exponent");
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) break;
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 1000) throw std::invalid_argument(ctx + " is out of range");
        }
        if (exp_neg) exponent = -exponent;
    }
    if (i != text.size()) throw std::invalid_argument(ctx + " is not a number");

    long long scale = exponent - frac_digits; // value = digits * 10^scale
    while (scale < 0) {
        if (digits.empty() || digits.back() != '0') {
            // only all-zero tails may be dropped; an all-zero mantissa is 0
            bool zero = digits.find_first_not_of('0') == std::string::npos;
            if (zero) {
                digits = "0";
                scale = 0;
                break;
            }
            throw std::invalid_argument(ctx + " is not an integer");
        }
        digits.pop_back();
        ++scale;
    }
    if (digits.empty()) digits = "0";

    constexpr auto kMax = static_cast<unsigned long long>(std::numeric_limits<std::int64_t>::max());
    unsigned long long v = 0;
    auto push = [&](int d) {
        if (v > (kMax - static_cast<unsigned>(d)) / 10) throw std::invalid_argument(ctx + " overflows 64 bits");
        v = v * 10 + static_cast<unsigned>(d);
    };
    for (const char ch : digits) push(ch - '0');
    for (long long k = 0; k < scale; ++k) {
        if (v == 0) break;
        push(0);
    }
    return negative ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
}

inline double parse_real_flag(std::string_view text, std::string_view flag = "value") {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(flag) + " '" + s + "' is not a number");
    }
    if (used != s.size()) throw std::invalid_argument(std::string(flag) + " '" + s + "' is not a number");
    return v;
}

} // namespace hlcheck
