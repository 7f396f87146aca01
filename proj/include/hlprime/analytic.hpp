// analytic.hpp
// Logarithmic integrals, error-term magnitudes, and mean-value brackets.
//
// All logarithms are natural. li is the offset form li(x) = int_2^x dt/log t,
// so li(2) = 0. Integrals are evaluated in u = log t, where
//   int_a^b dt / log^k t = int_{log a}^{log b} e^u / u^k du
// is smooth and free of the t-scale stiffness.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hlprime/quadrature.hpp"

namespace hlprime {

inline constexpr double kDefaultQuadTol = 1e-9;

/// int_a^b dt / log^k t with error estimate; 2 <= a <= b, k >= 1.
inline QuadratureResult log_integral_detailed(double a, double b, int k = 1,
                                              double tol = kDefaultQuadTol) {
    if (!(a >= 2.0)) throw std::domain_error("log integral: lower endpoint must be >= 2");
    if (!(b >= a)) throw std::domain_error("log integral: need b >= a");
    if (k < 1) throw std::domain_error("log integral: k must be >= 1");
    const auto integrand = [k](double u) { return std::exp(u) / std::pow(u, k); };
    return adaptive_simpson(integrand, std::log(a), std::log(b), tol);
}

inline double log_integral(double a, double b, int k = 1, double tol = kDefaultQuadTol) {
    return log_integral_detailed(a, b, k, tol).value;
}

/// li(x) = int_2^x dt / log t, x >= 2.
inline double li(double x, double tol = kDefaultQuadTol) {
    if (!(x >= 2.0)) throw std::domain_error("li: x must be >= 2");
    return log_integral(2.0, x, 1, tol);
}

/// li_k(x) = int_2^x dt / log^k t, x >= 2, k >= 1.
inline double li_k(double x, int k, double tol = kDefaultQuadTol) {
    if (!(x >= 2.0)) throw std::domain_error("li_k: x must be >= 2");
    if (k < 1) throw std::domain_error("li_k: k must be >= 1");
    return log_integral(2.0, x, k, tol);
}

// --- error-term magnitudes --------------------------------------------------

enum class ErrorKind { UncondPi, RHPi, UncondTheta, RHTheta };

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::UncondPi: return "UncondPi";
    case ErrorKind::RHPi: return "RHPi";
    case ErrorKind::UncondTheta: return "UncondTheta";
    case ErrorKind::RHTheta: return "RHTheta";
    }
    return "?";
}

/// Magnitude of an O(.) term with the implied constant left out. Consumers
/// multiply by their own constant K.
///
/// c0 is the de la Vallee Poussin exponent constant in x*exp(-c0*sqrt(log x)).
/// The default 0.2018 is the published value of "c"; treating it as c0 is an
/// assumption worth keeping in mind when reading unconditional audits.
struct ErrorModel {
    ErrorKind kind = ErrorKind::RHPi;
    double c0 = 0.2018;

    ErrorModel() = default;
    ErrorModel(ErrorKind k, double c = 0.2018) : kind(k), c0(c) {
        if (!(c0 > 0.0)) throw std::domain_error("ErrorModel: c0 must be > 0");
    }

    double operator()(double x) const {
        if (!(x >= 3.0)) throw std::domain_error("error_term: x must be >= 3");
        const double lx = std::log(x);
        switch (kind) {
        case ErrorKind::UncondPi:
        case ErrorKind::UncondTheta: return x * std::exp(-c0 * std::sqrt(lx));
        case ErrorKind::RHPi: return std::sqrt(x) * lx;
        case ErrorKind::RHTheta: return std::sqrt(x) * lx * lx;
        }
        return 0.0;
    }
};

inline double error_term(const ErrorModel& model, double x) { return model(x); }

// --- mean-value bracket -------------------------------------------------------

/// Enclosure of int_a^b dt/log t from the monotone decreasing integrand:
///   (b-a)/log b <= integral <= (b-a)/log a.
struct MeanValueBracket {
    double lo = 0.0;
    double hi = 0.0;
    double a = 0.0;
    double b = 0.0;

    bool contains(double v) const { return lo <= v && v <= hi; }
};

inline MeanValueBracket mean_value_bracket(double a, double b) {
    if (!(a >= 2.0)) throw std::domain_error("mean_value_bracket: a must be >= 2");
    if (!(a < b)) throw std::domain_error("mean_value_bracket: need a < b");
    return {(b - a) / std::log(b), (b - a) / std::log(a), a, b};
}

} // namespace hlprime
