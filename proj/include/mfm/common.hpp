#pragma once

#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfm {

using cd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const cd kI{0.0, 1.0};

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

// Reduced rational exponent, denominator kept positive.
struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n, long long d = 1) : num(n), den(d) {
        require(den != 0, "Frac: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    bool is_integer() const { return den == 1; }
    double value() const { return double(num) / double(den); }
    Frac operator*(long long k) const { return Frac(num * k, den); }
    Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
    Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
};

// Global numeric configuration: grid sizes, expansion depths, tolerances.
struct Config {
    int sample_count = 256;  // samples per circle
    int trunc_order = 80;    // two-sided germ truncation
    int tail_order = 90;     // depth of one-sided expansions
    int inverse_iters = 60;  // fixed-point depth for series inversion of maps
    unsigned long long seed = 42;

    std::map<std::string, double> tol{
        {"fft", 1e-11},   {"proj", 1e-9},   {"alg", 1e-9},    {"inv", 1e-10},
        {"point", 1e-9},  {"eta", 1e-8},    {"c", 1e-7},      {"g", 1e-9},
        {"p", 1e-7},      {"flow", 1e-7},   {"grad", 1e-6},   {"zero", 1e-8},
        {"rho_max", 0.8}, {"winding", 0.125}, {"germ_tail", 1e-9}};

    double tol_of(const std::string& name) const {
        auto it = tol.find(name);
        require(it != tol.end(), "unknown tolerance: " + name);
        return it->second;
    }
};

inline double abs2(cd z) { return std::norm(z); }

// Principal power of a nonzero complex scalar.
inline cd principal_pow(cd base, double alpha) {
    require(std::abs(base) > 0.0, "principal_pow: zero base");
    return std::exp(alpha * std::log(base));
}

}  // namespace mfm
