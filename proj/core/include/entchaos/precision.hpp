#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>
#include <string>

namespace entchaos {

/// Arbitrary-precision real backed by MPFR. The working precision is set
/// globally per run via set_working_precision(); expression templates are
/// disabled so MpReal behaves like an ordinary arithmetic type.
using MpReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/// Per-run arithmetic precision. Machine mode uses native doubles; extended
/// mode routes the chaotic long-time propagation through MpReal.
struct PrecisionConfig {
    enum class Mode { machine, extended };

    Mode mode = Mode::machine;
    int digits = 16;  // decimal digits; meaningful in extended mode only

    static PrecisionConfig machine() { return {Mode::machine, 16}; }
    static PrecisionConfig extended(int digits) { return {Mode::extended, digits}; }

    bool is_extended() const { return mode == Mode::extended; }

    void validate() const {
        if (mode == Mode::extended && digits < 15)
            throw std::invalid_argument("extended precision requires digits >= 15");
        if (digits <= 0)
            throw std::invalid_argument("precision digits must be positive");
    }

    std::string to_string() const {
        return mode == Mode::machine ? "machine" : "extended(" + std::to_string(digits) + ")";
    }
};

/// Applies the configured precision to the MpReal type. Affects subsequently
/// constructed MpReal values; call once before an extended-precision run.
void set_working_precision(const PrecisionConfig& cfg);

/// Finite-difference step for Jacobian oracles at the given precision.
double fd_epsilon(const PrecisionConfig& cfg);

template <class Real>
Real real_from_double(double x) {
    return Real(x);
}

}  // namespace entchaos
