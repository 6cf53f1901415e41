#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>
#include <mutex>

namespace quadcorr {

/// Variable-precision MPFR real used by the recurrence engine.
using real_mp = boost::multiprecision::mpfr_float;

/// Mantissa bits of `Real` at the current precision setting.
template <class Real>
inline int precision_bits() {
    return std::numeric_limits<Real>::digits;
}

template <>
inline int precision_bits<real_mp>() {
    return static_cast<int>(
        boost::multiprecision::detail::digits10_2_2(real_mp::default_precision()));
}

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

namespace detail {
inline std::recursive_mutex& precision_mutex() {
    static std::recursive_mutex m;
    return m;
}
} // namespace detail

/// Sets the default MPFR precision for the lifetime of the guard.
///
/// The MPFR default precision is process-wide, so guards serialize on a
/// shared mutex; nested guards on the same thread are allowed.
class scoped_precision {
public:
    explicit scoped_precision(unsigned bits)
        : lock_(detail::precision_mutex()), saved_(real_mp::default_precision()) {
        real_mp::default_precision(bits_to_digits10(bits));
    }
    ~scoped_precision() { real_mp::default_precision(saved_); }

    scoped_precision(const scoped_precision&) = delete;
    scoped_precision& operator=(const scoped_precision&) = delete;

private:
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned saved_;
};

template <class Real>
inline double to_double(const Real& x) {
    return static_cast<double>(x);
}

} // namespace quadcorr
