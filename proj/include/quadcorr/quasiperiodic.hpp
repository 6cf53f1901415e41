#pragma once

// Generalized Fibonacci words p_j(n) = floor(gamma + (n+1)/alpha_j)
// - floor(gamma + n/alpha_j) and the column sign patterns built from them.

#include "error.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

namespace quadcorr {

struct FibonacciSpec {
    int j = 0;
    double gamma = 0.0;

    long double alpha() const {
        const long double jj = j + 1;
        return 0.5L * (jj + std::sqrt(jj * jj + 4.0L));
    }
};

inline void validate(const FibonacciSpec& spec) {
    if (spec.j < 0) throw domain_error("FibonacciSpec: j must be non-negative");
    if (!(spec.gamma >= 0) || !(spec.gamma < 1)) {
        std::ostringstream os;
        os << "FibonacciSpec: gamma must lie in [0,1), got " << spec.gamma;
        throw domain_error(os.str());
    }
}

inline int fib_bit(const FibonacciSpec& spec, std::int64_t n) {
    const long double inv = 1.0L / spec.alpha();
    const long double g = spec.gamma;
    return static_cast<int>(std::floor(g + (n + 1) * inv) - std::floor(g + n * inv));
}

/// Image of bit 0 and bit 1.
using BitMap = std::array<int, 2>;
inline constexpr BitMap default_bit_map{+1, -1};

struct SignSequence {
    FibonacciSpec spec;
    BitMap bit_map = default_bit_map;
    std::vector<int> signs;

    std::size_t window() const { return signs.size(); }
};

inline SignSequence sign_sequence(const FibonacciSpec& spec, BitMap bit_map, std::size_t N) {
    validate(spec);
    if (N < 1) throw domain_error("sign_sequence: window length must be >= 1");
    for (int s : bit_map)
        if (s != 1 && s != -1) throw domain_error("sign_sequence: bit_map values must be +1 or -1");
    SignSequence seq{spec, bit_map, {}};
    seq.signs.reserve(N);
    for (std::size_t n = 0; n < N; ++n) seq.signs.push_back(bit_map[fib_bit(spec, static_cast<std::int64_t>(n))]);
    return seq;
}

inline SignSequence sign_sequence(const FibonacciSpec& spec, std::size_t N) {
    return sign_sequence(spec, default_bit_map, N);
}

/// kappa(D) = (1/(N-D)) sum_{n<N-D} s(n) s(n+D), D = 0..delta_max.
inline std::vector<double> autocorrelation(const std::vector<int>& s, int delta_max) {
    const auto N = static_cast<long long>(s.size());
    if (delta_max < 0 || 2LL * delta_max >= N) {
        std::ostringstream os;
        os << "autocorrelation: delta_max = " << delta_max << " needs a window longer than " << 2LL * delta_max
           << ", have " << N;
        throw range_error(os.str());
    }
    std::vector<double> kappa(static_cast<std::size_t>(delta_max) + 1);
    for (int d = 0; d <= delta_max; ++d) {
        long long acc = 0;
        for (long long n = 0; n + d < N; ++n) acc += s[n] * s[n + d];
        kappa[d] = static_cast<double>(acc) / static_cast<double>(N - d);
    }
    return kappa;
}

inline std::vector<double> autocorrelation(const SignSequence& seq, int delta_max) {
    return autocorrelation(seq.signs, delta_max);
}

} // namespace quadcorr
