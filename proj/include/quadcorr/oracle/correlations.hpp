#pragma once

// Width-extrapolated bulk correlations from cylinders.

#include "../frustrated.hpp"
#include "cylinder.hpp"
#include "extrapolate.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <tuple>
#include <vector>

namespace quadcorr::oracle {

inline const std::vector<int>& default_widths() {
    static const std::vector<int> w{12, 14, 16};
    return w;
}

namespace detail {

/// Periodic and antiperiodic cylinders for each width; the reversed ring
/// bond is (W-1, 0).
class CylinderFamily {
public:
    template <class MakeSpec>
    CylinderFamily(const std::vector<int>& widths, MakeSpec make) : widths_(widths) {
        for (int W : widths) {
            periodic_.push_back(std::make_unique<Cylinder>(make(W)));
            antiperiodic_.push_back(std::make_unique<Cylinder>(antiperiodic(make(W), W - 1)));
        }
    }

    const std::vector<int>& widths() const { return widths_; }

    /// Extrapolates the P/AP average of f(cylinder) over widths.
    template <class F>
    Extrapolation average(F f) const {
        std::vector<double> v;
        for (std::size_t i = 0; i < widths_.size(); ++i) v.push_back(0.5 * (f(*periodic_[i]) + f(*antiperiodic_[i])));
        return extrapolate(widths_, v);
    }

private:
    std::vector<int> widths_;
    std::vector<std::unique_ptr<Cylinder>> periodic_, antiperiodic_;
};

/// Column that puts the pair (x0, x0+dx) opposite the seam, with x0 of the
/// requested parity.
inline int opposite_seam(int W, int dx, int parity) {
    int x0 = W / 2 - (dx >= 0 ? dx / 2 : -((-dx + 1) / 2));
    if (((x0 % 2) + 2) % 2 != parity % 2) ++x0;
    return x0;
}

} // namespace detail

/// C and Cbar at modulus k from the cylinder with sinh 2K = sqrt(k): spin
/// correlations give C, disorder correlations give Cbar.
class UniformOracle {
public:
    explicit UniformOracle(double k, std::vector<int> widths = default_widths())
        : k_(k), K_(0.5 * std::asinh(std::sqrt(k))),
          family_(widths, [K = K_](int W) { return uniform_cylinder(W, K); }) {}

    double k() const { return k_; }

    Extrapolation C(int m, int n) const {
        m = std::abs(m);
        n = std::abs(n);
        if (m == 0 && n == 0) return {1.0, 0.0};
        return memo(c_, m, n, [&](const Cylinder& c) {
            return c.spin_correlation(detail::opposite_seam(c.W(), m, 0), 0, m, n).value;
        });
    }

    Extrapolation Cbar(int m, int n) const {
        m = std::abs(m);
        n = std::abs(n);
        if (m == 0 && n == 0) return {1.0, 0.0};
        return memo(cbar_, m, n, [&](const Cylinder& c) { return c.disorder_correlation(0, m, n).value; });
    }

private:
    template <class F>
    Extrapolation memo(std::map<std::pair<int, int>, Extrapolation>& cache, int m, int n, F f) const {
        const auto key = std::make_pair(m, n);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        const auto e = family_.average(f);
        cache.emplace(key, e);
        return e;
    }

    double k_, K_;
    detail::CylinderFamily family_;
    mutable std::map<std::pair<int, int>, Extrapolation> c_, cbar_;
};

/// Fully frustrated model at sinh 2K = S on cylinders of the given version.
class FrustratedOracle {
public:
    FrustratedOracle(double S, LatticeVersion version, std::vector<int> widths = {8, 10, 12})
        : S_(S), version_(version),
          family_(widths, [K = 0.5 * std::asinh(S), version](int W) { return frustrated_cylinder(W, K, version); }) {}

    /// <s(x,l) s(x+dx,l+dy)> for a base site with column parity x_parity and
    /// row parity l_parity.
    Extrapolation correlation(int x_parity, int l_parity, int dx, int dy) const {
        if (dx == 0 && dy == 0) return {1.0, 0.0};
        const auto key = std::make_tuple(x_parity, l_parity, dx, dy);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const auto e = family_.average([&](const Cylinder& c) {
            return c.spin_correlation(detail::opposite_seam(c.W(), dx, x_parity), l_parity, dx, dy).value;
        });
        cache_.emplace(key, e);
        return e;
    }

    double S() const { return S_; }
    LatticeVersion version() const { return version_; }

private:
    double S_;
    LatticeVersion version_;
    detail::CylinderFamily family_;
    mutable std::map<std::tuple<int, int, int, int>, Extrapolation> cache_;
};

} // namespace quadcorr::oracle
