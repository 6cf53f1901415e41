#pragma once

// Transfer matrices on infinite cylinders of circumference W <= 16.
//
// A ring of W spins is the state; T_l = D^{1/2} B_l D^{1/2}, with D the
// Boltzmann weight of the ring bonds and B_l the Kronecker product of the
// 2x2 vertical-bond matrices of layer l. B_l is applied by W butterfly
// passes, so nothing of size 4^W is ever formed. Layers repeat with period p
// in the transfer direction.
//
// Correlations use the leading left/right eigenvectors of the period
// product. The spin correlation of the infinite cylinder converges to the
// planar value exponentially in W; averaging periodic and antiperiodic
// rings (one ring bond reversed at a seam far from the spins) cancels the
// leading finite-size term.

#include "../error.hpp"
#include "../frustrated.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>
#include <vector>

namespace quadcorr::oracle {

inline constexpr int max_cylinder_width = 16;

struct CylinderSpec {
    int W = 0;
    std::vector<double> ring;                // ring[x]: bond (x, x+1 mod W), identical on every ring
    std::vector<std::vector<double>> layers; // layers[l mod p][x]: bond (x,l)-(x,l+1)
};

inline CylinderSpec uniform_cylinder(int W, double K) {
    return {W, std::vector<double>(static_cast<std::size_t>(W), K), {std::vector<double>(static_cast<std::size_t>(W), K)}};
}

/// Fully frustrated model; column x / row l conventions of frustrated.hpp.
inline CylinderSpec frustrated_cylinder(int W, double K, LatticeVersion version) {
    if (W % 2 != 0) throw domain_error("frustrated_cylinder: W must be even");
    CylinderSpec s{W, std::vector<double>(static_cast<std::size_t>(W), K), {}};
    if (version == LatticeVersion::columnar) {
        std::vector<double> v(static_cast<std::size_t>(W));
        for (int x = 0; x < W; ++x) v[x] = (x % 2 == 0) ? K : -K;
        s.layers.push_back(v);
    } else {
        for (int l = 0; l < 2; ++l) {
            std::vector<double> v(static_cast<std::size_t>(W));
            for (int x = 0; x < W; ++x) v[x] = ((x + l) % 2 == 0) ? -K : K;
            s.layers.push_back(v);
        }
    }
    return s;
}

/// Copy with ring bond (seam, seam+1) reversed.
inline CylinderSpec antiperiodic(CylinderSpec s, int seam) {
    s.ring[static_cast<std::size_t>(((seam % s.W) + s.W) % s.W)] *= -1;
    return s;
}

struct CylinderResult {
    double value = 0;
    double gap_ratio = 0;    // estimated |lambda_1 / lambda_0| of the period product
    bool degenerate = false; // leading eigenvalue not separated; value unreliable
};

class Cylinder {
public:
    explicit Cylinder(CylinderSpec spec) : spec_(std::move(spec)) {
        const int W = spec_.W;
        if (W < 2 || W > max_cylinder_width) {
            std::ostringstream os;
            os << "Cylinder: W = " << W << " outside [2, " << max_cylinder_width << "]";
            throw capacity_error(os.str());
        }
        if (spec_.ring.size() != static_cast<std::size_t>(W) || spec_.layers.empty())
            throw domain_error("Cylinder: coupling arrays do not match W");
        for (const auto& l : spec_.layers)
            if (l.size() != static_cast<std::size_t>(W)) throw domain_error("Cylinder: layer size does not match W");
        dim_ = std::size_t{1} << W;
        half_ring_.resize(dim_);
        double emax = -1e300;
        std::vector<double> e(dim_);
        for (std::size_t s = 0; s < dim_; ++s) {
            double acc = 0;
            for (int x = 0; x < W; ++x) acc += spec_.ring[x] * spin(s, x) * spin(s, (x + 1) % W);
            e[s] = acc;
            emax = std::max(emax, acc);
        }
        for (std::size_t s = 0; s < dim_; ++s) half_ring_[s] = std::exp((e[s] - emax) / 2);
    }

    int W() const { return spec_.W; }
    int period() const { return static_cast<int>(spec_.layers.size()); }
    const CylinderSpec& spec() const { return spec_; }

    static int spin(std::size_t s, int x) { return ((s >> x) & 1u) ? -1 : 1; }

    void multiply_spin(std::vector<double>& v, int x) const {
        x = wrap(x);
        for (std::size_t s = 0; s < dim_; ++s)
            if ((s >> x) & 1u) v[s] = -v[s];
    }

    /// v <- D^{1/2} B(vertical) D^{1/2} v.
    void apply(std::vector<double>& v, const std::vector<double>& vertical) const {
        for (std::size_t s = 0; s < dim_; ++s) v[s] *= half_ring_[s];
        for (int x = 0; x < spec_.W; ++x) {
            const double K = vertical[x];
            const double same = std::exp(K - std::abs(K)), flip = std::exp(-K - std::abs(K));
            const std::size_t bit = std::size_t{1} << x;
            for (std::size_t s = 0; s < dim_; ++s) {
                if (s & bit) continue;
                const double a = v[s], b = v[s | bit];
                v[s] = same * a + flip * b;
                v[s | bit] = flip * a + same * b;
            }
        }
        for (std::size_t s = 0; s < dim_; ++s) v[s] *= half_ring_[s];
    }

    void apply_layer(std::vector<double>& v, int l) const { apply(v, layer(l)); }

    const std::vector<double>& layer(int l) const {
        const int p = period();
        return spec_.layers[static_cast<std::size_t>(((l % p) + p) % p)];
    }

    /// Leading eigenvector of T_l T_{l+1} ... T_{l+p-1} (right = true) or of
    /// T_{l-1} T_{l-2} ... T_{l-p} (right = false).
    const std::vector<double>& leading(int l, bool right) const {
        const int p = period();
        const int key_l = ((l % p) + p) % p;
        if (p == 1) right = true; // T is symmetric: left and right coincide
        const auto key = std::make_pair(key_l, right);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;

        std::vector<double> v(dim_, 1.0 / std::sqrt(static_cast<double>(dim_)));
        double prev_diff = 0, ratio = 0;
        bool converged = false;
        int polish = 10; // iterations kept after reaching the round-off floor
        for (int it = 0; it < max_iterations; ++it) {
            std::vector<double> w = v;
            for (int t = 0; t < p; ++t) apply_layer(w, right ? l + p - 1 - t : l - p + t);
            normalize(w);
            double diff = 0;
            for (std::size_t s = 0; s < dim_; ++s) diff += (w[s] - v[s]) * (w[s] - v[s]);
            diff = std::sqrt(diff);
            if (!converged && prev_diff > 0 && diff > 0) ratio = diff / prev_diff;
            prev_diff = diff;
            v.swap(w);
            if (diff < 1e-13) converged = true;
            if (converged && --polish == 0) break;
        }
        gap_ratio_ = std::max(gap_ratio_, ratio);
        if (!converged) degenerate_ = true;
        return cache_.emplace(key, std::move(v)).first->second;
    }

    /// <s(x0, l0) s(x0+dx, l0+dy)>, dy >= 0.
    CylinderResult spin_correlation(int x0, int l0, int dx, int dy) const {
        if (dy < 0) return spin_correlation(x0 + dx, l0 + dy, -dx, -dy);
        const auto& L = leading(l0, false);
        const auto& R = leading(l0 + dy, true);
        std::vector<double> b = R, d = R;
        multiply_spin(b, x0 + dx);
        for (int t = dy - 1; t >= 0; --t) {
            apply_layer(b, l0 + t);
            apply_layer(d, l0 + t);
            const double scale = norm(d);
            for (auto& x : b) x /= scale;
            for (auto& x : d) x /= scale;
        }
        multiply_spin(b, x0);
        return finish(dot(L, b) / dot(L, d));
    }

    /// Disorder-operator correlation on a period-1 cylinder: the dual spin
    /// pair separated by (dx, dy), dx >= 0. The disorder line reverses ring
    /// bond (x0, x0+1) on dy successive rings, then the vertical bonds of
    /// columns x0+1 .. x0+dx above the last ring. On a high-temperature
    /// cylinder this is the spin correlation of the dual low-temperature model.
    CylinderResult disorder_correlation(int x0, int dx, int dy) const {
        if (period() != 1) throw domain_error("disorder_correlation: needs a period-1 cylinder");
        if (dx < 0 || dy < 0) throw domain_error("disorder_correlation: separations must be non-negative");
        if (dx > spec_.W - 2) throw capacity_error("disorder_correlation: dx too large for W");
        const auto& v0 = leading(0, true);
        const double Kr = spec_.ring[static_cast<std::size_t>(wrap(x0))];
        std::vector<double> flip_weight(dim_);
        for (std::size_t s = 0; s < dim_; ++s) flip_weight[s] = std::exp(-2 * Kr * spin(s, wrap(x0)) * spin(s, wrap(x0 + 1)));
        std::vector<double> vertical = spec_.layers[0];
        for (int x = x0 + 1; x <= x0 + dx; ++x) vertical[static_cast<std::size_t>(wrap(x))] *= -1;

        std::vector<double> a = v0, d = v0;
        for (int y = 0; y < dy; ++y) {
            for (std::size_t s = 0; s < dim_; ++s) a[s] *= flip_weight[s];
            if (y < dy - 1) {
                apply_layer(a, 0);
                apply_layer(d, 0);
                rescale(a, d);
            }
        }
        apply(a, vertical);
        apply_layer(d, 0);
        return finish(dot(v0, a) / dot(v0, d));
    }

    static constexpr int max_iterations = 200000;

private:
    int wrap(int x) const { return ((x % spec_.W) + spec_.W) % spec_.W; }

    static double dot(const std::vector<double>& a, const std::vector<double>& b) {
        return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    }
    static double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }
    static void normalize(std::vector<double>& a) {
        const double n = norm(a);
        for (auto& x : a) x /= n;
    }
    static void rescale(std::vector<double>& a, std::vector<double>& d) {
        const double n = norm(d);
        for (auto& x : a) x /= n;
        for (auto& x : d) x /= n;
    }

    CylinderResult finish(double v) const { return {v, gap_ratio_, degenerate_ || gap_ratio_ > 1 - 1e-9}; }

    CylinderSpec spec_;
    std::size_t dim_ = 0;
    std::vector<double> half_ring_;
    mutable std::map<std::pair<int, bool>, std::vector<double>> cache_;
    mutable double gap_ratio_ = 0;
    mutable bool degenerate_ = false;
};

} // namespace quadcorr::oracle
