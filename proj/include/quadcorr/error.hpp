#pragma once

#include <stdexcept>
#include <string>

namespace quadcorr {

/// Root of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class domain_error : public error {
public:
    using error::error;
};

/// sc(u,k) was requested at a zero of cn.
class pole_error : public error {
public:
    pole_error(const std::string& what, double argument) : error(what), argument_(argument) {}
    double argument() const noexcept { return argument_; }

private:
    double argument_;
};

/// Lookup or window outside the stored/supported range.
class range_error : public error {
public:
    using error::error;
};

/// Arithmetic precision is insufficient for the requested table.
class precision_error : public error {
public:
    precision_error(const std::string& what, int m = -1, int n = -1) : error(what), m_(m), n_(n) {}
    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }

private:
    int m_, n_;
};

/// A relation that should hold by construction was violated beyond tolerance.
class inconsistency_error : public error {
public:
    inconsistency_error(const std::string& what, int index, double residual)
        : error(what), index_(index), residual_(residual) {}
    int index() const noexcept { return index_; }
    double residual() const noexcept { return residual_; }

private:
    int index_;
    double residual_;
};

/// Mismatched inputs, e.g. a table built at the wrong modulus.
class configuration_error : public error {
public:
    using error::error;
};

/// Problem too large for brute force.
class capacity_error : public error {
public:
    using error::error;
};

/// Tail or extrapolation fit could not be performed.
class estimation_error : public error {
public:
    using error::error;
};

} // namespace quadcorr
