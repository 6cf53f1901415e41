#pragma once

// Command-line front end. Exit status: 0 success, 1 verification failure,
// 2 usage, configuration or domain error (one-line diagnostic on stderr).

#include "chi.hpp"
#include "corr_engine.hpp"
#include "frustrated.hpp"
#include "io.hpp"
#include "oracle/verify.hpp"
#include "quasiperiodic.hpp"
#include "suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace quadcorr::cli {

inline constexpr const char* thread_env = "QUADCORR_THREADS";

struct RunConfig {
    std::string chi_source; // uniform, frustrated or gauge
    std::string suite;

    std::optional<double> k, S, gamma;
    std::optional<int> j;
    std::string version = "b";
    bool dual = false;

    std::optional<int> radius;
    int precision_bits = default_precision_bits;
    std::string grid = "64x64";
    int denominator = 4;
    long long window = 100000;
    long long count = 0;
    bool signs = false;
    std::optional<double> tol;

    std::string out, pgm, peaks, report_csv;

    std::set<std::string> command_line; // flags given on the command line rather than by --config

    /// Set and given explicitly; config-file defaults for other commands are ignored.
    template <class T>
    bool explicit_(const std::optional<T>& v, const std::string& flag) const {
        return v.has_value() && command_line.count(flag) > 0;
    }
};

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::pair<int, int> parse_grid(const std::string& s) {
    int nx = 0, ny = 0;
    char x = 0, tail = 0;
    std::istringstream is(s);
    if (!(is >> nx >> x >> ny) || (x != 'x' && x != 'X') || (is >> tail) || nx < 2 || ny < 2)
        throw UsageError("--grid expects <nx>x<ny> with both at least 2, got '" + s + "'");
    return {nx, ny};
}

inline unsigned thread_count() {
    if (const char* v = std::getenv(thread_env)) {
        char* end = nullptr;
        const long n = std::strtol(v, &end, 10);
        if (end == v || *end != '\0' || n < 1) throw UsageError(std::string(thread_env) + " must be a positive integer");
        return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline void emit(const std::string& path, const std::string& bytes, std::ostream& out) {
    if (path.empty() || path == "-")
        out << bytes;
    else
        io::atomic_write(path, bytes);
}

inline double require(const std::optional<double>& v, const char* flag, const std::string& cmd) {
    if (!v) throw UsageError(cmd + " requires " + flag);
    return *v;
}

inline void forbid(bool present, const char* flag, const std::string& cmd) {
    if (present) throw UsageError(std::string(flag) + " is not a parameter of " + cmd);
}

inline int radius_of(const RunConfig& c, const std::string& cmd) {
    if (!c.radius) throw UsageError(cmd + " requires --radius");
    return *c.radius;
}

/// k in (0,1) for the disordered-phase commands.
inline double subcritical_k(const RunConfig& c, const std::string& cmd) {
    const double k = require(c.k, "--k", cmd);
    if (!(k > 0) || !(k < 1)) {
        std::ostringstream os;
        os << cmd << ": k = " << k << " outside the domain k in (0,1)";
        if (k > 1) os << "; k > 1 is served only by `corr --dual`";
        throw UsageError(os.str());
    }
    return k;
}

inline LatticeVersion parse_version(const std::string& v) {
    if (v == "a") return LatticeVersion::checkerboard;
    if (v == "b") return LatticeVersion::columnar;
    throw UsageError("--version must be a or b, got '" + v + "'");
}

inline int run_corr(const RunConfig& c, std::ostream& out) {
    forbid(c.explicit_(c.S, "--S"), "--S", "corr");
    forbid(c.explicit_(c.j, "--j"), "--j", "corr");
    const double k = require(c.k, "--k", "corr");
    if (k > 1 && !c.dual) throw UsageError("corr: k > 1 requires --dual (built at 1/k with C and Cbar exchanged)");
    const auto table = build_table(k, radius_of(c, "corr"), c.precision_bits);
    std::ostringstream os;
    table.write_csv(os);
    emit(c.out, os.str(), out);
    return 0;
}

inline int run_chi(const RunConfig& c, std::ostream& out) {
    const std::string cmd = "chi " + c.chi_source;
    const auto [nx, ny] = parse_grid(c.grid);
    const int R = radius_of(c, cmd);
    if (R < 4) throw UsageError(cmd + ": --radius must be at least 4 to estimate the truncation tail");
    if (c.dual) throw UsageError(cmd + ": --dual applies to corr only");
    std::optional<CorrelationTable> table;
    ChiSource src = UniformSource{nullptr};
    if (c.chi_source == "uniform" || c.chi_source == "gauge") {
        forbid(c.explicit_(c.S, "--S"), "--S", cmd);
        table.emplace(build_table(subcritical_k(c, cmd), R, c.precision_bits));
        if (c.chi_source == "uniform") {
            forbid(c.explicit_(c.j, "--j") || c.explicit_(c.gamma, "--gamma"), "--j/--gamma", cmd);
            src = UniformSource{&*table};
        } else {
            if (!c.j) throw UsageError(cmd + " requires --j");
            const FibonacciSpec spec{*c.j, c.gamma.value_or(0.0)};
            if (c.window <= 2LL * R) throw UsageError(cmd + ": --window must exceed twice the radius");
            const auto seq = sign_sequence(spec, static_cast<std::size_t>(c.window));
            src = GaugeSource{&*table, autocorrelation(seq, R)};
        }
    } else {
        forbid(c.explicit_(c.k, "--k"), "--k", cmd);
        forbid(c.explicit_(c.j, "--j") || c.explicit_(c.gamma, "--gamma"), "--j/--gamma", cmd);
        const FrustratedModel model{require(c.S, "--S", cmd), parse_version(c.version)};
        table.emplace(build_table(dual_pair(model.S).k, std::max(2, (R + 1) / 2), c.precision_bits));
        src = FrustratedSource{model, &*table};
    }
    const auto g = chi_grid(src, nx, ny, R, thread_count());
    std::ostringstream csv;
    write_chi_csv(csv, g);
    emit(c.out, csv.str(), out);
    if (!c.pgm.empty()) io::atomic_write(c.pgm, io::encode_pgm16(g.values, g.nx, g.ny));
    if (!c.peaks.empty()) {
        std::ostringstream os;
        write_peaks_csv(os, find_peaks(g, c.denominator));
        io::atomic_write(c.peaks, os.str());
    }
    return 0;
}

inline int run_fib(const RunConfig& c, std::ostream& out) {
    forbid(c.explicit_(c.k, "--k") || c.explicit_(c.S, "--S"), "--k/--S", "fib");
    if (!c.j) throw UsageError("fib requires --j");
    if (c.count < 1) throw UsageError("fib requires --count >= 1");
    const FibonacciSpec spec{*c.j, c.gamma.value_or(0.0)};
    validate(spec);
    std::string text;
    if (c.signs) {
        for (int s : sign_sequence(spec, static_cast<std::size_t>(c.count)).signs) text += (s > 0 ? "1\n" : "-1\n");
    } else {
        for (long long n = 0; n < c.count; ++n) text += fib_bit(spec, n) ? "1\n" : "0\n";
    }
    emit(c.out, text, out);
    return 0;
}

inline int run_verify(const RunConfig& c, std::ostream& out) {
    const double tol = c.tol.value_or(1e-6);
    if (!(tol > 0)) throw UsageError("verify: --tol must be positive");
    const auto rep = suites::run(c.suite, tol);
    rep.write_text(out);
    if (!c.report_csv.empty()) {
        std::ostringstream os;
        rep.write_csv(os);
        io::atomic_write(c.report_csv, os.str());
    }
    return rep.passed() ? 0 : 1;
}

} // namespace detail

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig c;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a.rfind("--", 0) == 0) c.command_line.insert(a.substr(0, a.find('=')));
    }
    CLI::App app{"Exact Ising pair correlations and wavevector-dependent susceptibility", "quadcorr"};
    app.set_config("--config", "", "Defaults as `key = value` lines; flags override");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    app.add_option("--k", c.k, "Elliptic modulus");
    app.add_option("--S", c.S, "sinh(2J/kT) of the fully frustrated model");
    app.add_option("--version", c.version, "Frustrated lattice version a or b");
    app.add_option("--j", c.j, "Fibonacci family index");
    app.add_option("--gamma", c.gamma, "Fibonacci offset in [0,1)");
    app.add_flag("--dual", c.dual, "Allow k > 1 for corr via duality");
    app.add_option("--radius", c.radius, "Table radius or chi window");
    app.add_option("--precision", c.precision_bits, "Arithmetic precision in bits");
    app.add_option("--grid", c.grid, "chi grid as <nx>x<ny>");
    app.add_option("--denominator", c.denominator, "Commensurability denominator for peaks");
    app.add_option("--window", c.window, "Sign-sequence length for the gauge autocorrelation");
    app.add_option("--count", c.count, "Number of Fibonacci terms");
    app.add_flag("--signs", c.signs, "Print signs instead of bits");
    app.add_option("--tol", c.tol, "Oracle-comparison tolerance for verify");
    app.add_option("--out", c.out, "Output file (stdout when absent)");
    app.add_option("--pgm", c.pgm, "16-bit PGM density map of chi");
    app.add_option("--peaks", c.peaks, "Peak report CSV");
    app.add_option("--report-csv", c.report_csv, "Verification report CSV");

    auto* corr = app.add_subcommand("corr", "Correlation table C, Cbar as CSV")->fallthrough();
    auto* chi = app.add_subcommand("chi", "chi(q) on a Brillouin-zone grid")->fallthrough()->require_subcommand(1);
    for (const char* name : {"uniform", "frustrated", "gauge"})
        chi->add_subcommand(name)->fallthrough()->callback([&c, name] { c.chi_source = name; });
    auto* fib = app.add_subcommand("fib", "Generalized Fibonacci sequence")->fallthrough();
    auto* verify = app.add_subcommand("verify", "Run a verification suite")->fallthrough();
    verify->add_option("suite", c.suite, "Suite name")->required()->check(CLI::IsMember(suites::names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "quadcorr: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*corr) return detail::run_corr(c, out);
        if (*chi) return detail::run_chi(c, out);
        if (*fib) return detail::run_fib(c, out);
        if (*verify) return detail::run_verify(c, out);
    } catch (const detail::UsageError& e) {
        err << "quadcorr: " << e.what() << '\n';
        return 2;
    } catch (const error& e) {
        err << "quadcorr: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace quadcorr::cli
