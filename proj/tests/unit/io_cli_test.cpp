#include <quadcorr/cli.hpp>
#include <quadcorr/io.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace quadcorr;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "quadcorr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir() {
    const auto d = fs::temp_directory_path() / ("quadcorr_io_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST(Format, RoundTripsDoubles) {
    EXPECT_EQ(io::format_real(0.5), "5.0000000000000000e-01");
    EXPECT_EQ(io::format_real(-0.0), "0.0000000000000000e+00");
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(io::format_real(x)), x);
}

TEST(AtomicWrite, ReplacesContentAndLeavesNoTemporary) {
    const auto d = temp_dir();
    const auto p = d / "a.txt";
    io::atomic_write(p, "first");
    io::atomic_write(p, "second");
    EXPECT_EQ(slurp(p), "second");
    int files = 0;
    for (const auto& e : fs::directory_iterator(d)) files += e.is_regular_file();
    EXPECT_EQ(files, 1);
    EXPECT_THROW(io::atomic_write(d / "missing" / "b.txt", "x"), configuration_error);
    fs::remove_all(d);
}

TEST(Pgm, HeaderAndScaling) {
    const auto s = io::encode_pgm16({0.0, 1.0, 0.5, 1.0}, 2, 2);
    const std::string header = "P5\n2 2\n65535\n";
    ASSERT_EQ(s.size(), header.size() + 8);
    EXPECT_EQ(s.substr(0, header.size()), header);
    auto sample = [&](int i) {
        return (static_cast<unsigned char>(s[header.size() + 2 * i]) << 8) |
               static_cast<unsigned char>(s[header.size() + 2 * i + 1]);
    };
    EXPECT_EQ(sample(0), 0);
    EXPECT_EQ(sample(1), 65535);
    EXPECT_EQ(sample(2), 32768);
    const auto flat = io::encode_pgm16({3.0, 3.0}, 2, 1);
    EXPECT_EQ(flat.substr(flat.size() - 4), std::string(4, '\0'));
    EXPECT_THROW(io::encode_pgm16({1.0}, 2, 1), configuration_error);
}

TEST(Cli, FibPrefix) {
    const auto r = run({"fib", "--j", "0", "--count", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0\n1\n0\n1\n1\n");
    EXPECT_EQ(run({"fib", "--j", "0", "--count", "3", "--signs"}).out, "1\n-1\n1\n");
}

TEST(Cli, CorrTable) {
    const auto r = run({"corr", "--k", "0.5", "--radius", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "m,n,C,Cbar");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
}

TEST(Cli, DualExchangesColumns) {
    const auto lo = run({"corr", "--k", "0.5", "--radius", "2"});
    const auto hi = run({"corr", "--k", "2", "--dual", "--radius", "2"});
    ASSERT_EQ(hi.code, 0);
    std::istringstream a(lo.out), b(hi.out);
    std::string la, lb;
    std::getline(a, la);
    std::getline(b, lb);
    while (std::getline(a, la) && std::getline(b, lb)) {
        auto cols = [](const std::string& s) {
            std::vector<std::string> v;
            std::istringstream is(s);
            for (std::string f; std::getline(is, f, ',');) v.push_back(f);
            return v;
        };
        const auto x = cols(la), y = cols(lb);
        EXPECT_EQ(x[2], y[3]);
        EXPECT_EQ(x[3], y[2]);
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"chi", "uniform", "--k", "1.5", "--radius", "8"}).code, 2);
    EXPECT_EQ(run({"corr", "--k", "1.5", "--radius", "3"}).code, 2);
    EXPECT_EQ(run({"corr", "--radius", "3"}).code, 2);
    EXPECT_EQ(run({"fib", "--j", "0", "--count", "3", "--bogus"}).code, 2);
    EXPECT_EQ(run({"verify", "nope"}).code, 2);
    EXPECT_EQ(run({"chi", "uniform", "--k", "0.5", "--radius", "8", "--grid", "8by8"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    const auto r = run({"chi", "uniform", "--k", "1.5", "--radius", "8"});
    EXPECT_NE(r.err.find("corr --dual"), std::string::npos);
}

TEST(Cli, ConfigFile) {
    const auto d = temp_dir();
    std::ofstream(d / "good.ini") << "k = 0.5\nradius = 2\n";
    std::ofstream(d / "bad.ini") << "k = 0.5\nradiuss = 2\n";
    const auto g = run({"corr", "--config", (d / "good.ini").string()});
    EXPECT_EQ(g.code, 0);
    EXPECT_EQ(g.out, run({"corr", "--k", "0.5", "--radius", "2"}).out);
    EXPECT_EQ(run({"corr", "--config", (d / "good.ini").string(), "--radius", "3"}).out,
              run({"corr", "--k", "0.5", "--radius", "3"}).out);
    EXPECT_EQ(run({"corr", "--config", (d / "bad.ini").string()}).code, 2);
    EXPECT_EQ(run({"chi", "frustrated", "--S", "1", "--radius", "6", "--grid", "4x4", "--config",
                   (d / "good.ini").string()}).code,
              0);
    fs::remove_all(d);
}

TEST(Cli, ChiOutputsAreDeterministic) {
    const auto d = temp_dir();
    const auto a = run({"chi", "uniform", "--k", "0.5", "--radius", "10", "--grid", "8x8", "--pgm",
                        (d / "a.pgm").string(), "--peaks", (d / "a.csv").string()});
    setenv(cli::thread_env, "3", 1);
    const auto b = run({"chi", "uniform", "--k", "0.5", "--radius", "10", "--grid", "8x8", "--pgm",
                        (d / "b.pgm").string(), "--peaks", (d / "b.csv").string()});
    unsetenv(cli::thread_env);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(slurp(d / "a.pgm"), slurp(d / "b.pgm"));
    EXPECT_EQ(slurp(d / "a.csv"), slurp(d / "b.csv"));
    EXPECT_EQ(slurp(d / "a.pgm").substr(0, 11), "P5\n8 8\n6553");
    fs::remove_all(d);
}

TEST(Cli, VerifySuite) {
    const auto d = temp_dir();
    const auto r = run({"verify", "elliptic", "--report-csv", (d / "r.csv").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verification passed"), std::string::npos);
    EXPECT_EQ(slurp(d / "r.csv").substr(0, 8), "identity");
    fs::remove_all(d);
}
