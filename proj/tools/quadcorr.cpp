#include <quadcorr/cli.hpp>

int main(int argc, char** argv) { return quadcorr::cli::run(argc, argv); }
