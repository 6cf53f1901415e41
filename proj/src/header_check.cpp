// Compiles every public header, including the CLI, as part of the default build.

#include <quadcorr/quadcorr.hpp>
#include <quadcorr/cli.hpp>
#include <quadcorr/suites.hpp>
