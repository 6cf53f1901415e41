#pragma once

#include "chi.hpp"
#include "corr_engine.hpp"
#include "couplings.hpp"
#include "elliptic.hpp"
#include "error.hpp"
#include "frustrated.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "oracle/correlations.hpp"
#include "oracle/cylinder.hpp"
#include "oracle/extrapolate.hpp"
#include "oracle/lattice.hpp"
#include "oracle/torus.hpp"
#include "oracle/verify.hpp"
#include "precision.hpp"
#include "quasiperiodic.hpp"
