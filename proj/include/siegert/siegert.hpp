#pragma once

// Gamow-Siegert resonance states of finite-range potentials: pole search,
// normalized eigenfunctions, expectation values under the surface-term and
// Zel'dovich-Berggren prescriptions, and Heisenberg uncertainty products.

#include "siegert/complex_moments.hpp"
#include "siegert/config.hpp"
#include "siegert/errors.hpp"
#include "siegert/expectation.hpp"
#include "siegert/poles.hpp"
#include "siegert/potentials.hpp"
#include "siegert/states.hpp"
#include "siegert/sweep.hpp"
#include "siegert/uncertainty.hpp"
