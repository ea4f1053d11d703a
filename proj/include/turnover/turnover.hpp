#pragma once

// Umbrella header for the turnover toolkit: complex hyperbolic geometry
// primitives, turnover representations of triangle groups in PU(2,1),
// the bisector-quadrangle discreteness test, disc-orbibundle invariants,
// and the census / scanning drivers.

#include "turnover/errors.hpp"
#include "turnover/rational.hpp"
#include "turnover/hermitian.hpp"
#include "turnover/slice.hpp"
#include "turnover/isometry.hpp"
#include "turnover/selection.hpp"
#include "turnover/charvar.hpp"
#include "turnover/bisector.hpp"
#include "turnover/quadrangle.hpp"
#include "turnover/invariants.hpp"
#include "turnover/io.hpp"
#include "turnover/census.hpp"
