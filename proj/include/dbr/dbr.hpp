#pragma once

// Umbrella header.

#include "dbr/circle_integrals.hpp"
#include "dbr/conditions.hpp"
#include "dbr/disk_point.hpp"
#include "dbr/errors.hpp"
#include "dbr/experiments.hpp"
#include "dbr/identities.hpp"
#include "dbr/kernels.hpp"
#include "dbr/quadrature.hpp"
#include "dbr/regions.hpp"
#include "dbr/rho.hpp"
#include "dbr/symbol.hpp"
#include "dbr/version.hpp"
