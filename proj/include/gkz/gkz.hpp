#pragma once

#include "builders.hpp"
#include "ci_mirror.hpp"
#include "coefficients.hpp"
#include "errors.hpp"
#include "graded_series.hpp"
#include "lattice.hpp"
#include "logseries.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "support.hpp"
