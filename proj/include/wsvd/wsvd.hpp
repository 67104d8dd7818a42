#pragma once

// Umbrella header: weighted SVD kernel bases on bivariate domains, the
// approximation operators built on them, and the experiment harness.

#include "wsvd/approx.hpp"
#include "wsvd/basis.hpp"
#include "wsvd/bench.hpp"
#include "wsvd/cubature.hpp"
#include "wsvd/geometry.hpp"
#include "wsvd/kernels.hpp"
#include "wsvd/types.hpp"
