#pragma once

// Exact scalar arithmetic and linear algebra over K = (Q, v_p) and the
// Eisenstein extensions L = K[pi]/(pi^e - p).

#include "xbar/arith/lscalar.hpp"
#include "xbar/arith/matrix.hpp"
#include "xbar/arith/rational.hpp"
#include "xbar/arith/valuation.hpp"
#include "xbar/error.hpp"
