#pragma once

// Exact integer linear algebra: arbitrary-precision integers, dense matrices,
// Smith normal form, kernels and lattice solving.

#include "yoneda/exactint/int_matrix.hpp"
#include "yoneda/exactint/integer.hpp"
#include "yoneda/exactint/smith.hpp"
