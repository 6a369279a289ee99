#pragma once

// Umbrella header.

#include "error.hpp"
#include "exact.hpp"
#include "families.hpp"
#include "io.hpp"
#include "jacobi.hpp"
#include "matrix.hpp"
#include "operators.hpp"
#include "poly.hpp"
#include "positivity.hpp"
#include "recursive.hpp"
