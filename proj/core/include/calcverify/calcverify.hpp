#pragma once

#include "calcverify/cordic.hpp"
#include "calcverify/diffcheck.hpp"
#include "calcverify/errors.hpp"
#include "calcverify/expr.hpp"
#include "calcverify/legendre.hpp"
#include "calcverify/polynomial.hpp"
#include "calcverify/quadrature.hpp"
#include "calcverify/solvers.hpp"
#include "calcverify/tables.hpp"
