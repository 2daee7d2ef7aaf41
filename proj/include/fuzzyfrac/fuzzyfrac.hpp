#pragma once

#include "fuzzyfrac/error.hpp"
#include "fuzzyfrac/special.hpp"
#include "fuzzyfrac/quadrature.hpp"
#include "fuzzyfrac/fuzzy_number.hpp"
#include "fuzzyfrac/frac_calc.hpp"
#include "fuzzyfrac/fuzzy_function.hpp"
#include "fuzzyfrac/fuzzy_frac.hpp"
#include "fuzzyfrac/euler.hpp"
#include "fuzzyfrac/examples.hpp"
