#pragma once

// Everything except the JSON layer (polya/io.hpp), which needs nlohmann/json.

#include "polya/classify.hpp"
#include "polya/convergence.hpp"
#include "polya/errors.hpp"
#include "polya/jensen.hpp"
#include "polya/polynomial.hpp"
#include "polya/powersums.hpp"
#include "polya/regions.hpp"
#include "polya/rootfind.hpp"
