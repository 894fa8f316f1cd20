#ifndef STRATA_STRATA_HPP
#define STRATA_STRATA_HPP

// Umbrella header: the whole library.

#include "strata/skeleton.hpp"
#include "strata/graph.hpp"
#include "strata/morphism.hpp"
#include "strata/generator.hpp"
#include "strata/amalgamation.hpp"
#include "strata/decomposition.hpp"
#include "strata/pseudomanifold.hpp"
#include "strata/limits.hpp"
#include "strata/json_io.hpp"
#include "strata/dsl.hpp"

#endif  // STRATA_STRATA_HPP
