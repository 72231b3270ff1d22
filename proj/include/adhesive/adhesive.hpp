#pragma once

#include "adhesive/error.hpp"
#include "adhesive/graph.hpp"
#include "adhesive/search.hpp"
#include "adhesive/limits.hpp"
#include "adhesive/lattice.hpp"
#include "adhesive/dpo.hpp"
#include "adhesive/decomposition.hpp"
#include "adhesive/solos.hpp"
#include "adhesive/oracle.hpp"
