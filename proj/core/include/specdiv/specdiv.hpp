#pragma once

#include "specdiv/chains.hpp"
#include "specdiv/enumerate.hpp"
#include "specdiv/io.hpp"
#include "specdiv/lattice.hpp"
#include "specdiv/matrix.hpp"
#include "specdiv/multiplicity.hpp"
#include "specdiv/numeric.hpp"
#include "specdiv/reduce.hpp"
#include "specdiv/special.hpp"
#include "specdiv/theta.hpp"
#include "specdiv/version.hpp"
