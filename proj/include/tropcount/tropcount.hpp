#pragma once

#include "numeric.hpp"
#include "sequence.hpp"
#include "lattice.hpp"
#include "multiplicity.hpp"
#include "memo.hpp"
#include "counts.hpp"
#include "io.hpp"
#include "verify.hpp"
