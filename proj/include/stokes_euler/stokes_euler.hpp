#pragma once

#include "error.hpp"
#include "int_matrix.hpp"
#include "orbifold.hpp"
#include "picard.hpp"
#include "euler_matrix.hpp"
#include "unfolding.hpp"
#include "jacobian.hpp"
#include "critical.hpp"
#include "sectors.hpp"
#include "lattice.hpp"
#include "moves.hpp"
#include "search.hpp"
#include "mirror1d.hpp"
#include "thimble.hpp"
#include "moments.hpp"
#include "stokes1d.hpp"
#include "serialize.hpp"
#include "report.hpp"
#include "svg.hpp"
#include "verify.hpp"
#include "emit.hpp"
