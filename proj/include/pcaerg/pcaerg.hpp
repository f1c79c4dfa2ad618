#pragma once

#include "pcaerg/boundary_chain.hpp"
#include "pcaerg/boundary_walk.hpp"
#include "pcaerg/condition.hpp"
#include "pcaerg/envelope.hpp"
#include "pcaerg/errors.hpp"
#include "pcaerg/gamma.hpp"
#include "pcaerg/geometric_law.hpp"
#include "pcaerg/io.hpp"
#include "pcaerg/params.hpp"
#include "pcaerg/raster.hpp"
#include "pcaerg/refined.hpp"
#include "pcaerg/rng.hpp"
#include "pcaerg/stats.hpp"
#include "pcaerg/sweep.hpp"
#include "pcaerg/tolerance.hpp"
