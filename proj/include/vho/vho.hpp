#pragma once

#include "vho/analytic.hpp"
#include "vho/baselines.hpp"
#include "vho/coverage.hpp"
#include "vho/errors.hpp"
#include "vho/geometry.hpp"
#include "vho/io.hpp"
#include "vho/manifest.hpp"
#include "vho/math.hpp"
#include "vho/montecarlo.hpp"
#include "vho/rng.hpp"
#include "vho/svg_plot.hpp"
#include "vho/version.hpp"
