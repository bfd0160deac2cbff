#pragma once

#include "eoregion/construct.hpp"
#include "eoregion/distribution.hpp"
#include "eoregion/error.hpp"
#include "eoregion/fairopt.hpp"
#include "eoregion/metrics.hpp"
#include "eoregion/region.hpp"
