#pragma once

#include "uavloc/channel.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/estimator.hpp"
#include "uavloc/fisher.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/metrics_io.hpp"
#include "uavloc/planner.hpp"
#include "uavloc/rng.hpp"
#include "uavloc/scenario.hpp"
#include "uavloc/simulation.hpp"
