#pragma once

// Umbrella header for the plant scheduling toolkit.

#include "h2dri/csv.hpp"
#include "h2dri/drmetrics.hpp"
#include "h2dri/engine.hpp"
#include "h2dri/errors.hpp"
#include "h2dri/identify.hpp"
#include "h2dri/linear_model.hpp"
#include "h2dri/manifest.hpp"
#include "h2dri/oracle.hpp"
#include "h2dri/plant_model.hpp"
#include "h2dri/plant_params.hpp"
#include "h2dri/problem_builder.hpp"
#include "h2dri/scenario.hpp"
#include "h2dri/sf_flex.hpp"
#include "h2dri/simplex.hpp"
#include "h2dri/solve.hpp"
#include "h2dri/surrogate.hpp"
#include "h2dri/timeseries.hpp"
#include "h2dri/trajectory_io.hpp"
#include "h2dri/version.hpp"
