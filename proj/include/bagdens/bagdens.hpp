#pragma once

//! Convenience header pulling in the full library surface: estimators,
//! bandwidth selection, bagging, variability bands, data models, and the
//! experiment harness.

#include "bagging.hpp"
#include "bands.hpp"
#include "bandwidth.hpp"
#include "estimator_spec.hpp"
#include "frequency_polygon.hpp"
#include "grid.hpp"
#include "harness/config.hpp"
#include "harness/csv.hpp"
#include "harness/runner.hpp"
#include "harness/selfcheck.hpp"
#include "histogram.hpp"
#include "kde.hpp"
#include "kernels.hpp"
#include "metrics.hpp"
#include "models.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "sample.hpp"
