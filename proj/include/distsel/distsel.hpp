#pragma once

// Umbrella header.

#include "distsel/criteria.hpp"
#include "distsel/csv.hpp"
#include "distsel/distribution.hpp"
#include "distsel/errors.hpp"
#include "distsel/fit.hpp"
#include "distsel/gof.hpp"
#include "distsel/histogram.hpp"
#include "distsel/lmoments.hpp"
#include "distsel/params.hpp"
#include "distsel/pipeline.hpp"
#include "distsel/report.hpp"
#include "distsel/select.hpp"
#include "distsel/series.hpp"
#include "distsel/svg.hpp"
#include "distsel/version.hpp"
