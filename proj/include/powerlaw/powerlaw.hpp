#pragma once

// Umbrella header for the powerlaw library: Pareto tail models and samplers,
// the empirical tail, the MLE and least-squares exponent estimators with
// their bias corrections, KS-based cutoff selection, the order-statistics
// representation of the LR estimator, and the Monte-Carlo experiment grid.

#include "powerlaw/cutoff.hpp"
#include "powerlaw/distributions.hpp"
#include "powerlaw/empirical.hpp"
#include "powerlaw/estimators.hpp"
#include "powerlaw/montecarlo.hpp"
#include "powerlaw/random.hpp"
#include "powerlaw/renyi.hpp"
#include "powerlaw/stats.hpp"
