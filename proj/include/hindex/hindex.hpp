#pragma once

// Umbrella header.

#include "hindex/common.hpp"
#include "hindex/distribution.hpp"
#include "hindex/distributions.hpp"
#include "hindex/estimation.hpp"
#include "hindex/io.hpp"
#include "hindex/moments.hpp"
#include "hindex/montecarlo.hpp"
#include "hindex/rng.hpp"
#include "hindex/sample.hpp"
#include "hindex/special.hpp"
