#pragma once

// Umbrella header: the complete public API.

#include "qfp/chernoff.hpp"
#include "qfp/codes.hpp"
#include "qfp/decision.hpp"
#include "qfp/imperfections.hpp"
#include "qfp/information.hpp"
#include "qfp/interference.hpp"
#include "qfp/montecarlo.hpp"
#include "qfp/serialization.hpp"
#include "qfp/special.hpp"
