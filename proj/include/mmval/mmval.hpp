#pragma once

#include "mmval/config.hpp"
#include "mmval/curve.hpp"
#include "mmval/format.hpp"
#include "mmval/instrument.hpp"
#include "mmval/risk.hpp"
#include "mmval/simulation.hpp"
#include "mmval/time.hpp"
#include "mmval/valuation.hpp"
