#pragma once

#include "conexp/cone_expectile.hpp"
#include "conexp/core.hpp"
#include "conexp/errors.hpp"
#include "conexp/geometry.hpp"
#include "conexp/rank_order.hpp"
#include "conexp/sample.hpp"
#include "conexp/scalar_expectile.hpp"
#include "conexp/scenario_dual.hpp"
