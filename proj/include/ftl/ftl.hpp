#pragma once

#include "ftl/model.hpp"
#include "ftl/schedule.hpp"
#include "ftl/solution.hpp"
#include "ftl/instances.hpp"
#include "ftl/operators.hpp"
#include "ftl/engine.hpp"
#include "ftl/scenarios.hpp"
#include "ftl/oracle.hpp"
