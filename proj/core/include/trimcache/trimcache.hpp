#pragma once

#include "trimcache/baselines.hpp"
#include "trimcache/dp_select.hpp"
#include "trimcache/error.hpp"
#include "trimcache/fading.hpp"
#include "trimcache/library.hpp"
#include "trimcache/mobility.hpp"
#include "trimcache/objective.hpp"
#include "trimcache/placement.hpp"
#include "trimcache/radio.hpp"
#include "trimcache/rng.hpp"
#include "trimcache/scenario.hpp"
#include "trimcache/scenario_gen.hpp"
#include "trimcache/solver_gen.hpp"
#include "trimcache/solver_spec.hpp"
#include "trimcache/types.hpp"
