#pragma once

#include "core.hpp"
#include "verdict.hpp"
#include "set.hpp"
#include "eqrel.hpp"
#include "numbering.hpp"
#include "constructions.hpp"
#include "text.hpp"
#include "learner.hpp"
#include "criteria.hpp"
#include "adversary.hpp"
