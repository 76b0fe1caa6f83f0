#pragma once

// Umbrella header.

#include "bellforge/analytic.hpp"
#include "bellforge/behavior.hpp"
#include "bellforge/bits.hpp"
#include "bellforge/bounds.hpp"
#include "bellforge/families.hpp"
#include "bellforge/functional.hpp"
#include "bellforge/grouping.hpp"
#include "bellforge/io.hpp"
#include "bellforge/ns_boxes.hpp"
#include "bellforge/optimize.hpp"
#include "bellforge/parallel.hpp"
#include "bellforge/quantum.hpp"
#include "bellforge/rational.hpp"
#include "bellforge/rng.hpp"
#include "bellforge/strategy.hpp"
