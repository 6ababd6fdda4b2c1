// bellseq.hpp
// Umbrella header.

#pragma once

#include "bellseq/analytic.hpp"
#include "bellseq/cascade.hpp"
#include "bellseq/combinatorics.hpp"
#include "bellseq/matrix.hpp"
#include "bellseq/measurement.hpp"
#include "bellseq/observables.hpp"
#include "bellseq/oracle.hpp"
#include "bellseq/pomgame.hpp"
