#pragma once

#include "govsim/params.hpp"
#include "govsim/payoffs.hpp"
#include "govsim/replicator.hpp"
#include "govsim/equilibria.hpp"
#include "govsim/limit_cycle.hpp"
#include "govsim/finite.hpp"
#include "govsim/csv.hpp"
#include "govsim/svg.hpp"
#include "govsim/config.hpp"
#include "govsim/experiments.hpp"
