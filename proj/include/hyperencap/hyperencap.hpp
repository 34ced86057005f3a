#pragma once

#include "hyperencap/dag.hpp"
#include "hyperencap/dynamics.hpp"
#include "hyperencap/hypergraph.hpp"
#include "hyperencap/io.hpp"
#include "hyperencap/linegraph.hpp"
#include "hyperencap/randomizer.hpp"
#include "hyperencap/rng.hpp"
#include "hyperencap/rnhm.hpp"
#include "hyperencap/types.hpp"
