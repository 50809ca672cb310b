#pragma once
// Umbrella header for the library (the CLI lives in casimir_duomode/cli/).

#include "casimir_duomode/acceptance.hpp"
#include "casimir_duomode/cavity.hpp"
#include "casimir_duomode/errors.hpp"
#include "casimir_duomode/evolution.hpp"
#include "casimir_duomode/figures.hpp"
#include "casimir_duomode/gaussian.hpp"
#include "casimir_duomode/legendre.hpp"
#include "casimir_duomode/oracle.hpp"
#include "casimir_duomode/parallel.hpp"
#include "casimir_duomode/photon_distribution.hpp"
#include "casimir_duomode/resmap.hpp"
#include "casimir_duomode/slowamp.hpp"
