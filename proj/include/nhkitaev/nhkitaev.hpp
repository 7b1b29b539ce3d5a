#pragma once

#include "dynamics.hpp"
#include "grid.hpp"
#include "model.hpp"
#include "observables.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "phase.hpp"
#include "sweep.hpp"
#include "table.hpp"
