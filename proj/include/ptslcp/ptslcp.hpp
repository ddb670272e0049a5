#pragma once

#include "ptslcp/bench.hpp"
#include "ptslcp/corrector.hpp"
#include "ptslcp/diagnostics.hpp"
#include "ptslcp/directions.hpp"
#include "ptslcp/error.hpp"
#include "ptslcp/linalg.hpp"
#include "ptslcp/predictor.hpp"
#include "ptslcp/problem.hpp"
#include "ptslcp/pts_core.hpp"
#include "ptslcp/quadratic.hpp"
#include "ptslcp/solver.hpp"
