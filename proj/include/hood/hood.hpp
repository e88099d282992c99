#pragma once

#include "hood/errors.hpp"
#include "hood/padic.hpp"
#include "hood/matrix.hpp"
#include "hood/entropy_value.hpp"
#include "hood/newton.hpp"
#include "hood/lattice.hpp"
#include "hood/cotrajectory.hpp"
#include "hood/heisenberg.hpp"
#include "hood/finite_group.hpp"
#include "hood/classifier.hpp"
#include "hood/json_io.hpp"
#include "hood/jobs.hpp"
#include "hood/suites.hpp"
