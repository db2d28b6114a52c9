#pragma once

#include "lcaz/error.hpp"
#include "lcaz/gfp.hpp"
#include "lcaz/grid.hpp"
#include "lcaz/boundary.hpp"
#include "lcaz/stepper.hpp"
#include "lcaz/matrix.hpp"
#include "lcaz/rulematrix.hpp"
#include "lcaz/linalg.hpp"
#include "lcaz/dynamics.hpp"
#include "lcaz/io.hpp"
