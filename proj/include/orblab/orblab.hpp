#pragma once

#include "orblab/asymptotics.hpp"
#include "orblab/bubble.hpp"
#include "orblab/constants.hpp"
#include "orblab/energy.hpp"
#include "orblab/fitting.hpp"
#include "orblab/frame_curvature.hpp"
#include "orblab/geometry.hpp"
#include "orblab/kfamily.hpp"
#include "orblab/pohozaev.hpp"
#include "orblab/pohozaev_lebrun.hpp"
#include "orblab/quadrature.hpp"
#include "orblab/solver.hpp"
#include "orblab/transform.hpp"
