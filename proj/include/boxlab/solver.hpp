#pragma once

#include "boxlab/solver/disc.hpp"
#include "boxlab/solver/interval.hpp"
#include "boxlab/solver/linear.hpp"
#include "boxlab/solver/lp.hpp"
