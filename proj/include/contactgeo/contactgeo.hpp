#pragma once

#include "contactgeo/config.hpp"
#include "contactgeo/curvature.hpp"
#include "contactgeo/equilibrium.hpp"
#include "contactgeo/expr.hpp"
#include "contactgeo/hamiltonian.hpp"
#include "contactgeo/io.hpp"
#include "contactgeo/keyvalue.hpp"
#include "contactgeo/lie.hpp"
#include "contactgeo/metrics.hpp"
#include "contactgeo/parser.hpp"
#include "contactgeo/phase_space.hpp"
#include "contactgeo/sampling.hpp"
#include "contactgeo/structures.hpp"
#include "contactgeo/tensor.hpp"
#include "contactgeo/verify.hpp"
