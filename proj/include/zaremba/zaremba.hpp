#pragma once

#include "specialfun.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "fc.hpp"
#include "kernels.hpp"
#include "parallel.hpp"
#include "assembly.hpp"
#include "solve.hpp"
#include "field.hpp"
#include "eig.hpp"
