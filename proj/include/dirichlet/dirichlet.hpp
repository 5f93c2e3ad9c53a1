#pragma once

#include "dirichlet/algebra.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/invert.hpp"
#include "dirichlet/io.hpp"
#include "dirichlet/margin.hpp"
#include "dirichlet/matrix.hpp"
#include "dirichlet/parallel.hpp"
#include "dirichlet/rational.hpp"
#include "dirichlet/semigroup.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/weights.hpp"
