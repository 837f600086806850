// Umbrella header: the whole library.
#pragma once

#include "slopes/errors.hpp"
#include "slopes/rational.hpp"
#include "slopes/ring.hpp"
#include "slopes/matrix.hpp"
#include "slopes/subspace.hpp"
#include "slopes/polynomial.hpp"
#include "slopes/parallel.hpp"
#include "slopes/slope.hpp"
#include "slopes/catalog.hpp"
#include "slopes/scheme.hpp"
#include "slopes/group_schemes.hpp"
#include "slopes/groups.hpp"
#include "slopes/filtration.hpp"
#include "slopes/fixers.hpp"
#include "slopes/torsion.hpp"
#include "slopes/definition.hpp"
#include "slopes/cli.hpp"
