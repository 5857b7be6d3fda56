#pragma once

#include "coalgmin/error.hpp"
#include "coalgmin/rational.hpp"
#include "coalgmin/functor.hpp"
#include "coalgmin/coalgebra.hpp"
#include "coalgmin/partition.hpp"
#include "coalgmin/factorization.hpp"
#include "coalgmin/reachability.hpp"
#include "coalgmin/observability.hpp"
#include "coalgmin/wellpoint.hpp"
#include "coalgmin/oracle_lab.hpp"
#include "coalgmin/io.hpp"
#include "coalgmin/dot.hpp"
