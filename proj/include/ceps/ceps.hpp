#pragma once

#include "ceps/config.hpp"
#include "ceps/element.hpp"
#include "ceps/ergodic.hpp"
#include "ceps/generate.hpp"
#include "ceps/independence.hpp"
#include "ceps/mixing.hpp"
#include "ceps/operators.hpp"
#include "ceps/partition.hpp"
#include "ceps/projection.hpp"
#include "ceps/rational.hpp"
#include "ceps/report.hpp"
#include "ceps/space.hpp"
#include "ceps/version.hpp"
