#pragma once

#include "qrhunt/analytic.hpp"
#include "qrhunt/arith.hpp"
#include "qrhunt/char_sums.hpp"
#include "qrhunt/config.hpp"
#include "qrhunt/counting.hpp"
#include "qrhunt/experiment.hpp"
#include "qrhunt/parallel.hpp"
#include "qrhunt/report.hpp"
