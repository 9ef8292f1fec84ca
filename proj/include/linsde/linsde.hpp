#pragma once

#include "linsde/config.hpp"
#include "linsde/csv.hpp"
#include "linsde/death_process.hpp"
#include "linsde/estimate.hpp"
#include "linsde/events.hpp"
#include "linsde/exp_mixture.hpp"
#include "linsde/gou.hpp"
#include "linsde/model.hpp"
#include "linsde/moments.hpp"
#include "linsde/path.hpp"
#include "linsde/quadrature.hpp"
#include "linsde/rng.hpp"
#include "linsde/version.hpp"
