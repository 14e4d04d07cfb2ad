#pragma once

#include "mpng/coarsen.hpp"
#include "mpng/config.hpp"
#include "mpng/edit.hpp"
#include "mpng/error.hpp"
#include "mpng/generate.hpp"
#include "mpng/graph.hpp"
#include "mpng/io.hpp"
#include "mpng/ledger.hpp"
#include "mpng/metrics.hpp"
#include "mpng/planarity.hpp"
#include "mpng/profile.hpp"
#include "mpng/rng.hpp"
#include "mpng/uncoarsen.hpp"
