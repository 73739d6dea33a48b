#pragma once

#include "follab/accounting.hpp"
#include "follab/canonical.hpp"
#include "follab/census.hpp"
#include "follab/core.hpp"
#include "follab/dot.hpp"
#include "follab/json_io.hpp"
#include "follab/level_tree.hpp"
#include "follab/moves.hpp"
#include "follab/predicates.hpp"
