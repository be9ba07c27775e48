#pragma once

#include "casimir/admissible.hpp"
#include "casimir/cartan.hpp"
#include "casimir/character.hpp"
#include "casimir/core.hpp"
#include "casimir/families.hpp"
#include "casimir/json_io.hpp"
#include "casimir/polyfit.hpp"
#include "casimir/registry.hpp"
#include "casimir/reps.hpp"
#include "casimir/rootdata.hpp"
#include "casimir/tables.hpp"
#include "casimir/tensor.hpp"
#include "casimir/version.hpp"
