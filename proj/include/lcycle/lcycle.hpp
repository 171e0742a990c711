#ifndef LCYCLE_LCYCLE_HPP
#define LCYCLE_LCYCLE_HPP

/// \file
/// Umbrella header.

#include "lcycle/cycles.hpp"
#include "lcycle/error.hpp"
#include "lcycle/families.hpp"
#include "lcycle/funcdesc.hpp"
#include "lcycle/hypotheses.hpp"
#include "lcycle/integrator.hpp"
#include "lcycle/serialize.hpp"
#include "lcycle/system.hpp"

#endif  // LCYCLE_LCYCLE_HPP
