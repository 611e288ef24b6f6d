#pragma once

// Umbrella header.

#include "cayley.hpp"
#include "construction.hpp"
#include "equitable.hpp"
#include "families.hpp"
#include "group.hpp"
#include "json_io.hpp"
#include "regular.hpp"
#include "search.hpp"
