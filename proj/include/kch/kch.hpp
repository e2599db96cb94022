#pragma once

#include "kch/ncpoly.hpp"
#include "kch/braid.hpp"
#include "kch/phi.hpp"
#include "kch/satmap.hpp"
#include "kch/augment.hpp"
#include "kch/io.hpp"
#include "kch/checks.hpp"
