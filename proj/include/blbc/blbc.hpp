#pragma once

#include "blbc/rational.hpp"
#include "blbc/geometry.hpp"
#include "blbc/point_set.hpp"
#include "blbc/line_map.hpp"
#include "blbc/visibility.hpp"
#include "blbc/construction.hpp"
#include "blbc/verifier.hpp"
#include "blbc/io.hpp"
#include "blbc/svg.hpp"
