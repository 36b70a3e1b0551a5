#pragma once

#include "geometry.hpp"
#include "graph.hpp"
#include "verify.hpp"
#include "stars.hpp"
#include "separator.hpp"
#include "string_spanner.hpp"
#include "quadtree.hpp"
#include "fat_spanner.hpp"
#include "union_spanner.hpp"
#include "rect_spanner.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "experiment.hpp"
#include "render.hpp"
