#pragma once

#include "field.hpp"
#include "graph.hpp"
#include "planar.hpp"
#include "xcsp.hpp"
#include "cutuncut.hpp"
#include "apps.hpp"
#include "oracle.hpp"
#include "io.hpp"
