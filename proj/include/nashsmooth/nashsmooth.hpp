#pragma once

#include "nashsmooth/game.hpp"
#include "nashsmooth/geometry.hpp"
#include "nashsmooth/io/obj.hpp"
#include "nashsmooth/io/off.hpp"
#include "nashsmooth/io/svg.hpp"
#include "nashsmooth/mesh.hpp"
#include "nashsmooth/quality.hpp"
#include "nashsmooth/report.hpp"
#include "nashsmooth/scenario.hpp"
#include "nashsmooth/smoothing.hpp"
#include "nashsmooth/transform.hpp"
