#pragma once

#include "geokgon/asymptotics.hpp"
#include "geokgon/geometry.hpp"
#include "geokgon/io.hpp"
#include "geokgon/metric.hpp"
#include "geokgon/minind.hpp"
#include "geokgon/parallel.hpp"
#include "geokgon/spectra.hpp"
#include "geokgon/surface.hpp"
#include "geokgon/svg.hpp"
#include "geokgon/tracer.hpp"
