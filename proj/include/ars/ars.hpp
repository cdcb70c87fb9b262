#ifndef ARS_ARS_HPP
#define ARS_ARS_HPP

#include "ars/bench.hpp"
#include "ars/context.hpp"
#include "ars/error.hpp"
#include "ars/io.hpp"
#include "ars/kernels.hpp"
#include "ars/metrics.hpp"
#include "ars/parallel.hpp"
#include "ars/pyramid.hpp"
#include "ars/raster.hpp"
#include "ars/resampler.hpp"
#include "ars/scene.hpp"

#endif // ARS_ARS_HPP
