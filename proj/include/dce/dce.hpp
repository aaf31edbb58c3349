#pragma once

#include "dce/correlations.hpp"
#include "dce/dce_model.hpp"
#include "dce/errors.hpp"
#include "dce/gaussian_core.hpp"
#include "dce/io.hpp"
#include "dce/svg_plot.hpp"
#include "dce/sweep.hpp"
