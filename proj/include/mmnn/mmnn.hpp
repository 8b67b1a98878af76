#pragma once

#include "mmnn/core_models.hpp"
#include "mmnn/dataset.hpp"
#include "mmnn/encoding.hpp"
#include "mmnn/errors.hpp"
#include "mmnn/grid.hpp"
#include "mmnn/noise.hpp"
#include "mmnn/perf.hpp"
#include "mmnn/persistence.hpp"
#include "mmnn/pgm.hpp"
#include "mmnn/preprocess.hpp"
#include "mmnn/recognizer.hpp"
