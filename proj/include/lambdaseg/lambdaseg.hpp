#pragma once

#include "lambdaseg/analysis.hpp"
#include "lambdaseg/connectivity.hpp"
#include "lambdaseg/errors.hpp"
#include "lambdaseg/export.hpp"
#include "lambdaseg/image.hpp"
#include "lambdaseg/objectives.hpp"
#include "lambdaseg/pgm.hpp"
#include "lambdaseg/preprocess.hpp"
#include "lambdaseg/sweep.hpp"
#include "lambdaseg/thresholding.hpp"
