#pragma once

#include "diophant/bigreal.hpp"
#include "diophant/constants.hpp"
#include "diophant/contfrac.hpp"
#include "diophant/error.hpp"
#include "diophant/families.hpp"
#include "diophant/interval.hpp"
#include "diophant/measure.hpp"
#include "diophant/model.hpp"
#include "diophant/rational.hpp"
#include "diophant/records.hpp"
#include "diophant/search.hpp"
