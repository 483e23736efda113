#pragma once

#include "glap/analysis.hpp"
#include "glap/composition.hpp"
#include "glap/families.hpp"
#include "glap/graded_algebra.hpp"
#include "glap/linalg.hpp"
#include "glap/prolongation.hpp"
#include "glap/prolongation_io.hpp"
#include "glap/roots.hpp"
#include "glap/serialize.hpp"
#include "glap/verify.hpp"
