#pragma once

#include "pkern/affine_weyl.hpp"
#include "pkern/calibration.hpp"
#include "pkern/coset_calculus.hpp"
#include "pkern/criterion.hpp"
#include "pkern/error.hpp"
#include "pkern/io.hpp"
#include "pkern/lab/bt1.hpp"
#include "pkern/lab/eo.hpp"
#include "pkern/lab/iwahori.hpp"
#include "pkern/lab/lift.hpp"
#include "pkern/lab/shtuka.hpp"
#include "pkern/permutation.hpp"
#include "pkern/polygons.hpp"
#include "pkern/semimodules.hpp"
#include "pkern/version.hpp"
