#pragma once

#include "fnsphere/charvar.hpp"
#include "fnsphere/dual_complex.hpp"
#include "fnsphere/fenchel_nielsen.hpp"
#include "fnsphere/mat2.hpp"
#include "fnsphere/scalar.hpp"
