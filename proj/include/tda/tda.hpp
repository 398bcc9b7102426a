#pragma once

#include "tda/chain.hpp"
#include "tda/complex.hpp"
#include "tda/cosheaf.hpp"
#include "tda/errors.hpp"
#include "tda/field.hpp"
#include "tda/homology.hpp"
#include "tda/leray.hpp"
#include "tda/linalg.hpp"
#include "tda/persistence.hpp"
#include "tda/zigzag.hpp"
