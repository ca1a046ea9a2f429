#pragma once

#include "struvint/complex.hpp"
#include "struvint/errors.hpp"
#include "struvint/gamma.hpp"
#include "struvint/hyper_series.hpp"
#include "struvint/identities.hpp"
#include "struvint/lauricella.hpp"
#include "struvint/quadrature.hpp"
#include "struvint/series.hpp"
#include "struvint/version.hpp"
