#pragma once

#include "energia/blowup.hpp"
#include "energia/config.hpp"
#include "energia/convex.hpp"
#include "energia/divisorial.hpp"
#include "energia/logpow.hpp"
#include "energia/quadrature.hpp"
#include "energia/radial.hpp"
#include "energia/report.hpp"
#include "energia/toric.hpp"
#include "energia/verdict.hpp"
