#pragma once

#include "bounds.hpp"
#include "certify.hpp"
#include "elliptic.hpp"
#include "functionals.hpp"
#include "immersion.hpp"
#include "interval.hpp"
#include "mironov.hpp"
#include "mnk.hpp"
#include "periodicity.hpp"
#include "quadrature.hpp"
#include "quartic.hpp"
