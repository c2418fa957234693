#pragma once

#include "qheatnet/config.hpp"
#include "qheatnet/constants.hpp"
#include "qheatnet/device.hpp"
#include "qheatnet/errors.hpp"
#include "qheatnet/export.hpp"
#include "qheatnet/josephson.hpp"
#include "qheatnet/quadrature.hpp"
#include "qheatnet/sweep.hpp"
#include "qheatnet/thermal.hpp"
#include "qheatnet/touchstone.hpp"
#include "qheatnet/two_port.hpp"
#include "qheatnet/units.hpp"
