#pragma once

#include "teich/curves.hpp"
#include "teich/error.hpp"
#include "teich/farey.hpp"
#include "teich/fricke.hpp"
#include "teich/glue.hpp"
#include "teich/relations.hpp"
#include "teich/rep.hpp"
#include "teich/sl2.hpp"
#include "teich/spinstruct.hpp"
#include "teich/tolerance.hpp"
#include "teich/tracefn.hpp"
