#pragma once

#include "stralg/bound_quiver.hpp"
#include "stralg/classify.hpp"
#include "stralg/complex.hpp"
#include "stralg/error.hpp"
#include "stralg/oracle.hpp"
#include "stralg/resolution.hpp"
#include "stralg/syzygy.hpp"
#include "stralg/walks.hpp"
