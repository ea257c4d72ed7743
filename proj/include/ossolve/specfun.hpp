#pragma once

#include "ossolve/airy.hpp"
#include "ossolve/gamma.hpp"
#include "ossolve/hermite.hpp"
#include "ossolve/hypergeometric.hpp"
