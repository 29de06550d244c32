// Convenience umbrella: pulls in the whole library.
#pragma once

#include "kernel.hpp"
#include "quad.hpp"
#include "remainder.hpp"
#include "special.hpp"
#include "verify.hpp"
