#pragma once

#include "lowrank/discrepancy.hpp"
#include "lowrank/error.hpp"
#include "lowrank/factorize.hpp"
#include "lowrank/generators.hpp"
#include "lowrank/io.hpp"
#include "lowrank/john.hpp"
#include "lowrank/monochromatic.hpp"
#include "lowrank/protocol.hpp"
#include "lowrank/rng.hpp"
#include "lowrank/rounding.hpp"
#include "lowrank/sign_matrix.hpp"
