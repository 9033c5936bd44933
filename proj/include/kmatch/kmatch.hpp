#pragma once

#include "kmatch/certificates.hpp"
#include "kmatch/crossing.hpp"
#include "kmatch/errors.hpp"
#include "kmatch/generators.hpp"
#include "kmatch/geometry.hpp"
#include "kmatch/matching.hpp"
#include "kmatch/miner.hpp"
#include "kmatch/minimax.hpp"
#include "kmatch/predicates.hpp"
