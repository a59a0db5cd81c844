#pragma once

// Umbrella header for the whole library.

#include "laststop/bandit.hpp"
#include "laststop/best_choice.hpp"
#include "laststop/errors.hpp"
#include "laststop/intensity.hpp"
#include "laststop/io.hpp"
#include "laststop/monte_carlo.hpp"
#include "laststop/odds.hpp"
#include "laststop/oracles.hpp"
#include "laststop/parallel.hpp"
#include "laststop/point_process.hpp"
#include "laststop/rng.hpp"
#include "laststop/verify.hpp"
