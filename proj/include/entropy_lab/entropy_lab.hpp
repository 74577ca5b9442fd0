#pragma once

// Umbrella header for the entropy-lab library.

#include "entropy_lab/core.hpp"
#include "entropy_lab/young.hpp"
#include "entropy_lab/spectral.hpp"
#include "entropy_lab/modular.hpp"
#include "entropy_lab/entropy.hpp"
#include "entropy_lab/classical.hpp"
#include "entropy_lab/orlicz.hpp"
#include "entropy_lab/random_states.hpp"
#include "entropy_lab/report.hpp"
