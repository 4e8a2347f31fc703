#pragma once

#include "sqz/qmat.hpp"
#include "sqz/random.hpp"
#include "sqz/channels.hpp"
#include "sqz/sdp/solver.hpp"
#include "sqz/sdp/dump.hpp"
#include "sqz/state_bounds.hpp"
#include "sqz/channel_bounds.hpp"
#include "sqz/json_io.hpp"
#include "sqz/experiments.hpp"
