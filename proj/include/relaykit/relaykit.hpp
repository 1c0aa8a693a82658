#pragma once

#include "relaykit/channel.hpp"
#include "relaykit/detchannel.hpp"
#include "relaykit/errors.hpp"
#include "relaykit/gaussian.hpp"
#include "relaykit/gdof.hpp"
#include "relaykit/regions.hpp"
#include "relaykit/strategies.hpp"
