// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "channels.hpp"
#include "diagram.hpp"
#include "dynamics.hpp"
#include "entanglement.hpp"
#include "linalg.hpp"
#include "states.hpp"
