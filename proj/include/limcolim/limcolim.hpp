#pragma once

#include "limcolim/cli.hpp"
#include "limcolim/commute.hpp"
#include "limcolim/config.hpp"
#include "limcolim/errors.hpp"
#include "limcolim/fincat.hpp"
#include "limcolim/groups.hpp"
#include "limcolim/json_io.hpp"
#include "limcolim/setfun.hpp"
#include "limcolim/verify.hpp"
