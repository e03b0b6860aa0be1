#pragma once

#include "besicovitch/exact.hpp"
#include "besicovitch/cf_engine.hpp"
#include "besicovitch/params.hpp"
#include "besicovitch/cocycle.hpp"
#include "besicovitch/targets.hpp"
#include "besicovitch/parallel.hpp"
#include "besicovitch/audit.hpp"
#include "besicovitch/log_enclosure.hpp"
#include "besicovitch/dimension.hpp"
#include "besicovitch/dynamics.hpp"
#include "besicovitch/io.hpp"
