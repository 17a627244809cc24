#pragma once

// Everything except the JSON report, which pulls in nlohmann/json.
#include "kopt/arborescence.hpp"
#include "kopt/certificate.hpp"
#include "kopt/crossing.hpp"
#include "kopt/error.hpp"
#include "kopt/exact.hpp"
#include "kopt/geometry.hpp"
#include "kopt/instance.hpp"
#include "kopt/io/tsplib.hpp"
#include "kopt/lowerbound.hpp"
#include "kopt/partition.hpp"
#include "kopt/random.hpp"
#include "kopt/tour.hpp"
