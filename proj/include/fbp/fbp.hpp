#pragma once

// Umbrella header.
#include "errors.hpp"
#include "tolerances.hpp"
#include "rational.hpp"
#include "polynomial.hpp"
#include "roots.hpp"
#include "hypergeo.hpp"
#include "blaschke.hpp"
#include "extremal.hpp"
#include "prescribe.hpp"
#include "io.hpp"
