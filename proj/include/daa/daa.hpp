#pragma once

#include "daa/auction.hpp"
#include "daa/errors.hpp"
#include "daa/graph.hpp"
#include "daa/incentives.hpp"
#include "daa/io.hpp"
#include "daa/network.hpp"
#include "daa/oracles.hpp"
#include "daa/payments.hpp"
#include "daa/rational.hpp"
#include "daa/registry.hpp"
#include "daa/report.hpp"
#include "daa/setcover.hpp"
#include "daa/spectrum.hpp"
#include "daa/submodular.hpp"
