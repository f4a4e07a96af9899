#pragma once

#include "ramseyqubo/error.hpp"
#include "ramseyqubo/graph.hpp"
#include "ramseyqubo/poly.hpp"
#include "ramseyqubo/qubo.hpp"
#include "ramseyqubo/encode.hpp"
#include "ramseyqubo/precolor.hpp"
#include "ramseyqubo/solve.hpp"
#include "ramseyqubo/verify.hpp"
#include "ramseyqubo/io.hpp"
