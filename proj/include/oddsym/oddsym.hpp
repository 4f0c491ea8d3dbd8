#pragma once

// Everything: algebra, brackets, Laplacians, charts, forms, master equations,
// the text/JSON front end and the check suite.

#include "oddsym/errors.hpp"
#include "oddsym/superfunction.hpp"
#include "oddsym/brackets.hpp"
#include "oddsym/laplacians.hpp"
#include "oddsym/charts.hpp"
#include "oddsym/formsbridge.hpp"
#include "oddsym/master.hpp"
#include "oddsym/parse.hpp"
#include "oddsym/sampling.hpp"
#include "oddsym/samples.hpp"
#include "oddsym/suite.hpp"
