#pragma once

#include "combdyn/errors.hpp"
#include "combdyn/io.hpp"
#include "combdyn/markov.hpp"
#include "combdyn/matrix.hpp"
#include "combdyn/orders.hpp"
#include "combdyn/permutation.hpp"
#include "combdyn/pwl.hpp"
#include "combdyn/rational.hpp"
#include "combdyn/trees.hpp"
#include "combdyn/verify.hpp"
#include "combdyn/walks.hpp"
#include "combdyn/witnesses.hpp"
