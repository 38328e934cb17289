#pragma once

#include "riffle/binomial.hpp"
#include "riffle/convergence.hpp"
#include "riffle/exact_dist.hpp"
#include "riffle/limit_laws.hpp"
#include "riffle/montecarlo.hpp"
#include "riffle/pmf.hpp"
#include "riffle/shuffle_model.hpp"
#include "riffle/strategy.hpp"
