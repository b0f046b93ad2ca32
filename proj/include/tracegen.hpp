#pragma once

#include "tracegen/boundary.hpp"
#include "tracegen/error.hpp"
#include "tracegen/io.hpp"
#include "tracegen/letter_set.hpp"
#include "tracegen/mobius.hpp"
#include "tracegen/model.hpp"
#include "tracegen/oracle.hpp"
#include "tracegen/random.hpp"
#include "tracegen/sampler.hpp"
#include "tracegen/stats.hpp"
#include "tracegen/trace.hpp"
#include "tracegen/verify.hpp"
