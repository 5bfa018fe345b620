#pragma once

#include "envkit/butterworth.hpp"
#include "envkit/compare.hpp"
#include "envkit/csv.hpp"
#include "envkit/envelope.hpp"
#include "envkit/error.hpp"
#include "envkit/filtering.hpp"
#include "envkit/signal.hpp"
#include "envkit/synthetic.hpp"
#include "envkit/wav.hpp"
