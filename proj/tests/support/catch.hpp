#pragma once

#ifdef ENVKIT_CATCH_AMALGAMATED
#include <catch2/catch_amalgamated.hpp>
#else
#include <catch2/catch_approx.hpp>
#include <catch2/catch_test_macros.hpp>
#include <catch2/matchers/catch_matchers_floating_point.hpp>
#include <catch2/matchers/catch_matchers_string.hpp>
#endif
