#pragma once

#include "greedy_energy/lambda.hpp"
#include "greedy_energy/specfun.hpp"
#include "greedy_energy/binary.hpp"
#include "greedy_energy/summation.hpp"
#include "greedy_energy/circle_exact.hpp"
#include "greedy_energy/special_cases.hpp"
#include "greedy_energy/sphere.hpp"
#include "greedy_energy/greedy_numeric.hpp"
#include "greedy_energy/asymptotics.hpp"
#include "greedy_energy/verify.hpp"
#include "greedy_energy/io.hpp"
