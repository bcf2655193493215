#pragma once

#include <aaa/barycentric.hpp>
#include <aaa/engine.hpp>
#include <aaa/experiments.hpp>
#include <aaa/io.hpp>
#include <aaa/kernels.hpp>
#include <aaa/problems.hpp>
#include <aaa/special_functions.hpp>
