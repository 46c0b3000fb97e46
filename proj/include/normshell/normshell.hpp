#pragma once

#include "normshell/bisection.hpp"
#include "normshell/decompose.hpp"
#include "normshell/error.hpp"
#include "normshell/geometry.hpp"
#include "normshell/io.hpp"
#include "normshell/moments.hpp"
#include "normshell/norm.hpp"
#include "normshell/oracle.hpp"
#include "normshell/shell.hpp"
#include "normshell/vector.hpp"
