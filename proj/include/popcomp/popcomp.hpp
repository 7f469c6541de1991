#pragma once

#include "gf_engine.hpp"
#include "matcher.hpp"
#include "oracle.hpp"
#include "pattern.hpp"
#include "series.hpp"
