#pragma once

#include "biberkit/error.hpp"
#include "biberkit/core.hpp"
#include "biberkit/text.hpp"
#include "biberkit/wordlists.hpp"
#include "biberkit/pos.hpp"
#include "biberkit/rules.hpp"
#include "biberkit/profiler.hpp"
#include "biberkit/analytics.hpp"
#include "biberkit/verify.hpp"
#include "biberkit/io.hpp"
#include "biberkit/pipeline.hpp"
#include "biberkit/bench.hpp"
#include "biberkit/synthetic.hpp"
