#pragma once

// Umbrella header for the whole toolkit.

#include "cod/atomic.hpp"
#include "cod/bcod.hpp"
#include "cod/bj_form.hpp"
#include "cod/classify.hpp"
#include "cod/design.hpp"
#include "cod/equivalence.hpp"
#include "cod/generate.hpp"
#include "cod/gram.hpp"
#include "cod/patterns.hpp"
#include "cod/search.hpp"
#include "cod/standard_form.hpp"
