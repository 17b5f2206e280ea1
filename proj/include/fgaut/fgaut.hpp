#pragma once

#include "fgaut/error.hpp"
#include "fgaut/word.hpp"
#include "fgaut/random.hpp"
#include "fgaut/automorphism.hpp"
#include "fgaut/abelian.hpp"
#include "fgaut/stallings.hpp"
#include "fgaut/whitehead.hpp"
#include "fgaut/involution.hpp"
#include "fgaut/characterization.hpp"
#include "fgaut/json_io.hpp"
#include "fgaut/harness.hpp"
