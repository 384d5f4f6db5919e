#pragma once

#include "corefree/error.hpp"
#include "corefree/nielsen.hpp"
#include "corefree/quasimorphism.hpp"
#include "corefree/random.hpp"
#include "corefree/rational.hpp"
#include "corefree/relative.hpp"
#include "corefree/serialize.hpp"
#include "corefree/stallings.hpp"
#include "corefree/text.hpp"
#include "corefree/verify.hpp"
#include "corefree/word.hpp"
