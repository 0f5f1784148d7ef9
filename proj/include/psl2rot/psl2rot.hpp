#pragma once

#include "psl2rot/angles.hpp"
#include "psl2rot/classify.hpp"
#include "psl2rot/detect.hpp"
#include "psl2rot/io.hpp"
#include "psl2rot/matrix.hpp"
#include "psl2rot/rigidity.hpp"
#include "psl2rot/rotnum.hpp"
#include "psl2rot/sampling.hpp"
#include "psl2rot/words.hpp"
