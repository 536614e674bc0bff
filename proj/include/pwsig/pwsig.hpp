#pragma once

#include "pwsig/battery.hpp"
#include "pwsig/decomposition.hpp"
#include "pwsig/finperm.hpp"
#include "pwsig/partition.hpp"
#include "pwsig/pwmap.hpp"
#include "pwsig/random.hpp"
#include "pwsig/rational.hpp"
#include "pwsig/signature.hpp"
#include "pwsig/subgroups.hpp"
#include "pwsig/svg.hpp"
#include "pwsig/text_format.hpp"
