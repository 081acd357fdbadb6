#pragma once

#include "semshift/corpus.hpp"
#include "semshift/embedding.hpp"
#include "semshift/errors.hpp"
#include "semshift/evaluation.hpp"
#include "semshift/experiments.hpp"
#include "semshift/geometry.hpp"
#include "semshift/io.hpp"
#include "semshift/provider.hpp"
#include "semshift/shift.hpp"
#include "semshift/splitter.hpp"
#include "semshift/synthetic.hpp"
#include "semshift/util.hpp"
