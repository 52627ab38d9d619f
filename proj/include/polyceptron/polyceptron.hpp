#pragma once

#include "polyceptron/batch_trainer.hpp"
#include "polyceptron/core.hpp"
#include "polyceptron/datagen.hpp"
#include "polyceptron/errors.hpp"
#include "polyceptron/eval.hpp"
#include "polyceptron/io.hpp"
#include "polyceptron/online_trainer.hpp"
#include "polyceptron/oracle.hpp"
#include "polyceptron/random.hpp"
