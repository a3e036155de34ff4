// cmx.hpp
// Umbrella header for the code-mixed POS tagging toolkit.

#ifndef CMX_CMX_HPP_
#define CMX_CMX_HPP_

#include "cmx/cmi.hpp"
#include "cmx/corpus.hpp"
#include "cmx/crf_inference.hpp"
#include "cmx/crf_model.hpp"
#include "cmx/crf_objective.hpp"
#include "cmx/crf_train.hpp"
#include "cmx/error.hpp"
#include "cmx/eval.hpp"
#include "cmx/features.hpp"
#include "cmx/lbfgs.hpp"
#include "cmx/model_io.hpp"
#include "cmx/patterns.hpp"
#include "cmx/report_io.hpp"
#include "cmx/rng.hpp"
#include "cmx/synth.hpp"
#include "cmx/tuning.hpp"

#endif  // CMX_CMX_HPP_
