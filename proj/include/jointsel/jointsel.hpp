#pragma once

#include "jointsel/closed_form.hpp"
#include "jointsel/events.hpp"
#include "jointsel/experiments.hpp"
#include "jointsel/io.hpp"
#include "jointsel/mallows.hpp"
#include "jointsel/permutation.hpp"
#include "jointsel/pipeline.hpp"
#include "jointsel/random.hpp"
#include "jointsel/rum.hpp"
#include "jointsel/svg.hpp"
#include "jointsel/verify.hpp"
