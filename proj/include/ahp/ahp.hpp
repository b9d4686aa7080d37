#pragma once

#include "ahp/error.hpp"
#include "ahp/ratio.hpp"
#include "ahp/model.hpp"
#include "ahp/model_format.hpp"
#include "ahp/priority.hpp"
#include "ahp/synthesis.hpp"
#include "ahp/catalog.hpp"
#include "ahp/json_io.hpp"
#include "ahp/report.hpp"
